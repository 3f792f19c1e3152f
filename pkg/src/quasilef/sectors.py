"""Twisted sectors: group elements, ages, degrees and sector cohomology rings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from . import cones
from .errors import EmptyFixedLocus, NotEffective
from .presentation import Presentation, RationalClass, format_rational, pairing
from .rings import SectorRing


def _frac(q: Fraction) -> Fraction:
    return q - floor(q)


@dataclass(frozen=True)
class GroupElement:
    """A torsion element of ``T`` written as ``(e^{2 pi i f_1}, ..., e^{2 pi i f_k})``."""

    fractions: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "fractions", tuple(_frac(Fraction(f)) for f in self.fractions))

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(-f for f in self.fractions))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(a + b for a, b in zip(self.fractions, other.fractions)))

    def pair(self, w) -> Fraction:
        """Rotation number of the character ``w`` at this element, in ``[0, 1)``."""
        return _frac(pairing(self.fractions, w))

    @property
    def is_identity(self) -> bool:
        return all(f == 0 for f in self.fractions)

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(f) for f in self.fractions) + ")"


def group_element(p: Presentation, b: RationalClass) -> GroupElement:
    """The element ``g_b`` with ``xi(g_b) = exp(2 pi i b(xi))``."""
    if len(b) != p.k:
        raise ValueError("class length does not match torus rank")
    return GroupElement(tuple(b))


def g_fixed_support(p: Presentation, g: GroupElement) -> cones.SupportSet:
    return frozenset(i for i, w in enumerate(p.x_weights) if g.pair(w) == 0)


def age(p: Presentation, g: GroupElement) -> Fraction:
    """Age of ``g`` on the virtual tangent representation ``T_X - E``."""
    if not cones.theta_in_cone(p, g_fixed_support(p, g)):
        raise EmptyFixedLocus(f"{g} fixes no semistable point")
    return sum((g.pair(w) for w in p.x_weights), Fraction(0)) - sum(
        (g.pair(e) for e in p.e_weights), Fraction(0)
    )


def novikov_degree(p: Presentation, b: RationalClass) -> Fraction:
    """Degree of ``q^b``: pairing with ``det X - det E``."""
    return pairing(b, p.det_x) - pairing(b, p.det_e)


@lru_cache(maxsize=None)
def sector_ring(p: Presentation, support: cones.SupportSet) -> SectorRing:
    """Cohomology ring of the quotient of the coordinate subspace ``support``."""
    return SectorRing(p.k, cones.sr_relations(p, support))


def section_vanishes_on(p: Presentation, j: int, support) -> bool | None:
    """Whether ``s_j`` is identically zero after setting coordinates outside ``support`` to 0.

    ``None`` when the presentation carries no explicit section.
    """
    if p.section is None:
        return None
    support = frozenset(support)
    collected: dict[tuple[int, ...], Fraction] = {}
    for t in p.section[j]:
        if all(e == 0 for i, e in enumerate(t.exponents) if i not in support):
            collected[t.exponents] = collected.get(t.exponents, Fraction(0)) + t.coeff
    return not any(collected.values())


@dataclass(frozen=True)
class SectorData:
    """The ``g``-sector of ``X//T`` and of ``Y//T``."""

    element: GroupElement
    support: cones.SupportSet
    ambient_ring: SectorRing
    y_ring: SectorRing
    age: Fraction
    dim_x: int
    dim_y: int
    e_count: int  # E-coordinates cutting Y inside the sector


@lru_cache(maxsize=None)
def sector_data(p: Presentation, g: GroupElement, section_aware: bool = True) -> SectorData:
    support = g_fixed_support(p, g)
    a = age(p, g)
    ambient = sector_ring(p, support)
    e_count = 0
    for j, e in enumerate(p.e_weights):
        if g.pair(e) != 0:
            continue
        vanishes = section_vanishes_on(p, j, support) if section_aware else None
        if not vanishes:
            e_count += 1
    dim_x = len(support) - p.k
    dim_y = dim_x - e_count
    return SectorData(g, support, ambient, ambient.truncated(dim_y), a, dim_x, dim_y, e_count)


@dataclass(frozen=True)
class SectorDescriptor:
    """Sector data for ``g_b^{-1}`` plus the fixed-map locus ``F_b`` inside it."""

    cls: RationalClass
    sector: SectorData
    f_support: cones.SupportSet
    f_dim_x: int
    f_cut: tuple[int, ...]  # E-coordinates whose section survives on X^b
    f_dim_y: int
    f_ring: SectorRing  # ring of X^b truncated at dim F_b(Y), a model of H^*(F_b(Y//T))
    generic_section: bool

    @property
    def element(self) -> GroupElement:
        return self.sector.element

    @property
    def age(self) -> Fraction:
        return self.sector.age

    @property
    def f_codim_y(self) -> int:
        """Codimension of ``F_b(Y//T)`` in the ``Y``-sector."""
        return self.sector.dim_y - self.f_dim_y


def sector_descriptor(p: Presentation, b: RationalClass, section_aware: bool = True) -> SectorDescriptor:
    if not cones.is_i_effective(p, b):
        raise NotEffective(b)
    g = group_element(p, b).inverse()
    data = sector_data(p, g, section_aware)
    f_support = cones.fixed_support(p, b)
    generic = p.section is None or not section_aware
    if generic:
        cut = tuple(
            j for j, e in enumerate(p.e_weights)
            if (v := pairing(b, e)).denominator == 1 and v >= 0
        )
    else:
        cut = tuple(j for j in range(p.r) if not section_vanishes_on(p, j, f_support))
    f_dim_x = len(f_support) - p.k
    f_dim_y = f_dim_x - len(cut)
    f_ring = sector_ring(p, f_support).truncated(f_dim_y)
    return SectorDescriptor(b, data, f_support, f_dim_x, cut, f_dim_y, f_ring, generic)
