"""Coefficients of the quasimap I-function and of the equivariant twisted I-function."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cones
from .presentation import Presentation, RationalClass, pairing
from .sectors import SectorDescriptor, age, novikov_degree, sector_data, sector_descriptor
from .series import (
    Cycle,
    DoesNotExist,
    SeriesElement,
    c_factor,
    kappa_limit,
    nonnegative_z_part,
    product,
    restrict,
)


@dataclass(frozen=True)
class Unsupported:
    """No formula applies (or its hypothesis could not be certified); no value is produced."""

    cls: RationalClass
    reason: str

    def __str__(self):
        return f"UNSUPPORTED ({self.reason})"


Coefficient = SeriesElement | Unsupported


def _lci_obstruction(p: Presentation, d: SectorDescriptor) -> str | None:
    """Why the l.c.i. hypothesis for ``F_b(Y) -> F_b(X)`` cannot be certified, or None.

    Certified when every ``E``-coordinate with ``b(eps) >= 0`` integral restricts
    nontrivially to ``X^b`` (at most one of them, so it cuts a Cartier divisor
    of the irreducible ``F_b(X)``), and the dimension count of ``F_b(Y)`` inside
    its sector matches the expected codimension.
    """
    b = d.cls
    if p.section is None:
        return "no explicit section: the l.c.i. hypothesis cannot be checked"
    integral_nonneg = set()
    integral_neg = set()
    for j, e in enumerate(p.e_weights):
        v = pairing(b, e)
        if v.denominator == 1:
            (integral_nonneg if v >= 0 else integral_neg).add(j)
    if set(d.f_cut) != integral_nonneg:
        return "a section with nonnegative integral pairing vanishes on X^b: codimension too small"
    if len(d.f_cut) > 1:
        return "several equations on F_b(X): regularity of the sequence is not certified"
    if d.f_dim_y < 0:
        return "F_b(Y) is expected to be empty"
    if d.sector.e_count - len(d.f_cut) != len(integral_neg):
        return "dimension bookkeeping of F_b(Y) in its sector does not match"
    return None


def quasimap_coefficient(p: Presentation, b: RationalClass) -> Coefficient:
    """``I_b(z)`` on the ``g_b^{-1}``-sector of ``Y//T``.

    I-nonnegative classes use the product of ``C`` factors times the
    fundamental class; other classes use ``C°`` factors times ``[F_b]`` when
    the l.c.i. hypothesis is certified, and are :class:`Unsupported` otherwise.
    """
    d = sector_descriptor(p, b)
    g = d.element
    if cones.is_i_nonnegative(p, b):
        ring = d.sector.y_ring
        nums, dens = [], []
        for w in p.x_weights:
            n_, d_ = c_factor(p, b, w, ring)
            nums += n_
            dens += d_
        for e in p.e_weights:
            n_, d_ = c_factor(p, b, e, ring)
            nums += d_
            dens += n_
        return product(ring, nums, dens, sector=g)

    reason = _lci_obstruction(p, d)
    if reason is not None:
        return Unsupported(b, reason)
    ring = d.f_ring
    cycle = Cycle(d.f_support, d.f_codim_y)
    nums, dens = [], []
    for w in p.x_weights:
        n_, d_ = c_factor(p, b, w, ring, circ=True)
        nums += n_
        dens += d_
    for e in p.e_weights:
        n_, d_ = c_factor(p, b, e, ring, circ=True)
        nums += d_
        dens += n_
    return product(ring, nums, dens, sector=g, cycle=cycle)


def twisted_coefficient(p: Presentation, b: RationalClass) -> SeriesElement:
    """Coefficient of ``q^b`` in the equivariant twisted I-function, on the ``X``-side sector."""
    d = sector_descriptor(p, b)
    ring = d.sector.ambient_ring
    nums, dens = [], []
    for w in p.x_weights:
        n_, d_ = c_factor(p, b, w, ring)
        nums += n_
        dens += d_
    for e in p.e_weights:
        n_, d_ = c_factor(p, b, e, ring, kappa_shift=True)
        nums += d_
        dens += n_
    return product(ring, nums, dens, sector=d.element)


def twisted_limit_exists(p: Presentation, b: RationalClass) -> bool:
    """Whether ``lim_{kappa -> 0}`` of the twisted coefficient exists, without computing it.

    The inverted factors ``c + kappa + k z`` with ``k != 0`` are units at
    ``kappa = 0`` (their inverses are polynomials), and multiplying by a unit
    neither creates nor removes a pole in ``kappa``.  Dropping them leaves a
    finite Laurent polynomial whose ``kappa`` exponents decide the question.
    """
    d = sector_descriptor(p, b)
    ring = d.sector.ambient_ring
    nums, dens = [], []
    for w in p.x_weights:
        n_, d_ = c_factor(p, b, w, ring)
        nums += n_
        dens += d_
    for e in p.e_weights:
        n_, d_ = c_factor(p, b, e, ring, kappa_shift=True)
        nums += d_
        dens += [f for f in n_ if not f.z_coeff]
    x = product(ring, nums, dens, sector=d.element)
    return x.is_zero() or x.min_kappa() >= 0


def restrict_to_y(p: Presentation, x: SeriesElement) -> SeriesElement:
    """Pull back along ``Y//T -> X//T`` (sector-wise, in the truncated model)."""
    if x.cycle is not None:
        return x  # already a class on Y
    return restrict(x, sector_data(p, x.sector).y_ring)


def restricted_twisted_limit(p: Presentation, b: RationalClass) -> SeriesElement | DoesNotExist:
    """``lim_{kappa -> 0}`` of the twisted coefficient restricted to ``Y`` (restriction first)."""
    return kappa_limit(restrict_to_y(p, twisted_coefficient(p, b)))


def homogeneity_check(p: Presentation, x: SeriesElement, b: RationalClass) -> bool:
    """Every term has total degree ``-deg(q^b)``.

    ``deg z = deg kappa = 1``, each denominator form has degree 1, and a class
    of cohomological degree ``c`` on the ``g``-sector has degree ``c + age(g)``
    (plus the codimension of ``[F]`` when the series carries a cycle).
    """
    if x.is_zero():
        return True
    target = -novikov_degree(p, b)
    shift = age(p, x.sector) - sum(x.forms.values()) + (x.cycle.codim if x.cycle else 0)
    for i, j, m, _ in x.iter_terms():
        if sum(m) + i + j + shift != target:
            return False
    return True


def same_value(a: SeriesElement, b: SeriesElement) -> bool | None:
    """Compare two coefficients that may live in different models; None if undecidable."""
    if a.is_zero() and b.is_zero():
        return True
    if a.ring == b.ring and a.sector == b.sector and a.cycle == b.cycle:
        return a == b
    # a nonzero scalar multiple of a fundamental class (or of [F]) is visibly nonzero
    for x, y in ((a, b), (b, a)):
        if y.is_zero() and any(sum(m) == 0 for _, _, m, _ in x.iter_terms()) and not x.forms:
            return False
    return None


@dataclass
class MirrorMap:
    """``mu = [zI - z]_+`` and ``mu_tw = [z K - z]_+`` class by class, ``K`` the restricted twisted limit."""

    classes: tuple[RationalClass, ...]
    mu: dict = field(default_factory=dict)
    mu_tw: dict = field(default_factory=dict)
    agreement: dict = field(default_factory=dict)

    @property
    def holes(self) -> list[RationalClass]:
        return [b for b in self.classes if self.agreement[b] is None]

    @property
    def equal(self) -> bool | None:
        values = [self.agreement[b] for b in self.classes]
        if any(v is False for v in values):
            return False
        if any(v is None for v in values):
            return None
        return True


def _truncate_zI(x: SeriesElement, is_zero_class: bool) -> SeriesElement:
    out = nonnegative_z_part(x.shift(dz=1))
    if is_zero_class:
        out = out - SeriesElement.constant(x.ring, 1, x.sector, x.cycle).shift(dz=1)
    return out


def mirror_map(p: Presentation, max_degree) -> MirrorMap:
    classes = cones.enumerate_effective(p, max_degree)
    out = MirrorMap(classes)
    for b in classes:
        i_b = quasimap_coefficient(p, b)
        k_b = restricted_twisted_limit(p, b)
        mu = i_b if isinstance(i_b, Unsupported) else _truncate_zI(i_b, b.is_zero())
        mu_tw = k_b if isinstance(k_b, DoesNotExist) else _truncate_zI(k_b, b.is_zero())
        out.mu[b] = mu
        out.mu_tw[b] = mu_tw
        if isinstance(mu, Unsupported) or isinstance(mu_tw, DoesNotExist):
            out.agreement[b] = None
        else:
            out.agreement[b] = same_value(mu, mu_tw)
    return out
