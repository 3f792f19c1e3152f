"""Semistability and effectivity combinatorics.

A coordinate set ``S`` is *semistable* when ``theta`` lies in the rational
cone spanned by ``{xi_i : i in S}``.  A class ``b`` is I-effective when the
coordinates it leaves alive, ``{i : b(xi_i) in Z_{>=0}}``, form a semistable
set.  Coordinate indices are 0-based throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm
from typing import Iterable, Sequence

from . import _linalg
from .errors import NonPositiveDegree
from .presentation import Presentation, RationalClass, pairing

SupportSet = frozenset[int]
Poly = dict[tuple[int, ...], Fraction]


@lru_cache(maxsize=None)
def _theta_in_cone(p: Presentation, support: SupportSet) -> bool:
    return _linalg.cone_contains([p.x_weights[i] for i in sorted(support)], p.theta)


def theta_in_cone(p: Presentation, support: Iterable[int]) -> bool:
    support = frozenset(support)
    if any(i < 0 or i >= p.n for i in support):
        raise IndexError(f"support {sorted(support)} out of range for n={p.n}")
    return _theta_in_cone(p, support)


def fixed_support(p: Presentation, b: RationalClass) -> SupportSet:
    """Coordinates ``i`` with ``b(xi_i)`` a nonnegative integer."""
    out = set()
    for i, w in enumerate(p.x_weights):
        v = pairing(b, w)
        if v.denominator == 1 and v >= 0:
            out.add(i)
    return frozenset(out)


@dataclass(frozen=True)
class SimplicialCone:
    """A basis ``B`` of weights with ``theta`` in its cone, and the dual generators.

    ``generators[a]`` is the class pairing to 1 with ``xi_{B[a]}`` and to 0 with
    the other basis weights, so the effective classes supported on ``B`` are
    exactly the nonnegative integer combinations of the generators.
    """

    basis: tuple[int, ...]
    generators: tuple[RationalClass, ...]
    index: int  # |det| of the basis weights


@lru_cache(maxsize=None)
def simplicial_cones(p: Presentation) -> tuple[SimplicialCone, ...]:
    cones = []
    for basis in itertools.combinations(range(p.n), p.k):
        mat = [p.x_weights[i] for i in basis]
        det = _linalg.determinant(mat)
        if det == 0 or not theta_in_cone(p, basis):
            continue
        gens = []
        for a in range(p.k):
            rhs = [1 if c == a else 0 for c in range(p.k)]
            gens.append(RationalClass(tuple(_linalg.solve_square(mat, rhs))))
        cones.append(SimplicialCone(basis, tuple(gens), abs(int(det))))
    return tuple(cones)


@lru_cache(maxsize=None)
def stabilizer_lcm(p: Presentation) -> int:
    """lcm of the stabilizer orders ``|det B|`` over semistable bases ``B``.

    Every effective class lies in ``(1/L) Z^k`` for this ``L``.
    """
    return lcm(*(c.index for c in simplicial_cones(p))) if simplicial_cones(p) else 1


def is_i_effective(p: Presentation, b: RationalClass) -> bool:
    if len(b) != p.k:
        raise ValueError(f"class has {len(b)} entries, torus rank is {p.k}")
    L = stabilizer_lcm(p)
    if any((L * x).denominator != 1 for x in b):
        return False
    return theta_in_cone(p, fixed_support(p, b))


@lru_cache(maxsize=None)
def effective_generators(p: Presentation) -> tuple[RationalClass, ...]:
    """The irreducible elements of the monoid of effective classes.

    Starts from the union of the simplicial-cone generators and drops any
    ``g`` that splits as ``h + (g - h)`` with both parts nonzero and effective.
    """
    gens = {g for c in simplicial_cones(p) for g in c.generators}
    irreducible = [
        g
        for g in gens
        if not any(h != g and is_i_effective(p, g - h) for h in gens)
    ]
    return tuple(sorted(irreducible))


def class_degree(b: RationalClass, grading: Sequence[int]) -> Fraction:
    return pairing(b, grading)


def enumerate_effective(
    p: Presentation, max_degree, grading: Sequence[int] | None = None
) -> tuple[RationalClass, ...]:
    """All effective classes of degree at most ``max_degree``.

    The degree is the pairing with ``grading`` (default: the Novikov degree
    character ``det X - det E``).  Ordered by (degree, class).

    Raises :class:`NonPositiveDegree` if some nonzero effective class has
    degree <= 0, in which case the set would be infinite.
    """
    bound = Fraction(max_degree)
    grading = tuple(p.degree_character if grading is None else grading)
    found: set[RationalClass] = set()
    for cone in simplicial_cones(p):
        steps = [class_degree(g, grading) for g in cone.generators]
        for g, s in zip(cone.generators, steps):
            if s <= 0:
                raise NonPositiveDegree(g, s)
        for mult in _bounded_compositions(steps, bound):
            b = RationalClass.zero(p.k)
            for m, g in zip(mult, cone.generators):
                if m:
                    b = b + m * g
            found.add(b)
    out = [b for b in found if is_i_effective(p, b)]
    return tuple(sorted(out, key=lambda b: (class_degree(b, grading), b)))


def _bounded_compositions(steps: Sequence[Fraction], bound: Fraction):
    """Nonnegative integer vectors ``m`` with ``sum m_a * steps[a] <= bound``."""
    if bound < 0:
        return
    if not steps:
        yield ()
        return
    head, rest = steps[0], steps[1:]
    for m in range(floor(bound / head) + 1):
        for tail in _bounded_compositions(rest, bound - m * head):
            yield (m,) + tail


def minimal_unstable_sets(p: Presentation, support: Iterable[int]) -> tuple[SupportSet, ...]:
    """Minimal ``S`` inside ``support`` whose removal leaves an unstable set."""
    support = frozenset(support)
    elems = sorted(support)
    minimal: list[SupportSet] = []
    for size in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, size):
            s = frozenset(combo)
            if any(m <= s for m in minimal):
                continue
            if not theta_in_cone(p, support - s):
                minimal.append(s)
    return tuple(sorted(minimal, key=lambda s: (len(s), sorted(s))))


def linear_form(w: Sequence[int]) -> Poly:
    """``sum_a w_a t_a`` as a polynomial in ``t_1..t_k``."""
    k = len(w)
    return {tuple(1 if b == a else 0 for b in range(k)): Fraction(w[a]) for a in range(k) if w[a]}


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c}


def sr_relations(p: Presentation, support: Iterable[int]) -> tuple[Poly, ...]:
    """Products ``prod_{i in S} l_{xi_i}(t)`` over the minimal unstable sets ``S``.

    These generate the relation ideal of the cohomology ring of the quotient
    of the coordinate subspace indexed by ``support``.
    """
    support = frozenset(support)
    if not theta_in_cone(p, support):
        raise ValueError(f"support {sorted(support)} has empty semistable locus")
    rels = []
    for s in minimal_unstable_sets(p, support):
        poly: Poly = {(0,) * p.k: Fraction(1)}
        for i in sorted(s):
            poly = poly_mul(poly, linear_form(p.x_weights[i]))
        rels.append(poly)
    return tuple(rels)


def is_i_nonnegative(p: Presentation, b: RationalClass) -> bool:
    """No weight of ``E`` pairs with ``b`` to a negative integer."""
    for e in p.e_weights:
        v = pairing(b, e)
        if v.denominator == 1 and v < 0:
            return False
    return True


@lru_cache(maxsize=None)
def is_proper(p: Presentation) -> bool:
    """Whether ``X//T`` is proper, i.e. the only torus-invariant functions are constants.

    Equivalent to: no nonzero nonnegative combination of the weights of ``X``
    vanishes, i.e. ``0`` is not in the convex hull of the weights.
    """
    lifted = [tuple(w) + (1,) for w in p.x_weights]
    return not _linalg.cone_contains(lifted, (0,) * p.k + (1,))
