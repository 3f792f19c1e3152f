"""Finite-dimensional graded quotients ``Q[t_1..t_k] / I``.

The ideal is generated by homogeneous polynomials (here products of linear
forms), and an optional truncation kills everything above a given degree.
Normal forms are computed degree by degree: the degree-``d`` part of ``I``
is row reduced over the degree-``d`` monomials, and the non-pivot monomials
form the basis.  Columns are ordered so later variables are eliminated first,
which makes ``t_1`` the surviving generator in the typical one-dimensional
case.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import _linalg
from .presentation import format_rational

Monomial = tuple[int, ...]
Poly = Mapping[Monomial, Fraction]


def monomials(nvars: int, degree: int) -> list[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        m = [0] * nvars
        for v in combo:
            m[v] += 1
        out.append(tuple(m))
    return sorted(out, key=lambda m: m[::-1], reverse=True)


class SectorRing:
    """``Q[t_1..t_k]`` modulo homogeneous relations, optionally truncated.

    ``max_degree`` guards against ideals that are not of finite colength.
    """

    def __init__(
        self,
        nvars: int,
        relations: Iterable[Poly],
        truncation: int | None = None,
        max_degree: int = 64,
    ):
        self.nvars = nvars
        rels = []
        for r in relations:
            r = {tuple(m): Fraction(c) for m, c in r.items() if c}
            degs = {sum(m) for m in r}
            if len(degs) > 1:
                raise ValueError(f"relation {r} is not homogeneous")
            rels.append(r)
        self.relations = tuple(rels)
        self.truncation = truncation
        self._key = (
            nvars,
            tuple(sorted(tuple(sorted(r.items())) for r in self.relations)),
            truncation,
        )
        # per degree: (column list, column index, pivot rows)
        self._pieces: list[tuple[list[Monomial], dict[Monomial, int], list[tuple[int, list[Fraction]]]]] = []
        degree = 0
        while True:
            if truncation is not None and degree > truncation:
                break
            cols = monomials(nvars, degree)
            index = {m: i for i, m in enumerate(cols)}
            spanning = []
            for rel in self.relations:
                rd = sum(next(iter(rel))) if rel else 0
                if not rel or rd > degree:
                    continue
                for mono in monomials(nvars, degree - rd):
                    row = [Fraction(0)] * len(cols)
                    for m, c in rel.items():
                        row[index[tuple(a + b for a, b in zip(m, mono))]] += c
                    spanning.append(row)
            piv = _linalg.rref(spanning, len(cols)) if spanning else []
            if len(piv) == len(cols):
                break
            self._pieces.append((cols, index, piv))
            degree += 1
            if degree > max_degree:
                raise ValueError("relation ideal does not have finite colength")

    # -- structure ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, SectorRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SectorRing(nvars={self.nvars}, hilbert={self.hilbert_function}, truncation={self.truncation})"

    @property
    def top_degree(self) -> int:
        """Largest degree with a nonzero piece (-1 for the zero ring)."""
        return len(self._pieces) - 1

    @cached_property
    def hilbert_function(self) -> tuple[int, ...]:
        return tuple(len(cols) - len(piv) for cols, _, piv in self._pieces)

    def basis(self, degree: int) -> list[Monomial]:
        if degree < 0 or degree > self.top_degree:
            return []
        cols, _, piv = self._pieces[degree]
        pivots = {c for c, _ in piv}
        return [m for i, m in enumerate(cols) if i not in pivots]

    def truncated(self, degree: int) -> "SectorRing":
        """Same relations, everything of degree > ``degree`` set to zero."""
        t = degree if self.truncation is None else min(degree, self.truncation)
        return SectorRing(self.nvars, self.relations, truncation=t)

    # -- elements ----------------------------------------------------------

    def reduce(self, poly: Poly) -> "GradedClass":
        by_degree: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in poly.items():
            if c:
                by_degree.setdefault(sum(m), {})[tuple(m)] = Fraction(c)
        out: dict[Monomial, Fraction] = {}
        for d, part in by_degree.items():
            if d > self.top_degree:
                continue
            cols, index, piv = self._pieces[d]
            vec = [Fraction(0)] * len(cols)
            for m, c in part.items():
                vec[index[m]] += c
            for col, row in piv:
                f = vec[col]
                if f:
                    vec = [a - f * b for a, b in zip(vec, row)]
            for i, c in enumerate(vec):
                if c:
                    out[cols[i]] = c
        return GradedClass(self, out, _normal=True)

    def scalar(self, c) -> "GradedClass":
        return self.reduce({(0,) * self.nvars: Fraction(c)})

    def one(self) -> "GradedClass":
        return self.scalar(1)

    def zero(self) -> "GradedClass":
        return GradedClass(self, {}, _normal=True)

    def gen(self, a: int) -> "GradedClass":
        return self.reduce({tuple(1 if b == a else 0 for b in range(self.nvars)): Fraction(1)})

    def linear(self, w: Sequence[int]) -> "GradedClass":
        """The first Chern class ``l_w = sum_a w_a t_a`` of the line bundle of ``w``."""
        return self.reduce(
            {tuple(1 if b == a else 0 for b in range(self.nvars)): Fraction(w[a]) for a in range(self.nvars)}
        )


class GradedClass:
    """An element of a :class:`SectorRing`, kept in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SectorRing, terms: Mapping[Monomial, Fraction], _normal: bool = False):
        self.ring = ring
        if _normal:
            self.terms = dict(terms)
        else:
            self.terms = ring.reduce(terms).terms

    def _check(self, other: "GradedClass"):
        if self.ring != other.ring:
            raise ValueError("elements of different rings")

    def __add__(self, other):
        if not isinstance(other, GradedClass):
            other = self.ring.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, Fraction(0)) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GradedClass(self.ring, out, _normal=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {m: -c for m, c in self.terms.items()}, _normal=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedClass):
            self._check(other)
            prod: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    prod[m] = prod.get(m, Fraction(0)) + c1 * c2
            return self.ring.reduce(prod)
        s = Fraction(other)
        if not s:
            return self.ring.zero()
        return GradedClass(self.ring, {m: s * c for m, c in self.terms.items()}, _normal=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedClass):
            if isinstance(other, (int, Fraction)):
                other = self.ring.scalar(other)
            else:
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def part(self, degree: int) -> "GradedClass":
        return GradedClass(self.ring, {m: c for m, c in self.terms.items() if sum(m) == degree}, _normal=True)

    def in_ring(self, ring: SectorRing) -> "GradedClass":
        """Image under the quotient map to ``ring`` (same variables, more relations)."""
        return ring.reduce(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), tuple(-e for e in mc[0])))

    def __repr__(self):
        return f"GradedClass({render_class(self)})"

    def __str__(self):
        return render_class(self)


def render_monomial(m: Monomial) -> str:
    parts = []
    for a, e in enumerate(m):
        if e == 1:
            parts.append(f"t{a + 1}")
        elif e:
            parts.append(f"t{a + 1}^{e}")
    return " ".join(parts)


def render_class(x: GradedClass) -> str:
    if x.is_zero():
        return "0"
    pieces = []
    for m, c in x.sorted_terms():
        mono = render_monomial(m)
        coeff = format_rational(abs(c))
        body = mono if (mono and abs(c) == 1) else (f"{coeff} {mono}" if mono else coeff)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
