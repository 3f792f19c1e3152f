"""Exact Laurent arithmetic in ``z`` and ``kappa`` over a sector ring.

An element is stored as

    numerator / prod_alpha (alpha z + kappa)^m_alpha

where the numerator is a finite Laurent polynomial in ``z, kappa`` with
:class:`GradedClass` coefficients.  Factors ``c + a z + b kappa`` with ``c``
nilpotent expand to finitely many terms when ``a`` or ``b`` vanishes; when
both are nonzero the scalar part ``a z + b kappa`` cannot be expanded into a
finite Laurent polynomial and is kept as a denominator form instead.  Such
forms are units at ``kappa = 0``, so they never create or hide a ``kappa``
pole.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .errors import NonInvertible
from .presentation import Presentation, RationalClass, format_rational, pairing
from .rings import GradedClass, SectorRing, render_monomial

Key = tuple[int, int]  # (z exponent, kappa exponent)


@dataclass(frozen=True)
class Cycle:
    """The class ``[F]`` of a fixed-map locus, pushed into its sector.

    Coefficients of a series carrying a cycle are operational classes on
    ``F``; the cycle adds ``codim`` to the cohomological degree.
    """

    support: frozenset
    codim: int
    label: str = "F"


@dataclass(frozen=True)
class LinearFactor:
    """``c + z_coeff * z + kappa_coeff * kappa`` with ``c`` a degree-1 class."""

    c: GradedClass
    z_coeff: Fraction = Fraction(0)
    kappa_coeff: Fraction = Fraction(0)

    def __str__(self):
        parts = [] if self.c.is_zero() else [str(self.c)]
        if self.z_coeff:
            parts.append(f"{format_rational(self.z_coeff)} z")
        if self.kappa_coeff:
            parts.append(f"{format_rational(self.kappa_coeff)} kappa")
        return "(" + (" + ".join(parts) or "0") + ")"


def _clean(terms: Mapping[Key, GradedClass]) -> dict[Key, GradedClass]:
    return {k: v for k, v in terms.items() if not v.is_zero()}


def _acc(out: dict[Key, GradedClass], key: Key, value: GradedClass):
    if key in out:
        out[key] = out[key] + value
    else:
        out[key] = value


class SeriesElement:
    """See the module docstring.  Values are treated as immutable."""

    __slots__ = ("ring", "terms", "forms", "sector", "cycle")

    def __init__(self, ring: SectorRing, terms=None, forms=None, sector=None, cycle: Cycle | None = None):
        self.ring = ring
        self.terms: dict[Key, GradedClass] = _clean(terms or {})
        self.forms: dict[Fraction, int] = {Fraction(a): m for a, m in (forms or {}).items() if m} if self.terms else {}
        self.sector = sector
        self.cycle = cycle

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, ring: SectorRing, value=1, sector=None, cycle=None) -> "SeriesElement":
        v = value if isinstance(value, GradedClass) else ring.scalar(value)
        return cls(ring, {(0, 0): v}, sector=sector, cycle=cycle)

    @classmethod
    def from_factor(cls, f: LinearFactor, ring: SectorRing, sector=None, cycle=None) -> "SeriesElement":
        terms = {(0, 0): f.c}
        if f.z_coeff:
            terms[(1, 0)] = ring.scalar(f.z_coeff)
        if f.kappa_coeff:
            terms[(0, 1)] = ring.scalar(f.kappa_coeff)
        return cls(ring, terms, sector=sector, cycle=cycle)

    def _like(self, terms, forms=None) -> "SeriesElement":
        return SeriesElement(self.ring, terms, forms if forms is not None else self.forms, self.sector, self.cycle)

    # -- arithmetic --------------------------------------------------------

    def _compatible(self, other: "SeriesElement"):
        if self.ring != other.ring:
            raise ValueError("series over different rings")
        if self.sector != other.sector or self.cycle != other.cycle:
            raise ValueError("series supported on different sectors")

    def _coerce(self, other) -> "SeriesElement":
        if isinstance(other, SeriesElement):
            self._compatible(other)
            return other
        if isinstance(other, GradedClass) or isinstance(other, (int, Fraction)):
            return SeriesElement.constant(self.ring, other, self.sector, self.cycle)
        raise TypeError(f"cannot combine SeriesElement with {type(other).__name__}")

    def _with_forms(self, forms: Mapping[Fraction, int]) -> dict[Key, GradedClass]:
        """Numerator after raising the denominator to ``forms`` (a multiple of ours)."""
        terms = self.terms
        for alpha, m in forms.items():
            extra = m - self.forms.get(alpha, 0)
            if extra:
                terms = _mul_terms(terms, _form_power(alpha, extra, self.ring))
        return terms

    def __add__(self, other):
        other = self._coerce(other)
        forms = {a: max(self.forms.get(a, 0), other.forms.get(a, 0)) for a in set(self.forms) | set(other.forms)}
        out = dict(self._with_forms(forms))
        for k, v in other._with_forms(forms).items():
            _acc(out, k, v)
        return self._like(out, forms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like({k: v * other for k, v in self.terms.items()})
        if isinstance(other, GradedClass):
            return self._like({k: v * other for k, v in self.terms.items()})
        other = self._coerce(other)
        forms = dict(self.forms)
        for a, m in other.forms.items():
            forms[a] = forms.get(a, 0) + m
        return self._like(_mul_terms(self.terms, other.terms), forms)

    __rmul__ = __mul__

    def shift(self, dz: int = 0, dkappa: int = 0) -> "SeriesElement":
        """Multiply by ``z^dz kappa^dkappa``."""
        return self._like({(i + dz, j + dkappa): v for (i, j), v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, (SeriesElement, GradedClass, int, Fraction)):
            return NotImplemented
        if isinstance(other, SeriesElement) and (
            self.ring != other.ring or self.sector != other.sector or self.cycle != other.cycle
        ):
            return False
        return (self - other).is_zero()

    __hash__ = None

    def map_coefficients(self, ring: SectorRing, fn=None) -> "SeriesElement":
        fn = fn or (lambda v: v.in_ring(ring))
        return SeriesElement(ring, {k: fn(v) for k, v in self.terms.items()}, self.forms, self.sector, self.cycle)

    def cancel(self) -> "SeriesElement":
        """Divide out every denominator form that divides the numerator exactly."""
        terms, forms = self.terms, dict(self.forms)
        for alpha in sorted(forms):
            while forms[alpha]:
                q = _divide_by_form(terms, alpha)
                if q is None:
                    break
                terms = q
                forms[alpha] -= 1
        return self._like(terms, forms)

    def min_kappa(self) -> int | None:
        return min((j for _, j in self.terms), default=None)

    def iter_terms(self):
        """Yield ``(z_exp, kappa_exp, monomial, coefficient)`` in canonical order."""
        for (i, j) in sorted(self.terms):
            for m, c in self.terms[(i, j)].sorted_terms():
                yield i, j, m, c

    def __repr__(self):
        return f"SeriesElement({render(self)})"

    def __str__(self):
        return render(self)


def _mul_terms(a: Mapping[Key, GradedClass], b: Mapping[Key, GradedClass]) -> dict[Key, GradedClass]:
    out: dict[Key, GradedClass] = {}
    for (i1, j1), v1 in a.items():
        for (i2, j2), v2 in b.items():
            p = v1 * v2
            if not p.is_zero():
                _acc(out, (i1 + i2, j1 + j2), p)
    return _clean(out)


def _form_power(alpha: Fraction, e: int, ring: SectorRing) -> dict[Key, GradedClass]:
    """``(alpha z + kappa)^e`` by the binomial theorem."""
    return {(i, e - i): ring.scalar(comb(e, i) * alpha**i) for i in range(e + 1)}


def _divide_by_form(terms: Mapping[Key, GradedClass], alpha: Fraction) -> dict[Key, GradedClass] | None:
    """Exact quotient by ``kappa + alpha z`` (synthetic division in ``kappa``), or None."""
    if not terms:
        return {}
    rows: dict[int, dict[int, GradedClass]] = {}
    for (i, j), v in terms.items():
        rows.setdefault(j, {})[i] = v
    jmin, jmax = min(rows), max(rows)
    quotient: dict[Key, GradedClass] = {}
    for j in range(jmax, jmin, -1):
        row = {i: v for i, v in rows.get(j, {}).items() if not v.is_zero()}
        if not row:
            continue
        for i, v in row.items():
            quotient[(i, j - 1)] = v
            below = rows.setdefault(j - 1, {})
            below[i + 1] = below[i + 1] - v * alpha if i + 1 in below else -(v * alpha)
        rows[j] = {}
    if any(not v.is_zero() for v in rows.get(jmin, {}).values()):
        return None
    return _clean(quotient)


# -- factor inversion and products ------------------------------------------


def invert(f: LinearFactor, ring: SectorRing | None = None, sector=None, cycle=None) -> SeriesElement:
    """Exact inverse of ``c + a z + b kappa`` for nilpotent ``c``.

    ``(L + c)^{-1} = sum_m (-c)^m L^{-m-1}`` with ``L = a z + b kappa``; the
    sum stops once ``c^m = 0``.
    """
    ring = ring or f.c.ring
    c = f.c
    if c.constant():
        raise ValueError("the class part of a linear factor must be nilpotent")
    a, b = Fraction(f.z_coeff), Fraction(f.kappa_coeff)
    if not a and not b:
        raise NonInvertible(f"{f} is nilpotent")
    powers = [ring.one()]
    while not (nxt := powers[-1] * (-c)).is_zero():
        powers.append(nxt)
    if not b:
        terms = {(-1 - m, 0): pw * (1 / a ** (m + 1)) for m, pw in enumerate(powers)}
        return SeriesElement(ring, terms, sector=sector, cycle=cycle)
    if not a:
        terms = {(0, -1 - m): pw * (1 / b ** (m + 1)) for m, pw in enumerate(powers)}
        return SeriesElement(ring, terms, sector=sector, cycle=cycle)
    alpha = a / b
    top = len(powers) - 1
    numerator: dict[Key, GradedClass] = {}
    for m, pw in enumerate(powers):
        scaled = pw * (1 / b ** (m + 1))
        for key, coeff in _form_power(alpha, top - m, ring).items():
            _acc(numerator, key, scaled * coeff)
    return SeriesElement(ring, numerator, {alpha: top + 1}, sector=sector, cycle=cycle)


def c_factor(
    p: Presentation,
    b: RationalClass,
    w: Sequence[int],
    ring: SectorRing,
    kappa_shift: bool = False,
    circ: bool = False,
) -> tuple[list[LinearFactor], list[LinearFactor]]:
    """Numerator and denominator linear factors of ``C(b, w)`` (``C°`` if ``circ``).

    With ``kappa_shift`` every factor has ``c_1(L_w) + kappa`` in place of ``c_1(L_w)``.
    """
    d = pairing(b, w)
    c = ring.linear(w)
    kap = Fraction(1) if kappa_shift else Fraction(0)
    nums: list[LinearFactor] = []
    dens: list[LinearFactor] = []
    if d <= 0:
        k = d + 1
        while k < 0:
            nums.append(LinearFactor(c, k, kap))
            k += 1
        if not circ and d.denominator == 1 and d < 0:
            nums.insert(0, LinearFactor(c, Fraction(0), kap))
    else:
        k = d - (d.numerator // d.denominator)  # fractional part of d
        if k == 0:
            k = Fraction(1)
        while k <= d:
            dens.append(LinearFactor(c, k, kap))
            k += 1
    return nums, dens


def product(
    ring: SectorRing,
    numerators: Sequence[LinearFactor],
    denominators: Sequence[LinearFactor],
    sector=None,
    cycle: Cycle | None = None,
) -> SeriesElement:
    """``prod(numerators) / prod(denominators)``, expanded once at the end."""
    out = SeriesElement.constant(ring, 1, sector, cycle)
    for f in numerators:
        out = out * SeriesElement.from_factor(f, ring, sector, cycle)
        if out.is_zero():
            return out
    for f in denominators:
        out = out * invert(f, ring, sector, cycle)
    return out


# -- kappa limits and z slices ------------------------------------------------


@dataclass(frozen=True)
class DoesNotExist:
    """The ``kappa -> 0`` limit has a pole; ``principal_part`` holds the negative powers."""

    principal_part: SeriesElement

    def __str__(self):
        return f"no limit (principal part: {render(self.principal_part)})"


def kappa_expansion(x: SeriesElement, order: int) -> SeriesElement:
    """All terms of the ``kappa``-adic expansion of ``x`` with ``kappa`` exponent < ``order``."""
    if x.is_zero():
        return x._like({}, {})
    jmin = x.min_kappa()
    depth = order - jmin - 1
    if depth < 0:
        return x._like({}, {})
    terms = dict(x.terms)
    for alpha, m in x.forms.items():
        # (alpha z + kappa)^{-m} = sum_j (-1)^j C(m+j-1, j) alpha^{-m-j} z^{-m-j} kappa^j
        series = {
            (-m - j, j): x.ring.scalar((-1) ** j * comb(m + j - 1, j) / alpha ** (m + j))
            for j in range(depth + 1)
        }
        terms = _mul_terms(terms, series)
    return x._like({k: v for k, v in terms.items() if k[1] < order}, {})


def kappa_limit(x: SeriesElement) -> SeriesElement | DoesNotExist:
    """``lim_{kappa -> 0}`` if no negative power of ``kappa`` survives."""
    if x.is_zero():
        return x._like({}, {})
    if x.min_kappa() < 0:
        return DoesNotExist(kappa_expansion(x, 0))
    shift = sum(x.forms.values())
    scale = Fraction(1)
    for alpha, m in x.forms.items():
        scale /= alpha**m
    return x._like({(i - shift, 0): v * scale for (i, j), v in x.terms.items() if j == 0}, {})


def _require_laurent(x: SeriesElement):
    if x.forms:
        raise ValueError("element has mixed (z, kappa) denominators; take the kappa limit or expand first")


def z_coefficient(x: SeriesElement, e: int) -> dict[int, GradedClass]:
    """The ``z^e`` slice as ``{kappa exponent: class}``."""
    _require_laurent(x)
    return {j: v for (i, j), v in sorted(x.terms.items()) if i == e}


def nonnegative_z_part(x: SeriesElement) -> SeriesElement:
    """``[x]_+``: drop every negative power of ``z``."""
    _require_laurent(x)
    return x._like({(i, j): v for (i, j), v in x.terms.items() if i >= 0}, {})


def restrict(x: SeriesElement, ring: SectorRing) -> SeriesElement:
    """Image of ``x`` under the quotient map of coefficient rings."""
    return x.map_coefficients(ring)


# -- rendering ----------------------------------------------------------------


def _power(symbol: str, e: int) -> str:
    if e == 0:
        return ""
    return symbol if e == 1 else f"{symbol}^{e}"


def _render_numerator(x: SeriesElement) -> str:
    pieces = []
    for i, j, m, c in x.iter_terms():
        factors = [s for s in (_power("z", i), _power("kappa", j), render_monomial(m)) if s]
        if x.cycle is not None:
            factors.append(f"[{x.cycle.label}]")
        body = " ".join(factors)
        mag = abs(c)
        if not body:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)} {body}"
        pieces.append(("-" if c < 0 else "+", text))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


def _render_form(alpha: Fraction, m: int) -> str:
    if alpha == 1:
        lin = "z + kappa"
    elif alpha == -1:
        lin = "-z + kappa"
    else:
        lin = f"{'-' if alpha < 0 else ''}{format_rational(abs(alpha))} z + kappa"
    return f"({lin})" + (f"^{m}" if m > 1 else "")


def render(x: SeriesElement) -> str:
    """Canonical text: terms sorted by z exponent, kappa exponent, then monomial."""
    x = x.cancel()
    num = _render_numerator(x)
    if not x.forms:
        return num
    den = " ".join(_render_form(a, m) for a, m in sorted(x.forms.items()))
    return f"({num}) / ({den})"
