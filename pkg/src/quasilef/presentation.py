"""Input data: a torus ``T = (G_m)^k`` acting on ``A^n`` with a character, a
representation ``E`` and (optionally) an explicit section cutting out ``Y``.

Weights are integer vectors, curve classes are rational vectors.  Everything
is immutable and hashable so downstream caches can key on it.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import _linalg

Weight = tuple[int, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class PresentationParseError(ValueError):
    """Malformed input (shape or number format), as opposed to a violated invariant."""


def parse_rational(value: Any) -> Fraction:
    """Exact rational from an int, a Fraction or a ``"p/q"`` string.

    Floats and decimal strings are refused: they are not exact.
    """
    if isinstance(value, bool):
        raise PresentationParseError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise PresentationParseError(f"not an exact rational 'p/q': {value!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise PresentationParseError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise PresentationParseError(f"not a rational number: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class RationalClass:
    """A class in ``Hom(chi(T), Q)`` stored by its values on the projection characters."""

    components: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(parse_rational(c) for c in self.components))

    @classmethod
    def parse(cls, text: str) -> "RationalClass":
        """Parse ``"(-1/3,1)"`` (parentheses and spaces optional)."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        if not body.strip():
            raise PresentationParseError(f"empty class {text!r}")
        return cls(tuple(parse_rational(part) for part in body.split(",")))

    @classmethod
    def zero(cls, k: int) -> "RationalClass":
        return cls((0,) * k)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other: "RationalClass") -> "RationalClass":
        if len(other) != len(self):
            raise ValueError("class length mismatch")
        return RationalClass(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "RationalClass") -> "RationalClass":
        return self + (-other)

    def __neg__(self) -> "RationalClass":
        return RationalClass(tuple(-a for a in self))

    def __rmul__(self, scalar) -> "RationalClass":
        s = Fraction(scalar)
        return RationalClass(tuple(s * a for a in self))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    @property
    def denominator(self) -> int:
        """Smallest ``a >= 1`` with ``a * self`` integral."""
        return lcm(*(a.denominator for a in self)) if self.components else 1

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(a) for a in self) + ")"


def pairing(b: RationalClass | Sequence, w: Sequence[int]) -> Fraction:
    """``b(w)`` for a class ``b`` and a character ``w``, exactly."""
    if len(b) != len(w):
        raise ValueError(f"length mismatch: class has {len(b)} entries, weight has {len(w)}")
    return sum((Fraction(x) * y for x, y in zip(b, w)), Fraction(0))


@dataclass(frozen=True)
class SectionTerm:
    coeff: Fraction
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def _as_weight(row: Any, k: int | None, what: str) -> Weight:
    if not isinstance(row, (list, tuple)):
        raise PresentationParseError(f"{what}: expected an integer vector, got {row!r}")
    out = []
    for x in row:
        if isinstance(x, bool) or not isinstance(x, int):
            raise PresentationParseError(f"{what}: non-integer weight entry {x!r}")
        out.append(x)
    if k is not None and len(out) != k:
        raise PresentationParseError(f"{what}: expected length {k}, got {len(out)}")
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    """Abelian CI-GIT data ``(X = A^n, T, theta, E, s)``.

    ``section`` is either ``None`` (no explicit section; a general one is
    assumed) or one tuple of monomials per coordinate of ``E``.
    """

    x_weights: tuple[Weight, ...]
    e_weights: tuple[Weight, ...] = ()
    theta: Weight = ()
    section: tuple[tuple[SectionTerm, ...], ...] | None = None
    fano_asserted: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.x_weights:
            raise PresentationParseError("x_weights must be nonempty")
        k = len(_as_weight(self.x_weights[0], None, "x_weights[0]"))
        if k == 0:
            raise PresentationParseError("weights must have positive length")
        xw = tuple(_as_weight(r, k, f"x_weights[{i}]") for i, r in enumerate(self.x_weights))
        ew = tuple(_as_weight(r, k, f"e_weights[{j}]") for j, r in enumerate(self.e_weights))
        th = _as_weight(self.theta, k, "theta")
        object.__setattr__(self, "x_weights", xw)
        object.__setattr__(self, "e_weights", ew)
        object.__setattr__(self, "theta", th)
        if self.section is not None:
            sec = []
            for j, comp in enumerate(self.section):
                terms = []
                for t in comp:
                    if not isinstance(t, SectionTerm):
                        raise PresentationParseError(f"section[{j}]: expected SectionTerm, got {t!r}")
                    exps = tuple(t.exponents)
                    if len(exps) != len(xw) or any(
                        isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps
                    ):
                        raise PresentationParseError(
                            f"section[{j}]: exponent vector {exps!r} is not {len(xw)} nonnegative integers"
                        )
                    terms.append(SectionTerm(parse_rational(t.coeff), exps))
                sec.append(tuple(terms))
            object.__setattr__(self, "section", tuple(sec))

    @property
    def n(self) -> int:
        return len(self.x_weights)

    @property
    def k(self) -> int:
        return len(self.theta)

    @property
    def r(self) -> int:
        return len(self.e_weights)

    @property
    def det_x(self) -> Weight:
        return tuple(sum(w[a] for w in self.x_weights) for a in range(self.k))

    @property
    def det_e(self) -> Weight:
        return tuple(sum(w[a] for w in self.e_weights) for a in range(self.k))

    @property
    def degree_character(self) -> Weight:
        """``det X - det E`` (the torus has trivial adjoint determinant)."""
        return tuple(x - e for x, e in zip(self.det_x, self.det_e))

    def section_weight(self, exponents: Sequence[int]) -> Weight:
        return tuple(
            sum(e * w[a] for e, w in zip(exponents, self.x_weights)) for a in range(self.k)
        )

    # -- serialization -----------------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict, name: str = "") -> "Presentation":
        if not isinstance(doc, dict):
            raise PresentationParseError("presentation document must be a JSON object")
        unknown = set(doc) - {"x_weights", "e_weights", "theta", "section", "fano", "name"}
        if unknown:
            raise PresentationParseError(f"unknown fields: {sorted(unknown)}")
        for key in ("x_weights", "theta"):
            if key not in doc:
                raise PresentationParseError(f"missing field {key!r}")
        if not isinstance(doc["x_weights"], list):
            raise PresentationParseError("x_weights must be an array")
        section = None
        if doc.get("section") is not None:
            raw = doc["section"]
            if not isinstance(raw, list):
                raise PresentationParseError("section must be an array over E-coordinates")
            section = []
            for j, comp in enumerate(raw):
                if not isinstance(comp, list):
                    raise PresentationParseError(f"section[{j}] must be an array of monomials")
                terms = []
                for t in comp:
                    if not isinstance(t, dict) or set(t) != {"coeff", "exponents"}:
                        raise PresentationParseError(
                            f"section[{j}]: monomial must be {{'coeff', 'exponents'}}, got {t!r}"
                        )
                    if not isinstance(t["exponents"], list):
                        raise PresentationParseError(f"section[{j}]: exponents must be an array")
                    terms.append(SectionTerm(parse_rational(t["coeff"]), tuple(t["exponents"])))
                section.append(tuple(terms))
            section = tuple(section)
        fano = doc.get("fano", False)
        if not isinstance(fano, bool):
            raise PresentationParseError("fano must be a boolean")
        return cls(
            x_weights=tuple(tuple(r) if isinstance(r, list) else r for r in doc["x_weights"]),
            e_weights=tuple(tuple(r) if isinstance(r, list) else r for r in doc.get("e_weights", [])),
            theta=tuple(doc["theta"]) if isinstance(doc["theta"], list) else doc["theta"],
            section=section,
            fano_asserted=fano,
            name=doc.get("name", name),
        )

    @classmethod
    def from_json(cls, text: str, name: str = "") -> "Presentation":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PresentationParseError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc, name=name)

    @classmethod
    def load(cls, path: str | Path) -> "Presentation":
        path = Path(path)
        return cls.from_json(path.read_text(encoding="utf-8"), name=path.stem)

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "x_weights": [list(w) for w in self.x_weights],
            "e_weights": [list(w) for w in self.e_weights],
            "theta": list(self.theta),
            "fano": self.fano_asserted,
        }
        if self.section is not None:
            doc["section"] = [
                [{"coeff": format_rational(t.coeff), "exponents": list(t.exponents)} for t in comp]
                for comp in self.section
            ]
        if self.name:
            doc["name"] = self.name
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def validate(p: Presentation) -> ValidationReport:
    """List every violated invariant of ``p`` (empty report means valid).

    Parse-level problems never reach this point; they raise
    :class:`PresentationParseError` at construction time.
    """
    problems: list[str] = []
    if p.k > p.n:
        problems.append(f"torus rank k={p.k} exceeds n={p.n}")

    if p.section is not None:
        if len(p.section) != p.r:
            problems.append(f"section has {len(p.section)} components but E has rank {p.r}")
        for j, comp in enumerate(p.section[: p.r]):
            for t in comp:
                if t.coeff == 0:
                    continue
                w = p.section_weight(t.exponents)
                if w != p.e_weights[j]:
                    problems.append(
                        f"section[{j}]: monomial {list(t.exponents)} has weight {w}, expected {p.e_weights[j]}"
                    )

    if not _linalg.cone_contains(p.x_weights, p.theta):
        problems.append("theta is not in the cone of the weights: the semistable locus is empty")
    else:
        bad = _positive_dimensional_stabilizer(p)
        if bad is not None:
            problems.append(
                "semistable points with positive-dimensional stabilizer: "
                f"theta lies in the cone of the rank-deficient coordinate set {sorted(bad)}"
            )
    return ValidationReport(tuple(problems))


def _positive_dimensional_stabilizer(p: Presentation) -> frozenset[int] | None:
    """A coordinate set whose weights miss a full rank yet whose cone contains theta.

    It is enough to test the flats ``{i : xi_i in span(B)}`` for independent
    sets ``B`` of size < k, since cone membership is monotone.
    """
    seen: set[frozenset[int]] = set()
    for size in range(p.k):
        for basis in itertools.combinations(range(p.n), size):
            vecs = [p.x_weights[i] for i in basis]
            if _linalg.rank(vecs) != size:
                continue
            flat = frozenset(
                i for i in range(p.n) if _linalg.rank(vecs + [p.x_weights[i]]) == size
            )
            if flat in seen:
                continue
            seen.add(flat)
            if _linalg.cone_contains([p.x_weights[i] for i in sorted(flat)], p.theta):
                return flat
    return None
