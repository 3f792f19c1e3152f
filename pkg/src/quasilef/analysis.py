"""Decision procedures: I-convexity, the limit-existence equivalences, and the period criterion."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, lcm
from typing import Sequence

from . import cones
from .cones import is_i_nonnegative
from .errors import NonPositiveDegree
from .ifunc import restricted_twisted_limit, twisted_limit_exists
from .presentation import Presentation, RationalClass, pairing
from .sectors import sector_descriptor
from .series import DoesNotExist, SeriesElement

__all__ = [
    "is_i_nonnegative",
    "choose_grading",
    "IConvexity",
    "is_i_convex",
    "limit_existence_scan",
    "h1_weighted_p1",
    "convex_line_bundle_wps",
    "Lemma53Entry",
    "Lemma53Report",
    "lemma53_criterion",
    "Prop33Report",
    "prop33_battery",
]


def _cone_generators(p: Presentation) -> list[RationalClass]:
    return sorted({g for c in cones.simplicial_cones(p) for g in c.generators})


def choose_grading(p: Presentation) -> tuple[int, ...]:
    """A character pairing positively with every nonzero effective class.

    Tries the Novikov degree character first, then ``theta``, then ``det X``.
    Calabi-Yau targets have a degenerate Novikov grading, hence the fallbacks.
    """
    gens = _cone_generators(p)
    candidates = [p.degree_character, p.theta, p.det_x]
    for w in candidates:
        if all(pairing(g, w) > 0 for g in gens):
            return tuple(w)
    bad = min(gens, key=lambda g: pairing(g, candidates[0]))
    raise NonPositiveDegree(bad, pairing(bad, candidates[0]))


def _negative_pairing(p: Presentation, b: RationalClass) -> tuple[int, Fraction] | None:
    for j, e in enumerate(p.e_weights):
        v = pairing(b, e)
        if v < 0:
            return j, v
    return None


def _offending(p: Presentation, b: RationalClass) -> tuple[int, Fraction]:
    return next(
        (j, v) for j, e in enumerate(p.e_weights)
        if (v := pairing(b, e)) < 0 and v.denominator == 1
    )


def _integral_multiple(p: Presentation, b: RationalClass) -> RationalClass:
    """Smallest positive multiple of ``b`` with every negative E-pairing integral."""
    dens = [pairing(b, e).denominator for e in p.e_weights if pairing(b, e) < 0]
    return lcm(*dens) * b if dens else b


@dataclass(frozen=True)
class IConvexity:
    convex: bool
    witness: RationalClass | None = None
    weight_index: int | None = None
    pairing: Fraction | None = None
    bound: Fraction | None = None
    unconditional: bool = False
    grading: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "convex": self.convex,
            "witness": None if self.witness is None else str(self.witness),
            "weight_index": self.weight_index,
            "pairing": None if self.pairing is None else str(self.pairing),
            "bound": str(self.bound),
            "unconditional": self.unconditional,
            "grading": list(self.grading),
        }


def is_i_convex(p: Presentation, max_degree) -> IConvexity:
    """Scan effective classes by degree for one that is not I-nonnegative.

    If none is found in the bound, the cone generators decide the question:
    a generator pairing negatively with some ``eps`` has a multiple pairing to
    a negative integer (reported as the witness), and if every generator pairs
    nonnegatively so does every effective class.
    """
    bound = Fraction(max_degree)
    grading = choose_grading(p)
    for b in cones.enumerate_effective(p, bound, grading):
        if not is_i_nonnegative(p, b):
            j, v = _offending(p, b)
            return IConvexity(False, b, j, v, bound, True, grading)
    for g in _cone_generators(p):
        if _negative_pairing(p, g) is not None:
            w = _integral_multiple(p, g)
            assert cones.is_i_effective(p, w) and not is_i_nonnegative(p, w)
            j, v = _offending(p, w)
            return IConvexity(False, w, j, v, bound, True, grading)
    return IConvexity(True, None, None, None, bound, True, grading)


def limit_existence_scan(p: Presentation, max_degree) -> list[tuple[RationalClass, bool]]:
    """Whether ``lim_{kappa->0}`` of the ambient twisted coefficient exists, per class."""
    out = []
    for b in cones.enumerate_effective(p, max_degree, choose_grading(p)):
        out.append((b, twisted_limit_exists(p, b)))
    return out


def h1_weighted_p1(d, a: int) -> int:
    """``h^1`` of a degree-``d`` line bundle on ``P^1_{a,1}`` (orbifold Riemann-Roch).

    The coarse pushforward has degree ``floor(d)``.
    """
    d = Fraction(d)
    if a <= 0:
        raise ValueError("the orbifold order must be positive")
    if (a * d).denominator != 1:
        raise ValueError(f"degree {d} is not in (1/{a})Z")
    return max(0, -floor(d) - 1)


def convex_line_bundle_wps(weights: Sequence[int], k: int) -> bool:
    """``O(k)`` on a weighted projective space is convex iff it is pulled back from a nef bundle."""
    return k >= 0 and all(k % a == 0 for a in weights)


# -- the period criterion ----------------------------------------------------------


@dataclass(frozen=True)
class Lemma53Entry:
    cls: RationalClass
    limit: str  # rendered value or principal part
    condition1: str  # "pass" | "fail" | "inconclusive"
    age: Fraction
    codim: int
    condition2: bool


@dataclass
class Lemma53Report:
    status: str  # "pass" | "fail" | "inconclusive" | "hypothesis-fail"
    conditional: bool
    bound: Fraction
    condition: int | None = None
    witness: RationalClass | None = None
    entries: list[Lemma53Entry] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "conditional": self.conditional,
            "bound": str(self.bound),
            "condition": self.condition,
            "witness": None if self.witness is None else str(self.witness),
            "note": self.note,
            "entries": [
                {
                    "class": str(e.cls),
                    "limit": e.limit,
                    "condition1": e.condition1,
                    "age": str(e.age),
                    "codim": e.codim,
                    "condition2": e.condition2,
                }
                for e in self.entries
            ],
        }


def _has_visible_scalar(x: SeriesElement) -> bool:
    return any(sum(m) == 0 for _, _, m, _ in x.iter_terms())


def _condition1(lim) -> str:
    """``pass`` if the limit exists and is 0 in the truncated model.

    The truncated ring is a model from which the true image is a further
    quotient, so vanishing there is conclusive.  Only a nonzero multiple of a
    fundamental class (degree 0) is conclusively nonzero.
    """
    if isinstance(lim, DoesNotExist):
        return "fail" if _has_visible_scalar(lim.principal_part) else "inconclusive"
    if lim.is_zero():
        return "pass"
    return "fail" if _has_visible_scalar(lim) else "inconclusive"


def lemma53_criterion(p: Presentation, max_degree) -> Lemma53Report:
    bound = Fraction(max_degree)
    conditional = not p.fano_asserted
    try:
        classes = cones.enumerate_effective(p, bound)
    except NonPositiveDegree as exc:
        return Lemma53Report("hypothesis-fail", conditional, bound, None, exc.cls,
                             note=f"effective class {exc.cls} has degree {exc.degree} <= 0")
    report = Lemma53Report("pass", conditional, bound)
    for b in classes:
        if is_i_nonnegative(p, b):
            continue
        lim = restricted_twisted_limit(p, b)
        c1 = _condition1(lim)
        d = sector_descriptor(p, b)
        c2 = d.age + d.f_codim_y >= 1
        report.entries.append(Lemma53Entry(b, str(lim), c1, d.age, d.f_codim_y, c2))
        if report.status == "fail":
            continue
        if c1 == "fail" or not c2:
            report.status = "fail"
            report.condition = 1 if c1 == "fail" else 2
            report.witness = b
        elif c1 == "inconclusive" and report.status == "pass":
            report.status = "inconclusive"
            report.condition = 1
            report.witness = b
    if conditional:
        report.note = "Fano condition not asserted: the verdict is conditional"
    return report


# -- the four-way equivalence ------------------------------------------------------


@dataclass
class Prop33Report:
    """Verdicts (1) I-convex, (2) E nonnegative, (3) h^1 vanishing, (4) limit exists."""

    bound: Fraction
    i_convex: bool
    e_nonnegative: bool
    h1_vanishing: bool
    limit_exists: bool
    probes: int
    proper: bool = True
    disagreements: list[str] = field(default_factory=list)
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def note(self) -> str:
        if self.agree or self.proper:
            return ""
        return (
            "X//T is not proper: the class of a fixed locus can vanish in cohomology, "
            "so the twisted limit may exist for a class that is not I-nonnegative"
        )

    @property
    def verdicts(self) -> tuple[bool, bool, bool, bool]:
        return (self.i_convex, self.e_nonnegative, self.h1_vanishing, self.limit_exists)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1 and not self.disagreements

    def to_dict(self) -> dict:
        return {
            "bound": str(self.bound),
            "i_convex": self.i_convex,
            "e_nonnegative": self.e_nonnegative,
            "h1_vanishing": self.h1_vanishing,
            "limit_exists": self.limit_exists,
            "agree": self.agree,
            "probes": self.probes,
            "proper": self.proper,
            "note": self.note,
            "disagreements": self.disagreements,
            "witnesses": self.witnesses,
        }


def _h1_vanishes_on_orbit(p: Presentation, b: RationalClass) -> RationalClass | None:
    """First multiple ``m b`` with ``h^1 != 0`` for some ``eps``, or None."""
    for e in p.e_weights:
        d = pairing(b, e)
        if d >= 0:
            continue
        m = 1
        while not h1_weighted_p1(m * d, d.denominator):
            m += 1  # terminates: h^1 > 0 once m d < -1
        return m * b
    return None


def prop33_battery(p: Presentation, max_degree) -> Prop33Report:
    """Evaluate the four conditions on the effective classes up to the bound.

    The probe set is closed under the scaling that makes negative pairings
    integral, and includes the cone generators, so each verdict is the true
    global one rather than a bound artefact.  A per-class mismatch between
    I-nonnegativity and limit existence is also recorded as a disagreement.
    """
    bound = Fraction(max_degree)
    grading = choose_grading(p)
    base = set(cones.enumerate_effective(p, bound, grading)) | set(_cone_generators(p))
    probes = set(base)
    for b in base:
        probes.add(_integral_multiple(p, b))
    probes = sorted(probes, key=lambda b: (pairing(b, grading), b))

    convex = is_i_convex(p, bound)
    report = Prop33Report(bound, convex.convex, True, True, True, len(probes), cones.is_proper(p))
    if not convex.convex:
        report.witnesses["1"] = str(convex.witness)
    for b in probes:
        if report.e_nonnegative and _negative_pairing(p, b) is not None:
            report.e_nonnegative = False
            report.witnesses["2"] = str(b)
        if report.h1_vanishing and (w := _h1_vanishes_on_orbit(p, b)) is not None:
            report.h1_vanishing = False
            report.witnesses["3"] = str(w)
        exists = twisted_limit_exists(p, b)
        if report.limit_exists and not exists:
            report.limit_exists = False
            report.witnesses["4"] = str(b)
        if exists != is_i_nonnegative(p, b):
            report.disagreements.append(
                f"{b}: I-nonnegative={is_i_nonnegative(p, b)} but limit exists={exists}"
            )
    return report
