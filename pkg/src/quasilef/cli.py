"""Command-line front end.

Exit codes: 0 pass, 1 fail (witness JSON on stdout), 2 invalid input,
3 non-positive degree, 4 class not effective, 5 inconclusive.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, cones, ifunc
from .errors import NonPositiveDegree, NotEffective
from .presentation import (
    Presentation,
    PresentationParseError,
    RationalClass,
    format_rational,
    parse_rational,
    validate,
)
from .sectors import age, novikov_degree, sector_descriptor
from .series import DoesNotExist, SeriesElement, kappa_limit, render

EXIT_PASS, EXIT_FAIL, EXIT_INVALID, EXIT_DEGREE, EXIT_NOT_EFFECTIVE, EXIT_INCONCLUSIVE = range(6)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> Presentation:
    try:
        p = Presentation.load(path)
    except OSError as exc:
        raise CliError(EXIT_INVALID, f"cannot read {path}: {exc}")
    except (PresentationParseError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_INVALID, f"parse error: {exc}")
    report = validate(p)
    if not report.ok:
        raise CliError(EXIT_INVALID, "invalid presentation:\n" + "\n".join(f"  - {v}" for v in report.violations))
    return p


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except PresentationParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _class(text: str) -> RationalClass:
    try:
        return RationalClass.parse(text)
    except PresentationParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(args, text_lines: list[str], doc) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _witness_line(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


# -- effective ---------------------------------------------------------------


def cmd_effective(args) -> int:
    p = _load(args.file)
    rows = []
    for b in cones.enumerate_effective(p, args.max_degree):
        g = sector_descriptor(p, b).element
        rows.append(
            {
                "class": str(b),
                "degree": format_rational(novikov_degree(p, b)),
                "sector": str(g),
                "age": format_rational(age(p, g)),
            }
        )
    lines = [f"{len(rows)} effective classes of degree <= {format_rational(args.max_degree)}"]
    lines += [f"{r['class']}\tdegree {r['degree']}\tsector {r['sector']}\tage {r['age']}" for r in rows]
    _emit(args, lines, {"max_degree": format_rational(args.max_degree), "classes": rows})
    return EXIT_PASS


# -- ifun --------------------------------------------------------------------


def _value(p: Presentation, b: RationalClass, args) -> str:
    if not args.twisted:
        x = ifunc.quasimap_coefficient(p, b)
        return str(x) if isinstance(x, ifunc.Unsupported) else render(x)
    x = ifunc.twisted_coefficient(p, b)
    if args.restrict:
        x = ifunc.restrict_to_y(p, x)
    if args.limit:
        lim = kappa_limit(x)
        if isinstance(lim, DoesNotExist):
            return f"DOES NOT EXIST (principal part: {render(lim.principal_part)})"
        x = lim
    return render(x)


def cmd_ifun(args) -> int:
    p = _load(args.file)
    if (args.restrict or args.limit) and not args.twisted:
        raise CliError(EXIT_INVALID, "--restrict and --limit apply to --twisted coefficients")
    if args.cls is not None:
        if len(args.cls) != p.k:
            raise CliError(EXIT_INVALID, f"class {args.cls} has {len(args.cls)} entries, torus rank is {p.k}")
        classes = [args.cls]
    else:
        classes = list(cones.enumerate_effective(p, args.max_degree))
    rows = []
    for b in classes:
        rows.append({"class": str(b), "value": _value(p, b, args)})
    if args.cls is not None:
        lines = [rows[0]["value"]]
    else:
        lines = [f"{r['class']}\t{r['value']}" for r in rows]
    _emit(args, lines, {"twisted": args.twisted, "restrict": args.restrict, "limit": args.limit, "coefficients": rows})
    return EXIT_PASS


# -- check -------------------------------------------------------------------


def _check_iconvex(p, args):
    v = analysis.is_i_convex(p, args.max_degree)
    doc = v.to_dict()
    if v.convex:
        lines = [f"I-convex: yes ({'unconditional' if v.unconditional else 'up to degree ' + str(args.max_degree)})"]
        return EXIT_PASS, lines, doc
    lines = [f"I-convex: no; witness {v.witness} pairs to {v.pairing} with E-weight {v.weight_index}"]
    return EXIT_FAIL, lines, doc


def _check_prop33(p, args):
    r = analysis.prop33_battery(p, args.max_degree)
    doc = r.to_dict()
    names = ("(1) I-convex", "(2) E nonnegative", "(3) h1 vanishing", "(4) limit exists")
    lines = [f"{n}: {v}" for n, v in zip(names, r.verdicts)]
    lines.append(f"agree: {r.agree} ({r.probes} classes probed)")
    lines += [f"disagreement: {d}" for d in r.disagreements]
    if r.note:
        lines.append(r.note)
    return (EXIT_PASS if r.agree else EXIT_FAIL), lines, doc


def _check_lemma53(p, args):
    r = analysis.lemma53_criterion(p, args.max_degree)
    doc = r.to_dict()
    lines = [f"criterion: {r.status}" + (" (conditional)" if r.conditional else "")]
    for e in r.entries:
        lines.append(
            f"{e.cls}\tlimit {e.limit}\tcondition 1 {e.condition1}\tage {format_rational(e.age)} + codim {e.codim}"
            f"\tcondition 2 {'pass' if e.condition2 else 'fail'}"
        )
    if r.note:
        lines.append(r.note)
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE, "hypothesis-fail": EXIT_DEGREE}
    return code[r.status], lines, doc


def _check_homogeneity(p, args):
    rows = []
    witness = None
    for b in cones.enumerate_effective(p, args.max_degree):
        values = {"quasimap": ifunc.quasimap_coefficient(p, b), "twisted": ifunc.twisted_coefficient(p, b)}
        lim = ifunc.restricted_twisted_limit(p, b)
        if isinstance(lim, SeriesElement):
            values["restricted limit"] = lim
        for kind, x in values.items():
            if isinstance(x, ifunc.Unsupported):
                continue
            ok = ifunc.homogeneity_check(p, x, b)
            rows.append({"class": str(b), "kind": kind, "homogeneous": ok})
            if not ok and witness is None:
                witness = {"class": str(b), "kind": kind, "value": render(x)}
    doc = {"homogeneous": witness is None, "checked": rows, "witness": witness}
    lines = [f"homogeneous: {witness is None} ({len(rows)} coefficients checked)"]
    return (EXIT_PASS if witness is None else EXIT_FAIL), lines, doc


def _check_mirror(p, args):
    mm = ifunc.mirror_map(p, args.max_degree)
    rows = []
    for b in mm.classes:
        mu, mu_tw = mm.mu[b], mm.mu_tw[b]
        rows.append(
            {
                "class": str(b),
                "mu": str(mu) if not isinstance(mu, SeriesElement) else render(mu),
                "mu_tw": str(mu_tw) if not isinstance(mu_tw, SeriesElement) else render(mu_tw),
                "equal": mm.agreement[b],
            }
        )
    doc = {"equal": mm.equal, "holes": [str(b) for b in mm.holes], "classes": rows}
    lines = [f"{r['class']}\tmu {r['mu']}\tmu_tw {r['mu_tw']}\tequal {r['equal']}" for r in rows]
    lines.append(f"mirror maps equal: {mm.equal}")
    code = {True: EXIT_PASS, False: EXIT_FAIL, None: EXIT_INCONCLUSIVE}[mm.equal]
    return code, lines, doc


_CHECKS = {
    "iconvex": _check_iconvex,
    "prop33": _check_prop33,
    "lemma53": _check_lemma53,
    "homogeneity": _check_homogeneity,
    "mirror": _check_mirror,
}


def cmd_check(args) -> int:
    p = _load(args.file)
    code, lines, doc = _CHECKS[args.which](p, args)
    _emit(args, lines, doc)
    if code == EXIT_FAIL and not args.json:
        _witness_line(doc)
    return code


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasilef", description="Quasimap I-functions of toric complete intersections.")
    sub = parser.add_subparsers(dest="command", required=True)

    eff = sub.add_parser("effective", help="list effective classes up to a degree")
    eff.add_argument("file")
    eff.add_argument("--max-degree", type=_rational, required=True)
    eff.add_argument("--json", action="store_true")
    eff.set_defaults(func=cmd_effective)

    ifn = sub.add_parser("ifun", help="render I-function coefficients")
    ifn.add_argument("file")
    which = ifn.add_mutually_exclusive_group(required=True)
    which.add_argument("--class", dest="cls", type=_class, help='a class such as "(-1/3,1)"')
    which.add_argument("--max-degree", type=_rational)
    ifn.add_argument("--twisted", action="store_true", help="equivariant twisted coefficient on the ambient space")
    ifn.add_argument("--restrict", action="store_true", help="restrict the twisted coefficient to Y")
    ifn.add_argument("--limit", action="store_true", help="take the kappa -> 0 limit")
    ifn.add_argument("--json", action="store_true")
    ifn.set_defaults(func=cmd_ifun)

    chk = sub.add_parser("check", help="run a decision procedure")
    chk.add_argument("file")
    chk.add_argument("which", choices=sorted(_CHECKS))
    chk.add_argument("--max-degree", type=_rational, required=True)
    chk.add_argument("--json", action="store_true")
    chk.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except NonPositiveDegree as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DEGREE
    except NotEffective as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_EFFECTIVE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
