"""Command-line driver: build, verify, double, construct, analyze, export, mutate.

Documents go to stdout (or ``--out``); progress and check summaries go to
stderr.  Exit status: 0 all checks passed, 2 usage error, 3 a check failed.
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings
from fractions import Fraction

from . import analysis, canon, document, triplesys
from .errors import AlgebraError, DegenerateAlpha, PoleAtMinusOne, UnverifiedInput
from .exactcore import format_rational, identity, parse_rational
from .triplesys import Kind

FAMILIES = ("form-triple", "bfkts-basic", "example1", "example2", "example3")
EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 2, 3
MAX_SHOWN = 10


class UsageError(Exception):
    pass


def _gram(spec: str | None, n: int, eps: int):
    if spec is None or spec == "orthonormal":
        return identity(n)
    if spec == "symplectic":
        return triplesys.symplectic_gram(n)
    if os.path.exists(spec):
        import json

        with open(spec, encoding="utf-8") as fh:
            rows = json.load(fh)
        return [[parse_rational(str(v)) for v in row] for row in rows]
    raise UsageError(f"unknown gram {spec!r}: use orthonormal, symplectic, or a JSON file")


def descriptor(args) -> dict:
    """Validated family parameters, as recorded in document metadata."""
    fam = args.source
    desc: dict = {"family": fam}
    if fam == "form-triple":
        if args.n is None or args.eps is None or args.gram is None:
            raise UsageError("form-triple needs --n, --eps and --gram")
    if fam == "bfkts-basic" and args.n is None:
        raise UsageError("bfkts-basic needs --n")
    if fam in ("form-triple", "bfkts-basic"):
        desc["n"] = args.n
        desc["eps"] = args.eps if args.eps is not None else -1
        desc["gram"] = args.gram or "orthonormal"
    if fam == "example1":
        if args.sigma is None:
            raise UsageError("example1 needs --sigma")
        desc["sigma"] = format_rational(args.sigma)
    if fam == "example2" and args.xy_weight is not None:
        desc["xy_weight"] = format_rational(args.xy_weight)
    return desc


def build_system(desc: dict) -> triplesys.TripleSystem:
    fam = desc["family"]
    if fam in ("form-triple", "bfkts-basic"):
        n, eps = desc["n"], desc["eps"]
        gram = _gram(desc["gram"], n, eps)
        builder = triplesys.build_form_triple if fam == "form-triple" else triplesys.build_bfkts_basic
        return builder(n, gram, eps)
    if fam == "example1":
        return triplesys.build_example1(parse_rational(desc["sigma"]))
    if fam == "example2":
        return triplesys.build_example2(parse_rational(desc.get("xy_weight", "2/3")))
    return triplesys.build_example3()


def system_suite(ts: triplesys.TripleSystem, jobs: int) -> dict[str, triplesys.AxiomReport]:
    """Axiom suites implied by the system's kind."""
    if ts.kind is Kind.BFKTS:
        return {"bfkts": triplesys.check_bfkts(ts, ts.epsilon, jobs=jobs)}
    if ts.kind is Kind.LIE_TRIPLE:
        return {"lie_triple": triplesys.check_lie_triple(ts, -1, jobs=jobs)}
    name = "anti_lie_triple" if ts.epsilon == 1 else "lie_triple"
    return {name: triplesys.check_lie_triple(ts, ts.epsilon, jobs=jobs)}


def algebra_suite(g: canon.GradedAlgebra) -> dict[str, triplesys.AxiomReport]:
    jac = canon.check_super_jacobi(g) if g.is_super else canon.check_jacobi(g)
    return {
        "super_jacobi" if g.is_super else "jacobi": jac,
        "graded_antisymmetry": canon.check_graded_antisymmetry(g),
        "grading": canon.check_grading(g),
    }


def _check_meta(reports: dict) -> dict:
    out = {}
    for name, rep in reports.items():
        out[name] = {
            "passed": rep.passed,
            "identities": rep.checked,
            "failures": len(rep.failures),
            "first_failures": [
                {"axiom": f.axiom, "index": list(f.index), "residual": [format_rational(v) for v in f.residual]}
                for f in rep.failures[:MAX_SHOWN]
            ],
        }
    return out


def _report(reports: dict) -> bool:
    ok = True
    for name, rep in reports.items():
        print(f"{name}: {rep.summary(MAX_SHOWN)}", file=sys.stderr)
        ok = ok and rep.passed
    return ok


def _profile_meta(p: analysis.AlgebraProfile) -> dict:
    return {
        "dim_even": p.dim_even,
        "dim_odd": p.dim_odd,
        "killing_rank": p.killing_rank,
        "derived_dim": p.derived_dim,
        "center_dim": p.center_dim,
        "candidate_names": list(p.candidate_names),
        "consistent_with_simple": p.consistent_with_simple,
    }


def _emit(doc: document.Document, out: str | None) -> None:
    text = document.dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_source(args):
    """(meta, system, algebra-or-None) from a family name or a document path."""
    if args.source in FAMILIES:
        desc = descriptor(args)
        return {"descriptor": desc}, build_system(desc), None
    if os.path.exists(args.source):
        doc = document.load(args.source)
        return dict(doc.meta), doc.system, doc.algebra
    raise UsageError(f"{args.source!r} is neither a family ({', '.join(FAMILIES)}) nor a document")


def cmd_build(args) -> int:
    if args.source not in FAMILIES:
        raise UsageError(f"build needs a family: {', '.join(FAMILIES)}")
    desc = descriptor(args)
    if args.report_alpha:
        if desc["family"] != "example1":
            raise UsageError("--report-alpha applies to example1 only")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", DegenerateAlpha)
            try:
                alpha = triplesys.alpha_from_sigma(parse_rational(desc["sigma"]))
                desc["alpha"] = format_rational(alpha)
                print(f"alpha = {desc['alpha']}", file=sys.stderr)
            except PoleAtMinusOne:
                desc["alpha"] = None
                print("warning: alpha pole at sigma = -1", file=sys.stderr)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    ts = build_system(desc)
    reports = system_suite(ts, args.jobs)
    ok = _report(reports)
    _emit(document.Document({"command": "build", "descriptor": desc, "checks": _check_meta(reports)}, ts), args.out)
    return EXIT_OK if ok else EXIT_CHECK


def _doubled(meta, ts, args):
    reports = {}
    if not args.force:
        reports.update(system_suite(ts, args.jobs))
        if not all(r.passed for r in reports.values()):
            return None, reports
    d = triplesys.double(ts)
    reports.update({f"doubled_{k}": v for k, v in system_suite(d, args.jobs).items()})
    return d, reports


def cmd_double(args) -> int:
    meta, ts, _ = _load_source(args)
    d, reports = _doubled(meta, ts, args)
    ok = _report(reports)
    if d is None:
        return EXIT_CHECK
    doc_meta = {"command": "double", **meta, "checks": _check_meta(reports)}
    _emit(document.Document(doc_meta, d), args.out)
    return EXIT_OK if ok else EXIT_CHECK


def _construct(meta, ts, args):
    if args.doubled:
        ts, reports = _doubled(meta, ts, args)
        if ts is None:
            return None, None, reports
    else:
        if ts.kind is Kind.BFKTS:
            raise UsageError("a BFKTS is not a Lie or anti-Lie triple system; pass --doubled")
        reports = {} if args.force else system_suite(ts, args.jobs)
        if not all(r.passed for r in reports.values()):
            return ts, None, reports
    try:
        g = canon.canonical(ts, ts.epsilon == 1, force=True)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ts, None, reports
    reports.update(algebra_suite(g))
    return ts, g, reports


def cmd_construct(args) -> int:
    meta, ts, _ = _load_source(args)
    ts, g, reports = _construct(meta, ts, args)
    ok = _report(reports)
    if g is None:
        return EXIT_CHECK
    prof = analysis.profile(g)
    print(f"profile: {prof}", file=sys.stderr)
    doc_meta = {
        "command": "construct",
        **meta,
        "doubled": bool(args.doubled),
        "checks": _check_meta(reports),
        "profile": _profile_meta(prof),
    }
    _emit(document.Document(doc_meta, ts, g), args.out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_analyze(args) -> int:
    meta, ts, g = _load_source(args)
    reports = {}
    if g is None:
        ts, g, reports = _construct(meta, ts, args)
        if g is None:
            _report(reports)
            return EXIT_CHECK
    else:
        reports.update(algebra_suite(g))
    reports["invariance"] = analysis.invariance_check(g)
    ok = _report(reports)
    prof = analysis.profile(g)
    b = analysis.supertrace_form(g)
    print(f"profile: {prof}", file=sys.stderr)
    print(f"supertrace form supersymmetric: {analysis.is_supersymmetric(g, b)}", file=sys.stderr)
    doc_meta = {"command": "analyze", **meta, "checks": _check_meta(reports), "profile": _profile_meta(prof)}
    _emit(document.Document(doc_meta, ts, g), args.out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_verify(args) -> int:
    if not os.path.exists(args.source):
        raise UsageError("verify needs a document path")
    doc = document.load(args.source)
    reports = system_suite(doc.system, args.jobs)
    if doc.algebra is not None:
        reports.update(algebra_suite(doc.algebra))
    return EXIT_OK if _report(reports) else EXIT_CHECK


def cmd_export(args) -> int:
    if not os.path.exists(args.source):
        raise UsageError("export needs a document path")
    _emit(document.load(args.source), args.out)
    return EXIT_OK


def cmd_mutate(args) -> int:
    if not os.path.exists(args.source):
        raise UsageError("mutate needs a document path")
    doc = document.load(args.source)
    delta = args.delta
    if args.target == "bracket":
        if doc.algebra is None:
            raise UsageError("document has no bracket to mutate")
        if len(args.index) != 3 or any(not 0 <= i < doc.algebra.dim for i in args.index):
            raise UsageError("bracket index needs 3 in-range values m i j")
        doc.algebra = doc.algebra.with_entry(args.index, delta)
        reports = algebra_suite(doc.algebra)
    else:
        if len(args.index) != 4 or any(not 0 <= i < doc.system.dim for i in args.index):
            raise UsageError("tensor index needs 4 in-range values m j k l")
        doc.system = doc.system.with_entry(args.index, delta)
        reports = system_suite(doc.system, args.jobs)
        if doc.algebra is not None:
            # the stored bracket no longer reflects the tensor; rebuild it
            try:
                doc.algebra = canon.canonical(doc.system, doc.algebra.is_super, force=True)
                reports.update(algebra_suite(doc.algebra))
            except AlgebraError as exc:
                print(f"rebuild failed: {exc}", file=sys.stderr)
                doc.algebra = None
    ok = _report(reports)
    doc.meta = {
        **doc.meta,
        "mutation": {"target": args.target, "index": list(args.index), "delta": format_rational(delta)},
        "checks": _check_meta(reports),
    }
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_CHECK


def _sign(text: str) -> int:
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("sign must be 1 or -1")
    return v


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lietriple", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, source_help):
        p.add_argument("source", help=source_help)
        p.add_argument("--out", help="write the document here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for axiom checks")
        p.add_argument("--force", action="store_true", help="skip re-verification of inputs")

    def family_opts(p):
        p.add_argument("--n", type=int)
        p.add_argument("--eps", type=_sign)
        p.add_argument("--gram", help="orthonormal | symplectic | path to JSON rows")
        p.add_argument("--sigma", type=_rational)
        p.add_argument("--xy-weight", type=_rational, help="example2 weight of the <x|y>z term")

    fam_help = f"family ({', '.join(FAMILIES)}) or document path"
    p = sub.add_parser("build", help="build a triple system and run its axiom suite")
    common(p, "family: " + ", ".join(FAMILIES))
    family_opts(p)
    p.add_argument("--report-alpha", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("double", help="double a BFKTS into an anti-Lie triple system")
    common(p, fam_help)
    family_opts(p)
    p.set_defaults(func=cmd_double)

    for name, func, hlp in (
        ("construct", cmd_construct, "canonical construction of the (super)algebra"),
        ("analyze", cmd_analyze, "profile, supertrace form and invariance of an algebra"),
    ):
        p = sub.add_parser(name, help=hlp)
        common(p, fam_help)
        family_opts(p)
        p.add_argument("--doubled", action="store_true", help="double a BFKTS first")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="re-run every check recorded for a document")
    common(p, "document path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="re-serialize a document canonically")
    common(p, "document path")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("mutate", help="perturb one structure constant and re-check")
    common(p, "document path")
    p.add_argument("--index", type=int, nargs="+", required=True, help="m j k l (tensor) or m i j (bracket)")
    p.add_argument("--delta", type=_rational, default=Fraction(1))
    p.add_argument("--target", choices=("tensor", "bracket"), default="tensor")
    p.set_defaults(func=cmd_mutate)
    return parser


_VALUE_FLAGS = ("--sigma", "--delta", "--xy-weight")


def _glue_negative_values(argv):
    # argparse reads "-1/3" as an option flag; bind it to its flag explicitly
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = make_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except UnverifiedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
