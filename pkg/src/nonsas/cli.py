"""Command-line front end.

Exit codes: 0 all verdicts as expected, 1 an unexpected verdict, 2 some
verdict undetermined, 3 usage or configuration error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from nonsas import __version__
from nonsas import checker, dsl
from nonsas.checker import AXIOM_IDS, EXPECTED_PROFILES, CheckResult, Domain, Status
from nonsas.errors import GeometryError, InsufficientDomain, MalformedSpec
from nonsas.kernel import Line, Point, parse_rational
from nonsas.labeling import (
    BUILTIN_SCHEMES,
    SCHEME_SUMMARIES,
    LabelScheme,
    builtin_scheme,
    label_at,
    scheme_from_json,
    scheme_to_dict,
)
from nonsas.values import ExactPi, Precision, TriBool, format_value

EXIT_OK, EXIT_UNEXPECTED, EXIT_UNDETERMINED, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _load_scheme(spec: str) -> LabelScheme:
    if spec in BUILTIN_SCHEMES:
        return builtin_scheme(spec)
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"unknown scheme {spec!r}: not a built-in ({', '.join(sorted(BUILTIN_SCHEMES))}) "
                         f"and not a file")
    try:
        return scheme_from_json(path.read_text(encoding="utf-8"), name=path.stem)
    except MalformedSpec as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_domain(path: str | None, seed: int | None, budget: int | None) -> Domain:
    if path is None:
        d = checker.canonical_domain()
    else:
        try:
            d = checker.domain_from_json(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read domain {path}: {exc.strerror}") from None
        except MalformedSpec as exc:
            raise UsageError(f"{path}: {exc}") from None
    kw = {}
    if seed is not None:
        kw["seed"] = seed
    if budget is not None:
        kw["budget"] = budget
    try:
        return d.with_(**kw) if kw else d
    except MalformedSpec as exc:
        raise UsageError(str(exc)) from None


def _precision(bits: int | None) -> Precision:
    try:
        if bits is not None:
            return Precision(bits=bits, max_bits=max(bits, 1024))
        return Precision.from_env()
    except ValueError as exc:
        raise UsageError(f"bad precision: {exc}") from None


def _axiom_list(text: str | None) -> list[str] | None:
    if text is None:
        return None
    ids = [a.strip() for a in text.split(",") if a.strip()]
    unknown = [a for a in ids if a not in AXIOM_IDS]
    if unknown or not ids:
        raise UsageError(f"unknown axiom(s) {', '.join(unknown) or '(none given)'}; "
                         f"choose from {', '.join(AXIOM_IDS)}")
    return ids


def _point_text(raw) -> str:
    return f"({raw[0]}, {raw[1]})"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def build_report(s: LabelScheme, d: Domain, precision: Precision, results: list[CheckResult]) -> dict:
    statuses = {r.status for r in results}
    if Status.UNDETERMINED in statuses:
        overall = "undetermined"
    elif Status.VIOLATED in statuses:
        overall = "violations"
    else:
        overall = "ok"
    return {
        "version": __version__,
        "scheme_name": s.name,
        "seed": d.seed,
        "precision_bits": precision.bits,
        "checks": [r.to_dict() for r in sorted(results, key=lambda r: r.axiom_id)],
        "overall": overall,
    }


def expected_profile(s: LabelScheme) -> dict[str, Status]:
    """Built-ins carry their known verdict vector; anything else is expected to be Euclidean."""
    return EXPECTED_PROFILES.get(s.name, EXPECTED_PROFILES["identity"])


def verdict_exit(results: list[CheckResult], expected: dict[str, Status]) -> tuple[int, list[str]]:
    mismatches = [r.axiom_id for r in results
                  if r.status is not Status.UNDETERMINED and r.status is not expected[r.axiom_id]]
    if mismatches:
        return EXIT_UNEXPECTED, mismatches
    if any(r.status is Status.UNDETERMINED for r in results):
        return EXIT_UNDETERMINED, []
    return EXIT_OK, []


def _format_text_report(report: dict, expected: dict[str, Status], out) -> None:
    print(f"scheme {report['scheme_name']}  seed {report['seed']}  precision {report['precision_bits']} bits",
          file=out)
    width = max(len(c["axiom_id"]) for c in report["checks"])
    for c in report["checks"]:
        exp = expected[c["axiom_id"]].value
        flag = "" if c["status"] == exp else f"   (expected {exp})"
        print(f"  {c['axiom_id']:<{width}}  {c['status']:<12} {c['samples_run']:>6} samples{flag}", file=out)
        if c["status"] == "Violated":
            for k, v in c["witness"].items():
                print(f"      {k}: {json.dumps(v, ensure_ascii=False)}", file=out)
    print(f"overall: {report['overall']}", file=out)


def cmd_verify(args, out) -> int:
    s = _load_scheme(args.scheme)
    d = _load_domain(args.domain, args.seed, args.budget)
    precision = _precision(args.precision)
    ids = _axiom_list(args.axioms)
    try:
        results = checker.run_suite(s, d, ids, precision)
    except InsufficientDomain as exc:
        raise UsageError(f"domain too small: {exc}") from None
    report = build_report(s, d, precision, results)
    expected = expected_profile(s)
    code, mismatches = verdict_exit(results, expected)
    if args.format == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        _format_text_report(report, expected, out)
        if mismatches:
            print(f"unexpected verdicts: {', '.join(mismatches)}", file=out)
        else:
            print(f"matches the expected profile for {s.name if s.name in EXPECTED_PROFILES else 'a Euclidean scheme'}",
                  file=out)
    return code


# ---------------------------------------------------------------------------
# witness
# ---------------------------------------------------------------------------

def pp_failure(precision: Precision | None = None) -> CheckResult:
    s, d = builtin_scheme("counterexample"), checker.canonical_domain()
    return checker.check_pp(s, d, precision)


def sas_failure(precision: Precision | None = None) -> CheckResult:
    s, d = builtin_scheme("counterexample"), checker.canonical_domain()
    return checker.check_sas(s, d, precision)


def cmd_witness(args, out) -> int:
    precision = _precision(args.precision)
    s = builtin_scheme("counterexample")
    result = pp_failure(precision) if args.which == "pp-failure" else sas_failure(precision)
    if result.status is not Status.VIOLATED:
        print(f"no {args.which} witness found", file=out)
        return EXIT_UNEXPECTED
    confirmed = checker.replay(result, s, precision)
    w = result.witness
    if args.format == "json":
        out.write(json.dumps({"witness": args.which, "scheme_name": s.name, "replayed": confirmed, **w},
                             indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    elif args.which == "pp-failure":
        l, l2, t = (Line(*map(int, w[k])) for k in ("l", "l_prime", "t"))
        print("parallel postulate fails (counterexample scheme)", file=out)
        print(f"  ℓ : {l.equation()}", file=out)
        print(f"  ℓ′: {l2.equation()}", file=out)
        print(f"  t : {t.equation()}", file=out)
        print(f"  t meets ℓ at {_point_text(w['P'])} and ℓ′ at {_point_text(w['P_prime'])}", file=out)
        print(f"  interior angle at {_point_text(w['P'])}: class {w['label_P']}", file=out)
        print(f"  interior angle at {_point_text(w['P_prime'])}: class {w['label_P_prime']}", file=out)
        print(f"  sum: {w['sum']} < 1 π", file=out)
        meet = "never meet" if w["intersection"] is None else f"meet at {_point_text(w['intersection'])}, on the other side"
        print(f"  ℓ and ℓ′ {meet}", file=out)
        print(f"  replay: {'confirmed' if confirmed else 'FAILED'}", file=out)
    else:
        print("SAS fails (counterexample scheme)", file=out)
        print(f"  triangle ABC = {', '.join(map(_point_text, w['triangle']))}", file=out)
        print(f"  image A′B′C′ = {', '.join(map(_point_text, w['image']))}", file=out)
        sq = w["squared_sides"]
        print(f"  squared sides |AB|² = {sq['AB']}, |AC|² = {sq['AC']}, |BC|² = {sq['BC']}", file=out)
        print(f"  included angles at A and A′: {w['included_labels'][0]} and {w['included_labels'][1]}", file=out)
        v, v2 = w["second_vertex"]
        print(f"  angle at {_point_text(v)}: {w['second_labels'][0]}; at {_point_text(v2)}: {w['second_labels'][1]}",
              file=out)
        print(f"  replay: {'confirmed' if confirmed else 'FAILED'}", file=out)
    return EXIT_OK if confirmed else EXIT_UNEXPECTED


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _read_program(spec: str) -> tuple[str, str]:
    path = Path(spec)
    if path.is_file():
        return str(path), path.read_text(encoding="utf-8")
    if spec in dsl.CORPUS or f"{spec}.axm" in dsl.CORPUS:
        name = spec if spec.endswith(".axm") else f"{spec}.axm"
        return name, dsl.corpus_source(name)
    raise UsageError(f"no program {spec!r}: not a file and not a corpus name ({', '.join(dsl.CORPUS)})")


def cmd_eval(args, out) -> int:
    name, source = _read_program(args.program)
    try:
        program = dsl.load(source)
    except dsl.DslError as exc:
        raise UsageError(f"{name}: {exc}") from None
    s = _load_scheme(args.scheme)
    d = _load_domain(args.domain, args.seed, None)
    precision = _precision(args.precision)
    try:
        outcomes = dsl.evaluate(program, d, s, precision)
    except dsl.EmptySort as exc:
        raise UsageError(f"{name}: {exc}") from None
    verdicts = {k: v.verdict for k, v in outcomes.items()}
    if args.format == "json":
        doc = {
            "program": Path(name).name,
            "scheme_name": s.name,
            "domain": {"points": len(d.points), "lines": len(d.lines)},
            "axioms": [{"name": k, "verdict": v.verdict.name.capitalize(), "assignments": v.assignments,
                        "bindings": v.bindings} for k, v in outcomes.items()],
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        print(f"{Path(name).name} under {s.name} on {len(d.points)} points, {len(d.lines)} lines", file=out)
        for k, v in outcomes.items():
            print(f"  {k}: {v.verdict.name.capitalize()}  ({v.assignments} assignments)", file=out)
            for var, val in v.bindings.items():
                print(f"      {var} = {val}", file=out)
    if any(v is TriBool.FALSE for v in verdicts.values()):
        return EXIT_UNEXPECTED
    if any(v is TriBool.UNKNOWN for v in verdicts.values()):
        return EXIT_UNDETERMINED
    return EXIT_OK


# ---------------------------------------------------------------------------
# label and scheme
# ---------------------------------------------------------------------------

def cmd_label(args, out) -> int:
    s = _load_scheme(args.scheme)
    try:
        x, y = args.point.split(",")
        p = Point(parse_rational(x), parse_rational(y))
    except ValueError:
        raise UsageError(f"--point wants x,y with rational coordinates, got {args.point!r}") from None
    try:
        q = parse_rational(args.measure)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--measure wants a rational q, got {args.measure!r}") from None
    if not 0 < q < 1:
        raise UsageError(f"--measure q must satisfy 0 < q < 1 (an angle of qπ), got {q}")
    value = label_at(s, p, ExactPi(q), _precision(args.precision))
    print(format_value(value), file=out)
    return EXIT_OK


def cmd_scheme(args, out) -> int:
    if args.action == "list":
        width = max(map(len, BUILTIN_SCHEMES))
        for name in sorted(BUILTIN_SCHEMES):
            print(f"{name:<{width}}  {SCHEME_SUMMARIES[name]}", file=out)
        return EXIT_OK
    if args.name is None:
        raise UsageError("scheme describe needs a scheme name or file")
    s = _load_scheme(args.name)
    print(s.describe(), file=out)
    if s.name in SCHEME_SUMMARIES:
        print(SCHEME_SUMMARIES[s.name], file=out)
    print(json.dumps(scheme_to_dict(s), indent=2, ensure_ascii=False), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nonsas", description="Bounded model checking of plane axioms under angle relabelings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, scheme_default="counterexample"):
        sp.add_argument("--scheme", default=scheme_default, help="built-in name or JSON scheme file")
        sp.add_argument("--precision", type=_int, default=None, help="starting interval precision in bits")

    v = sub.add_parser("verify", help="run the axiom suite")
    common(v)
    v.add_argument("--domain", help="JSON domain file (default: the [0,6]^2 grid with y=0, y=1, y=x)")
    v.add_argument("--axioms", help=f"comma-separated subset of {','.join(AXIOM_IDS)}")
    v.add_argument("--seed", type=_int)
    v.add_argument("--budget", type=_int)
    v.add_argument("--format", choices=("text", "json"), default="text")

    w = sub.add_parser("witness", help="print a canonical failure witness")
    w.add_argument("which", choices=("pp-failure", "sas-failure"))
    w.add_argument("--precision", type=_int, default=None)
    w.add_argument("--format", choices=("text", "json"), default="text")

    e = sub.add_parser("eval", help="evaluate an axiom program")
    e.add_argument("--program", required=True, help=".axm file or corpus name")
    common(e)
    e.add_argument("--domain")
    e.add_argument("--seed", type=_int)
    e.add_argument("--format", choices=("text", "json"), default="text")

    lab = sub.add_parser("label", help="print the label of the angle qπ placed at a point")
    lab.add_argument("--point", required=True, help="x,y")
    lab.add_argument("--measure", required=True, help="q in (0, 1)")
    common(lab)

    sc = sub.add_parser("scheme", help="list or describe labeling schemes")
    sc.add_argument("action", choices=("list", "describe"))
    sc.add_argument("name", nargs="?")
    return p


COMMANDS = {"verify": cmd_verify, "witness": cmd_witness, "eval": cmd_eval, "label": cmd_label,
            "scheme": cmd_scheme}


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    buf = io.StringIO()
    try:
        args = build_parser().parse_args(argv)
        code = COMMANDS[args.command](args, buf)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except (MalformedSpec, GeometryError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(buf.getvalue())
    stdout.flush()
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
