"""Command-line front end: ``revdickson {gen,check,classify,sweep,identities,planar}``.

Exit codes: 0 success, 1 sweep mismatch or identity failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from typing import Any, Sequence

from .dickson import Kind, construct
from .doclassify import RuleMatch, classify, decompose_two_powers, is_do
from .errors import DicksonError
from .fieldcore import find_irreducible, validate_odd_prime
from .polyring import SparsePoly, render
from .verify import SuiteSummary, SurveyRow, SweepReport, identity_suite, planarity_survey, sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# -- rendering ------------------------------------------------------------------------

def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render_report(report: Any, fmt: str = "text", timing: bool = True) -> str:
    """Render a sweep report, suite summary, survey rows, or a small result dict."""
    if isinstance(report, SweepReport):
        return _render_sweep(report, fmt, timing)
    if isinstance(report, SuiteSummary):
        return _render_suite(report, fmt)
    if isinstance(report, list) and all(isinstance(r, SurveyRow) for r in report):
        return _render_survey(report, fmt)
    raise TypeError(f"cannot render {type(report).__name__}")


def _render_sweep(r: SweepReport, fmt: str, timing: bool) -> str:
    if fmt == "json":
        return _json(r.to_dict(timing=timing))
    if fmt == "csv":
        return _csv(["n", "d", "rule_id", "polynomial"],
                    [(i.n, i.d, i.rule_id or "", i.polynomial) for i in r.do_instances])
    lines = [
        f"kind={r.kind} p={r.p} n=[{r.n_range[0]},{r.n_range[1]}] d=[{r.d_range[0]},{r.d_range[1]}]",
        f"checked: {r.total_checked}",
        f"mismatches: {len(r.mismatches)}",
        f"DO instances: {len(r.do_instances)}",
        f"errata diffs: {len(r.errata_diffs)}",
        f"overflow skipped: {len(r.overflow_skipped)}",
    ]
    if timing:
        lines.append(f"runtime: {r.runtime:.3f}s")
    for m in r.mismatches:
        lines.append(f"MISMATCH n={m.n} d={m.d} oracle={m.oracle} detector={m.detector}")
    for i in r.do_instances:
        lines.append(f"DO n={i.n} d={i.d} {i.rule_id}: {i.polynomial}")
    for e in r.errata_diffs:
        params = ",".join(f"{k}={v}" for k, v in e.params)
        lines.append(f"ERRATUM {e.item_id} [{params}] p={e.p} {e.term}: "
                     f"listed {e.printed_coeff}, computed {e.computed_coeff}")
    lines.append("PASS" if r.passed else "FAIL")
    return "\n".join(lines) + "\n"


def _render_suite(s: SuiteSummary, fmt: str) -> str:
    if fmt == "json":
        return _json(s.to_dict())
    if fmt == "csv":
        return _csv(["name", "passed", "checked", "counterexample", "note"],
                    [(c.name, c.passed, c.checked, c.counterexample or "", c.note or "")
                     for c in s.checks])
    lines = []
    for c in s.checks:
        extra = c.counterexample or c.note
        detail = f" ({extra})" if extra else ""
        lines.append(f"{c.name}: {c.checked} checked{detail} {'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


_SURVEY_COLUMNS = ("n", "d", "q", "is_do", "is_planar", "is_permutation")


def _render_survey(rows: list[SurveyRow], fmt: str) -> str:
    if fmt == "json":
        return _json({"rows": [asdict(r) for r in rows]})
    if fmt == "csv":
        return _csv(_SURVEY_COLUMNS, [[getattr(r, c) for c in _SURVEY_COLUMNS] for r in rows])
    lines = [f"rows: {len(rows)}"]
    lines += [" ".join(f"{c}={getattr(r, c)}" for c in _SURVEY_COLUMNS) for r in rows]
    return "\n".join(lines) + "\n"


def _render_poly(kind: Kind, n: int, d: int, p: int, f: SparsePoly, fmt: str) -> str:
    if fmt == "json":
        return _json({"kind": kind.value, "p": p, "n": n, "d": d, "polynomial": render(f),
                      "terms": [[t, c] for t, c in f]})
    if fmt == "csv":
        return _csv(["exponent", "coefficient"], list(f))
    return render(f) + "\n"


def _render_check(kind: Kind, n: int, d: int, p: int, f: SparsePoly, fmt: str) -> str:
    v = is_do(f)
    if fmt == "json":
        return _json({
            "kind": kind.value, "p": p, "n": n, "d": d, "polynomial": render(f),
            "is_do": v.is_do, "trivially_zero": v.trivially_zero,
            "failing_exponent": v.failing_exponent,
            "witnesses": [asdict(w) for w in v.witnesses],
        })
    if fmt == "csv":
        rows = []
        for t in f.exponents():
            w = decompose_two_powers(t, p)
            rows.append((t, w.i if w else "", w.j if w else "", w is not None))
        return _csv(["exponent", "i", "j", "decomposable"], rows)
    lines = [render(f)]
    if v.is_do:
        lines.append("DO" + (" (zero polynomial)" if v.trivially_zero else ""))
        lines += [f"  x^{w.exponent} = x^({p}^{w.i} + {p}^{w.j})" for w in v.witnesses]
    else:
        lines.append(f"not DO, failing exponent {v.failing_exponent}")
    return "\n".join(lines) + "\n"


def _render_match(m: RuleMatch, fmt: str) -> str:
    fields = {
        "kind": m.kind.value, "p": m.p, "n": m.n, "d": m.d, "matched": m.matched,
        "rule_id": m.rule_id, "n0": m.n0, "m": m.m, "d0": m.d0, "k_or_ell": m.k_or_ell,
        "pattern_exponent": m.pattern_exponent,
    }
    if fmt == "json":
        return _json(fields)
    if fmt == "csv":
        return _csv(list(fields), [["" if v is None else v for v in fields.values()]])
    head = f"matched, rule {m.rule_id}" if m.matched else "not matched"
    return (f"{head}\n  n = {m.n0}*{m.p}^{m.m}, d = {m.d0}*{m.p}^{m.k_or_ell}"
            + (f", pattern exponent {m.pattern_exponent}" if m.pattern_exponent is not None else "")
            + "\n")


# -- argument parsing -------------------------------------------------------------------

def _odd_prime(text: str) -> int:
    try:
        return validate_odd_prime(int(text))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_at_least(lo: int):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {v}")
        return v
    return conv


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("extension degrees must be >= 1")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--jobs", type=_int_at_least(1), default=1, metavar="N")
    common.add_argument("--no-timing", action="store_true",
                        help="omit runtimes so repeated runs are byte-identical")

    parser = argparse.ArgumentParser(
        prog="revdickson",
        description="Reversed Dickson polynomials and the Dembowski-Ostrom property.")
    sub = parser.add_subparsers(dest="command", required=True)

    def kind_arg(sp, required=True):
        sp.add_argument("--kind", choices=[k.value for k in Kind], required=required,
                        default=None if required else "first")

    for name, help_ in (("gen", "print the constant-free polynomial"),
                        ("check", "DO verdict with witnesses"),
                        ("classify", "closed-form classification verdict")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        kind_arg(sp)
        sp.add_argument("--p", type=_odd_prime, required=True)
        sp.add_argument("--n", type=_int_at_least(2 if name == "classify" else 0), required=True)
        sp.add_argument("--d", type=_int_at_least(1), default=1)

    sp = sub.add_parser("sweep", parents=[common], help="oracle vs detector over a grid")
    kind_arg(sp)
    sp.add_argument("--p", type=_odd_prime, required=True)
    sp.add_argument("--n-max", type=_int_at_least(2), required=True)
    sp.add_argument("--d-max", type=_int_at_least(2), required=True)

    sp = sub.add_parser("identities", parents=[common], help="algebraic identity suite")
    sp.add_argument("--p", type=_odd_prime, required=True)
    sp.add_argument("--n-max", type=_int_at_least(1), default=50)
    sp.add_argument("--e-list", type=_int_list, default=[2], metavar="E[,E...]",
                    help="extension degrees of the fields used for the scaling check")

    sp = sub.add_parser("planar", parents=[common], help="planarity survey of DO members")
    kind_arg(sp)
    sp.add_argument("--p", type=_odd_prime, required=True)
    sp.add_argument("--e-list", type=_int_list, default=[1], metavar="E[,E...]")
    sp.add_argument("--n-max", type=_int_at_least(2), required=True)
    sp.add_argument("--d-max", type=_int_at_least(2), required=True)
    return parser


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        text, code = _run(args)
    except DicksonError as exc:
        print(f"revdickson: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _run(args: argparse.Namespace) -> tuple[str, int]:
    fmt, timing = args.format, not args.no_timing
    cmd = args.command
    if cmd in ("gen", "check", "classify"):
        kind = Kind.parse(args.kind)
        if cmd == "classify":
            return _render_match(classify(kind, args.p, args.n, args.d), fmt), EXIT_OK
        f = construct(kind, args.n, args.d, args.p)
        if cmd == "gen":
            return _render_poly(kind, args.n, args.d, args.p, f, fmt), EXIT_OK
        return _render_check(kind, args.n, args.d, args.p, f, fmt), EXIT_OK
    if cmd == "sweep":
        report = sweep(args.kind, args.p, args.n_max, args.d_max, jobs=args.jobs)
        if report.mismatches:
            print(f"revdickson: {len(report.mismatches)} mismatches", file=sys.stderr)
        return render_report(report, fmt, timing), EXIT_OK if report.passed else EXIT_FAIL
    if cmd == "identities":
        fields = [find_irreducible(args.p, e) for e in args.e_list]
        summary = identity_suite(args.p, args.n_max, fields)
        return render_report(summary, fmt), EXIT_OK if summary.passed else EXIT_FAIL
    if cmd == "planar":
        rows = planarity_survey(args.kind, args.p, args.e_list, args.n_max, args.d_max)
        return render_report(rows, fmt), EXIT_OK
    raise AssertionError(cmd)


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
