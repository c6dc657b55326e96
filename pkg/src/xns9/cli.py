"""Command-line front end: one subcommand per verification surface, plus a
single ``report`` that runs the whole chain end to end.

Exit status: 0 on success, 1 when any verification check fails, 2 for usage
errors.  JSON output has sorted keys, exact integers, and a version field;
text tables mirror the reference layout.  Runs are deterministic: the same
invocation always produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__, ecurve, heegner, param, pipeline, thue
from .covering import branching_figure
from .exactalg import INFINITY, factorize
from .report import CheckReport


def format_factored(n: int) -> str:
    """Trial-division factorization rendered like the reference tables."""
    if n == 0:
        return "0"
    sign = "-" if n < 0 else ""
    n = abs(n)
    if n == 1:
        return sign + "1"
    parts = []
    for p, e in sorted(factorize(n).items()):
        parts.append(f"{p}^{e}" if e > 1 else f"{p}")
    return sign + "*".join(parts)


def _print_report(report: CheckReport, out) -> None:
    print(f"== {report.title} ==", file=out)
    for check in report:
        status = "PASS" if check.passed else "FAIL"
        line = f"[{status}] {check.name}"
        if check.detail:
            line += f": {check.detail}"
        print(line, file=out)
        if not check.passed and check.witness is not None:
            print(f"       witness: {check.witness}", file=out)


def _json_dump(payload: dict, out) -> None:
    payload = {"version": __version__, **payload}
    print(json.dumps(payload, sort_keys=True, indent=2, default=str), file=out)


def _points_text(rows, out) -> None:
    header = ("integral solution (m,n)", "j-invariant", "discriminant d")
    body = []
    for p in rows:
        d = "none (non-CM)" if p.matched_discriminant is None else str(p.matched_discriminant)
        body.append((f"({p.m},{p.n})", format_factored(p.j), d))
    widths = [max(len(r[i]) for r in body + [header]) for i in range(3)]
    line = " | ".join(h.ljust(w) for h, w in zip(header, widths))
    print(line, file=out)
    print("-" * len(line), file=out)
    for row in body:
        print(" | ".join(c.ljust(w) for c, w in zip(row, widths)), file=out)


def _ap_text(records, out) -> None:
    good = [r for r in records if r.good]
    ps = [str(r.p) for r in good]
    aps = [str(r.a_p) for r in good]
    widths = [max(len(a), len(b)) for a, b in zip(ps, aps)]
    print("p   | " + "  ".join(s.rjust(w) for s, w in zip(ps, widths)), file=out)
    print("a_p | " + "  ".join(s.rjust(w) for s, w in zip(aps, widths)), file=out)
    bad = [r.p for r in records if not r.good]
    if bad:
        print(f"(bad reduction at {', '.join(map(str, bad))}, omitted)", file=out)


def _parse_rational(text: str):
    if text in ("inf", "infinity", "oo"):
        return INFINITY
    return Fraction(text)


def _parse_curve(text: str) -> ecurve.WeierstrassCurve:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 5:
        raise argparse.ArgumentTypeError("curve needs five integers a1,a2,a3,a4,a6")
    return ecurve.WeierstrassCurve(*parts)


def _parse_targets(text: str) -> set[int]:
    return {int(x) for x in text.split(",") if x.strip()}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xns9",
        description="Exact verification of the level-9 non-split Cartan curve "
                    "computations and the class number one problem.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one verification surface")
    verify.add_argument("surface", choices=("groups", "covering", "param"))
    verify.add_argument("--format", choices=("text", "json"), default="text")

    thue_p = sub.add_parser("thue", help="bounded cubic-form solutions as JSON lines")
    thue_p.add_argument("--targets", type=_parse_targets, default={1, -1, 3, -3})
    thue_p.add_argument("--bound", type=int, default=pipeline.DEFAULT_BOUND)

    points = sub.add_parser("points", help="the integral-point table")
    points.add_argument("--bound", type=int, default=pipeline.DEFAULT_BOUND)
    points.add_argument("--digits", type=int, default=pipeline.DEFAULT_DIGITS)
    points.add_argument("--format", choices=("text", "json"), default="text")

    ap = sub.add_parser("ap", help="trace table of an elliptic curve")
    ap.add_argument("--pmax", type=int, default=pipeline.DEFAULT_PMAX)
    ap.add_argument("--curve", type=_parse_curve, default=ecurve.EXCEPTIONAL_CURVE)
    ap.add_argument("--format", choices=("text", "json"), default="text")

    classnum = sub.add_parser("classnum", help="class number of a negative discriminant")
    classnum.add_argument("d", type=int)

    evalt = sub.add_parser("eval-t", help="evaluate t and j exactly at rational y")
    evalt.add_argument("--y", type=_parse_rational, required=True)

    report = sub.add_parser("report", help="run every verification end to end")
    report.add_argument("--format", choices=("text", "json"), default="text")
    report.add_argument("--bound", type=int, default=pipeline.DEFAULT_BOUND)
    report.add_argument("--digits", type=int, default=pipeline.DEFAULT_DIGITS)
    report.add_argument("--pmax", type=int, default=pipeline.DEFAULT_PMAX)
    return parser


def _cmd_verify(args, out) -> int:
    builders = {
        "groups": pipeline.group_checks,
        "covering": pipeline.covering_checks,
        "param": pipeline.param_checks,
    }
    report = builders[args.surface]()
    if args.format == "json":
        payload = {"report": report.as_dict()}
        if args.surface == "covering":
            payload["figure"] = branching_figure()
        _json_dump(payload, out)
    else:
        _print_report(report, out)
    return 0 if report.passed else 1


def _cmd_thue(args, out) -> int:
    solutions = thue.solve_bounded(thue.DENOMINATOR_FORM, args.targets, args.bound)
    for s in solutions:
        print(json.dumps({"m": s.m, "n": s.n, "value": s.value}, sort_keys=True), file=out)
    return 0


def _cmd_points(args, out) -> int:
    result = pipeline.points_checks(args.bound, args.digits)
    if args.format == "json":
        _json_dump({"report": result.report.as_dict(),
                    "rows": [p.as_dict() for p in result.rows]}, out)
    else:
        _points_text(result.rows, out)
        _print_report(result.report, out)
    return 0 if result.report.passed else 1


def _cmd_ap(args, out) -> int:
    if args.curve == ecurve.EXCEPTIONAL_CURVE:
        result = pipeline.trace_checks(args.pmax)
        records, report = result.records, result.report
    else:
        records = tuple(ecurve.ap_table(args.curve, args.pmax))
        report = None
    if args.format == "json":
        payload = {"records": [r.as_dict() for r in records]}
        if report is not None:
            payload["report"] = report.as_dict()
        _json_dump(payload, out)
    else:
        _ap_text(records, out)
        if report is not None:
            _print_report(report, out)
    return 0 if report is None or report.passed else 1


def _cmd_classnum(args, out) -> int:
    print(heegner.class_number(args.d), file=out)
    return 0


def _cmd_eval_t(args, out) -> int:
    tower = param.build_tower()
    t = tower.eval_t(args.y)
    j = tower.eval_j(args.y)
    print(f"t = {t}", file=out)
    print(f"j = {j}", file=out)
    return 0


def _cmd_report(args, out) -> int:
    bundle = pipeline.full_report(args.bound, args.digits, args.pmax)
    if args.format == "json":
        _json_dump({
            "points_table": [p.as_dict() for p in bundle.points_rows],
            "reports": {name: rep.as_dict() for name, rep in bundle.reports.items()},
            "traces": [r.as_dict() for r in bundle.trace_records],
        }, out)
    else:
        for rep in bundle.reports.values():
            _print_report(rep, out)
            print(file=out)
        _points_text(bundle.points_rows, out)
        print(file=out)
        _ap_text(bundle.trace_records, out)
        print(file=out)
        total = sum(len(rep) for rep in bundle.reports.values())
        failed = sum(len(rep.failures) for rep in bundle.reports.values())
        print(f"{total - failed}/{total} checks passed", file=out)
    return 0 if bundle.passed else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    handlers = {
        "verify": _cmd_verify,
        "thue": _cmd_thue,
        "points": _cmd_points,
        "ap": _cmd_ap,
        "classnum": _cmd_classnum,
        "eval-t": _cmd_eval_t,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args, out)
    except BrokenPipeError:
        # downstream consumer (e.g. head) closed the pipe; exit quietly
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"xns9 {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
