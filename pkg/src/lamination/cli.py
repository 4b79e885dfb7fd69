"""Command-line interface.

Exit status: 0 on success, 1 when the input is well formed but fails a
mathematical requirement, 2 for unreadable or malformed input and bad usage.
Errors go to stderr as one JSON line ``{"error", "stage", "message"}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bratteli, golden, surface
from .errors import InvalidConfig, LaminationError, SchemaError
from .pipeline import RunConfig, build_lamination_report
from .schemas import load_delta, load_diagram

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("UsageError", None, message)
        sys.exit(EXIT_USAGE)


def _emit_error(kind: str, stage: str | None, message: str) -> None:
    line = json.dumps({"error": kind, "stage": stage, "message": message}, sort_keys=True)
    print(line, file=sys.stderr)


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _labels(text: str | None):
    if text is None:
        return None
    return tuple(x.strip() for x in text.split(","))


def cmd_validate(args) -> int:
    diagram = load_diagram(args.diagram)
    delta = load_delta(args.delta)
    out: dict = {}
    ok = True

    uni = bratteli.check_unimodular(diagram, args.depth)
    out["unimodular"] = {
        "passed": uni.passed,
        "failures": [{"level": lv.level, "det": lv.det} for lv in uni.failures],
    }
    ok &= uni.passed
    erg = bratteli.is_strictly_ergodic(diagram, args.depth, args.tol)
    out["ergodicity"] = {"verdict": erg.verdict.value, "reason": erg.reason}
    ok &= erg.strictly_ergodic
    try:
        inv = surface.surface_invariants(delta)
        out["delta"] = {"valid": True, "genus": inv.genus, "components": inv.components,
                        "intervals": inv.intervals}
        rank_ok = inv.intervals == diagram.rank
        out["rank"] = {"passed": rank_ok, "diagram": diagram.rank, "required": inv.intervals}
        ok &= rank_ok
    except LaminationError as exc:
        out["delta"] = {"valid": False, "message": str(exc)}
        out["rank"] = {"passed": False, "diagram": diagram.rank, "required": None}
        ok = False
    out["passed"] = bool(ok)
    _print_json(out)
    if not uni.passed:
        bad = uni.failures[0]
        _emit_error("NotUnimodular", "unimodular", f"level {bad.level} has determinant {bad.det}")
    elif not ok:
        _emit_error("ValidationFailed", "validate", "see report on stdout")
    return EXIT_OK if ok else EXIT_FAIL


def _config(args) -> RunConfig:
    return RunConfig(
        depth=args.depth,
        tol=args.tol,
        code_length=args.length,
        analysis_max_n=args.max_n,
        labels=_labels(args.labels),
        output_format=args.format,
    )


def cmd_report(args) -> int:
    config = _config(args)
    report = build_lamination_report(load_diagram(args.diagram), load_delta(args.delta), config)
    sys.stdout.write(report.to_json() if config.output_format == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_demo(args) -> int:
    sys.stdout.write(golden.demo_text(args.length))
    return EXIT_OK


def cmd_state(args) -> int:
    sv = bratteli.state_vector(load_diagram(args.diagram), args.depth, args.tol)
    _print_json({"lambda": list(sv.lam), "tolerance": sv.tolerance_used, "depth_used": sv.depth_used})
    return EXIT_OK


def cmd_permutation(args) -> int:
    delta = load_delta(args.delta)
    inv = surface.surface_invariants(delta)
    pi = surface.permutation_from_singularity_data(delta)
    _print_json(
        {
            "genus": inv.genus,
            "components": inv.components,
            "intervals": inv.intervals,
            "one_line": list(pi.images),
            "cycles": [list(c) for c in pi.cycles()],
        }
    )
    return EXIT_OK


def cmd_code(args) -> int:
    config = _config(args)
    report = build_lamination_report(load_diagram(args.diagram), load_delta(args.delta), config)
    print(report.code["text"] if report.code else "")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lamination", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def inputs(sp, delta=True, diagram=True):
        if diagram:
            sp.add_argument("diagram", help="diagram JSON file")
        if delta:
            sp.add_argument("delta", help="singularity data JSON file")

    def tol(sp, depth_default, depth_help):
        sp.add_argument("--depth", type=int, default=depth_default, help=depth_help)
        sp.add_argument("--tol", type=float, default=bratteli.DEFAULT_TOL,
                        help="convergence tolerance (default 1e-12)")

    sp = sub.add_parser("validate", help="check unimodularity, ergodicity, Delta and rank")
    inputs(sp)
    tol(sp, bratteli.DEFAULT_DEPTH, "diagram levels examined (default 256)")
    sp.set_defaults(func=cmd_validate)

    for name, func, help_ in (
        ("report", cmd_report, "run the whole pipeline and print the report"),
        ("code", cmd_code, "print only the code prefix"),
    ):
        sp = sub.add_parser(name, help=help_)
        inputs(sp)
        tol(sp, 64, "induction steps (default 64)")
        sp.add_argument("--length", type=int, default=1000, help="code prefix length (default 1000)")
        sp.add_argument("--max-n", type=int, default=10, help="largest factor length analysed")
        sp.add_argument("--labels", help="comma-separated letter names, one per interval")
        sp.add_argument("--format", choices=("json", "text"), default="json" if name == "report" else "text")
        sp.set_defaults(func=func)

    sp = sub.add_parser("demo", help="walk through the golden-mean example")
    sp.add_argument("--length", type=int, default=40, help="code symbols shown")
    sp.set_defaults(func=cmd_demo)

    sp = sub.add_parser("state", help="state vector of a diagram")
    inputs(sp, delta=False)
    tol(sp, bratteli.DEFAULT_DEPTH, "diagram levels examined (default 256)")
    sp.set_defaults(func=cmd_state)

    sp = sub.add_parser("permutation", help="permutation determined by Delta")
    inputs(sp, diagram=False)
    sp.set_defaults(func=cmd_permutation)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, InvalidConfig) as exc:
        _emit_error(type(exc).__name__, exc.stage, str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _emit_error("FileError", None, str(exc))
        return EXIT_USAGE
    except LaminationError as exc:
        _emit_error(type(exc).__name__, exc.stage, str(exc))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
