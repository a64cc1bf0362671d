"""Batch command-line interface.

Subcommands: check, invert, sweep, counterexample, demo.  Problem files
are JSON (see serialization), signals travel as two-column CSV, stdout is
machine readable and diagnostics go to stderr.  Exit codes: 0 success /
admissible, 1 malformed input, 2 hypothesis or admissibility failure,
3 singular resolvent or transfer function.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import demos
from .errors import (
    ConstructionError,
    HypothesisError,
    MalformedSpecError,
    ResolvinvError,
    SeparationError,
    SingularOperatorError,
    SingularResolventError,
    SingularTransferError,
)
from .geometry import ImaginaryAxis, PositiveHalfLine, UnitCircle
from .operators import (
    DenseMatrixOperator,
    GridDerivativeOperator,
    apply_plan,
    invert_filter,
    solve_even_convolution,
    solve_exponential_volterra,
)
from .rational import filter_to_series, invert_to_plan
from .regularize import RegularizerConfig, convergence_sweep
from .serialization import (
    filter_spec_from_json,
    load_problem,
    matrix_from_json,
    read_signal,
    series_to_json,
    spectrum_from_json,
    terms_from_json,
    write_signal,
    write_sweep_csv,
)
from .series import caratheodory_zero_series, check_admissible, evaluate

log = logging.getLogger("resolvinv")

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INADMISSIBLE = 2
EXIT_SINGULAR = 3


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _problem_series_and_spectrum(doc):
    """Series and spectrum descriptor implied by a problem document."""
    kind = doc["kind"]
    if kind == "series":
        if "spectrum" not in doc:
            raise MalformedSpecError('series problems need a "spectrum"')
        return terms_from_json(doc["terms"]), spectrum_from_json(doc["spectrum"])
    if kind == "filter":
        series, _ = filter_to_series(filter_spec_from_json(doc))
        return series, UnitCircle()
    if kind == "integral":
        return terms_from_json(doc["kernel"]), ImaginaryAxis()
    if kind == "convolution":
        from .operators import _convolution_series
        terms = [(complex(t["b"][0], t["b"][1]),
                  complex(t["beta"][0], t["beta"][1])) for t in doc["terms"]]
        return _convolution_series(terms), PositiveHalfLine()
    if kind in ("matrix", "sweep"):
        A = DenseMatrixOperator(matrix_from_json(doc["matrix"]))
        return terms_from_json(doc["terms"]), A.spectrum()
    raise MalformedSpecError(f"unknown problem kind {kind!r}")


def _report_json(report) -> dict:
    return {
        "theorem_mode_ok": report.theorem_mode_ok,
        "hull_vertices": [_pair(v) for v in report.hull.vertices],
        "separation_ok": report.separation_ok,
        "separation_distance": report.separation_distance,
        "summability_value": report.summability_value,
        "per_term": [
            {"a": _pair(t.coefficient), "alpha": _pair(t.pole),
             "distance": t.spectrum_distance, "summand": t.summand}
            for t in report.per_term
        ],
    }


def cmd_check(args) -> int:
    doc = load_problem(args.problem)
    series, spectrum = _problem_series_and_spectrum(doc)
    margin = args.margin if args.margin is not None else doc.get("margin", 0.0)
    report = check_admissible(series, spectrum, margin)
    print(json.dumps(_report_json(report), sort_keys=True))
    admissible = (report.theorem_mode_ok and report.separation_ok
                  and report.summability_value < float("inf"))
    return EXIT_OK if admissible else EXIT_INADMISSIBLE


def _plan_summary(plan) -> str:
    poles = ", ".join(format(p, ".12g") for p in plan.remainder.poles)
    return (f"plan: gamma={plan.gamma:.12g} beta={plan.beta:.12g} "
            f"remainder poles: [{poles}]")


def cmd_invert(args) -> int:
    doc = load_problem(args.problem)
    if args.input is None or args.output is None:
        raise MalformedSpecError("invert needs --input and --output")
    y = read_signal(args.input)
    kind = doc["kind"]

    series, spectrum = _problem_series_and_spectrum(doc)
    margin = args.margin if args.margin is not None else doc.get("margin", 0.0)
    report = check_admissible(series, spectrum, margin)
    if not (report.theorem_mode_ok and report.separation_ok):
        print("problem is not admissible", file=sys.stderr)
        return EXIT_INADMISSIBLE

    plan = invert_to_plan(series, tol=args.tol)
    print(_plan_summary(plan), file=sys.stderr)

    if kind == "matrix":
        A = DenseMatrixOperator(matrix_from_json(doc["matrix"]))
        if y.size != A.dim:
            raise MalformedSpecError("input length does not match the matrix")
        x = apply_plan(plan, A, y)
    elif kind == "filter":
        x = invert_filter(filter_spec_from_json(doc), y)
    elif kind == "integral":
        g = doc["grid"]
        grid = GridDerivativeOperator(g["t0"], g["L"], g["n"])
        x, boundary = solve_exponential_volterra(series, y, grid)
        print(f"boundary residual |y(L)| = {boundary:.6g}", file=sys.stderr)
    elif kind == "convolution":
        terms = [(complex(t["b"][0], t["b"][1]),
                  complex(t["beta"][0], t["beta"][1])) for t in doc["terms"]]
        x = solve_even_convolution(terms, y, doc["period"])
    else:
        raise MalformedSpecError(f"cannot invert problem kind {kind!r}")

    write_signal(args.output, x)
    print(json.dumps({"kind": kind, "samples": int(np.asarray(x).size),
                      "output": str(args.output)}, sort_keys=True))
    return EXIT_OK


def cmd_sweep(args) -> int:
    doc = load_problem(args.problem)
    if doc["kind"] != "sweep":
        raise MalformedSpecError('sweep needs a "sweep" problem file')
    if args.input is None or args.output is None:
        raise MalformedSpecError("sweep needs --input and --output")
    series = terms_from_json(doc["terms"])
    A = DenseMatrixOperator(matrix_from_json(doc["matrix"]))
    x_true = read_signal(args.input)
    if x_true.size != A.dim:
        raise MalformedSpecError("input length does not match the matrix")
    config = RegularizerConfig(tuple(doc["alpha_grid"]))
    plan = invert_to_plan(series, tol=args.tol)
    report = convergence_sweep(series, plan, A, x_true, config)
    write_sweep_csv(args.output, report)
    print(json.dumps({"improved": report.improved,
                      "records": len(report.records),
                      "output": str(args.output)}, sort_keys=True))
    return EXIT_OK if report.improved else EXIT_INADMISSIBLE


def cmd_counterexample(args) -> int:
    try:
        poles = [complex(s) for s in args.poles]
        target = complex(args.target)
    except ValueError as exc:
        raise MalformedSpecError(f"bad complex literal: {exc}") from exc
    series = caratheodory_zero_series(poles, target)
    value = evaluate(series, target)
    out = series_to_json(series)
    out["f_at_target"] = _pair(value)
    out["abs_f_at_target"] = abs(value)
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def cmd_demo(args) -> int:
    written = demos.write_demo_files(Path(args.output_dir))
    print(json.dumps({"files": sorted(p.name for p in written),
                      "directory": str(args.output_dir)}, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resolvinv",
        description="Left inversion of resolvent-series operators")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--margin", type=float, default=None,
                       help="required hull/spectrum separation")
        p.add_argument("--tol", type=float, default=1e-6,
                       help="root clustering tolerance")
        p.add_argument("--n", type=int, default=None,
                       help="grid-size override")

    p = sub.add_parser("check", help="admissibility report for a problem")
    p.add_argument("problem")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invert", help="solve the first-kind problem")
    p.add_argument("problem")
    p.add_argument("--input", help="signal/vector to invert (CSV or JSON)")
    p.add_argument("--output", help="where to write the solution CSV")
    common(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("sweep", help="regularization convergence sweep")
    p.add_argument("problem")
    p.add_argument("--input", help="true solution vector")
    p.add_argument("--output", help="sweep report CSV")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("counterexample",
                       help="series vanishing inside its pole hull")
    p.add_argument("poles", nargs="+",
                   help="pole list as complex literals, e.g. 1+2j")
    p.add_argument("--target", required=True,
                   help="interior point where the series must vanish")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("demo", help="write demo problem files")
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("RESOLVENT_INV_LOG", "WARNING").upper()
    logging.basicConfig(stream=sys.stderr,
                        level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (HypothesisError, SeparationError, ConstructionError,
            SingularOperatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (SingularResolventError, SingularTransferError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except ResolvinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
