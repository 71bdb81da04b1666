"""Command-line interface.

Exit codes: 0 success, 1 infeasible result, 2 usage or configuration error,
3 internal error. Results go to stdout (or ``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import traceback

from . import __version__
from .config import load_config
from .dse import Question, SweepRow, advise, compare_compositions, evaluate, pareto, sweep
from .errors import ConfigError, DomainError, StacklawError
from .report import ReportFormat, emit_report
from .scaling_laws import ScalingQuery, capacity_factor, capacity_for_bandwidth
from .stack_geometry import GrowthMode, growth_advice
from .thermal_stack import layer_temperatures, thermal_feasible

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

JOBS_ENV = "STACKLAW_JOBS"


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _default_jobs():
    raw = os.environ.get(JOBS_ENV)
    if not raw:
        return 1
    try:
        return _positive_int(raw)
    except argparse.ArgumentTypeError as exc:
        raise ConfigError(str(exc), path=JOBS_ENV) from None


def _global_options(suppress):
    # Subcommands re-declare the globals with SUPPRESS so that a flag given
    # before the subcommand is not reset by the subparser's default.
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=[f.value for f in ReportFormat],
                   default=argparse.SUPPRESS if suppress else "table", help="output format")
    p.add_argument("--out", default=default, help="write results to this file")
    p.add_argument("--jobs", type=_positive_int, default=default,
                   help=f"sweep worker processes (default: ${JOBS_ENV} or 1)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stacklaw",
        description="Analytical design-space exploration for 3D-stacked chip systems.",
        parents=[_global_options(False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    common = [_global_options(True)]

    p = sub.add_parser("evaluate", parents=common, help="evaluate the config's design point")
    p.add_argument("config")

    p = sub.add_parser("sweep", parents=common, help="evaluate the config's sweep")
    p.add_argument("config")

    p = sub.add_parser("pareto", parents=common, help="Pareto frontier of the sweep")
    p.add_argument("config")
    p.add_argument("--objectives", required=True,
                   help="comma list of metric:min|max, e.g. throughput:max,max_temperature:min")

    p = sub.add_parser("advise", parents=common, help="answer a design question")
    p.add_argument("config")
    p.add_argument("--question", required=True, choices=[q.value for q in Question])
    p.add_argument("--delta", type=float, help="footprint edge growth in mm (GrowthDirection)")
    p.add_argument("--paper-approx", action="store_true",
                   help="use the approximate growth test that drops n*delta^2")

    p = sub.add_parser("compare", parents=common,
                       help="functional layering versus homogeneous replication")
    p.add_argument("config")

    p = sub.add_parser("thermal-check", parents=common, help="check stack temperatures")
    p.add_argument("config")
    p.add_argument("--t-max", type=float, help="temperature limit in deg C")

    p = sub.add_parser("scaling", parents=common, help="cache needed to scale threads")
    p.add_argument("--k", type=float, required=True, help="thread multiplier")
    p.add_argument("--b", type=float, default=1.0, help="total bandwidth multiplier")
    p.add_argument("--alpha", type=float, default=0.5, help="miss-rate root exponent")

    p = sub.add_parser("geometry", parents=common, help="add a layer or grow the footprint?")
    p.add_argument("--x", type=float, required=True, help="layer edge, mm")
    p.add_argument("--n", type=int, required=True, help="current layer count")
    p.add_argument("--delta", type=float, required=True, help="edge growth, mm")
    p.add_argument("--exact", action="store_true", help="keep the n*delta^2 term")
    return parser


def _rows_single(point, result):
    return [SweepRow(0, {}, point, result)]


def cmd_evaluate(args):
    point, spec = load_config(args.config)
    result = evaluate(point, spec.constraints)
    return _rows_single(point, result), (EXIT_OK if result.feasible else EXIT_INFEASIBLE)


def cmd_sweep(args):
    _, spec = load_config(args.config)
    print(f"sweep: {spec.size} points over {', '.join(spec.parameters) or 'no parameters'}",
          file=sys.stderr)
    return sweep(spec, jobs=args.jobs), EXIT_OK


def cmd_pareto(args):
    _, spec = load_config(args.config)
    rows = sweep(spec, jobs=args.jobs)
    front = pareto(rows, args.objectives)
    print(f"pareto: {len(front)} of {len(rows)} points on the frontier", file=sys.stderr)
    return front, (EXIT_OK if front else EXIT_INFEASIBLE)


def cmd_advise(args):
    point, spec = load_config(args.config)
    mode = GrowthMode.PAPER_APPROX if args.paper_approx else GrowthMode.EXACT
    adv = advise(point, args.question, delta=args.delta, constraints=spec.constraints, mode=mode)
    return [{"question": adv.question.value, "value": adv.value, "summary": adv.summary}], EXIT_OK


def cmd_compare(args):
    point, spec = load_config(args.config)
    cmp = compare_compositions(point, spec.constraints)
    records = []
    for name, res in (("functional", cmp.functional), ("homogeneous", cmp.homogeneous)):
        records.append({"composition": name, "max_temperature": res.max_temperature,
                        "layer_max_temps": res.layer_max_temps,
                        "hotspot_index": res.hotspot_index,
                        "thermal_infeasible": res.thermal_infeasible})
    d = cmp.deltas
    records.append({"composition": "delta", "max_temperature": d["max_temperature"],
                    "layer_max_temps": d["layer_max_temps"], "hotspot_index": d["hotspot_index"],
                    "thermal_infeasible": None})
    return records, EXIT_OK


def cmd_thermal_check(args):
    point, spec = load_config(args.config)
    t_max = args.t_max if args.t_max is not None else spec.constraints.t_max
    if t_max is None:
        raise ConfigError("no temperature limit: pass --t-max or set constraints.t_max",
                          path="t_max")
    stack = point.thermal
    check = thermal_feasible(stack, t_max)
    temps = layer_temperatures(stack)
    records = []
    for i, layer in enumerate(stack.layers):
        hottest = float(temps[i].max())
        records.append({"layer": i, "power": layer.power, "max_temperature": hottest,
                        "min_temperature": float(temps[i].min()), "over_limit": hottest > t_max})
    if check.feasible:
        print(f"thermal check passed: max {check.worst_temp:g} C <= {t_max:g} C", file=sys.stderr)
        return records, EXIT_OK
    print(f"thermal check FAILED: layer {check.worst_layer} tile {check.worst_tile} "
          f"reaches {check.worst_temp:g} C > {t_max:g} C", file=sys.stderr)
    return records, EXIT_INFEASIBLE


def cmd_scaling(args):
    query = ScalingQuery(args.k, args.b, args.alpha)
    record = {
        "k": args.k, "b": args.b, "alpha": args.alpha,
        "capacity_factor": capacity_factor(query),
        "per_copy_capacity_factor": capacity_for_bandwidth(args.b / args.k, args.alpha),
    }
    return [record], EXIT_OK


def cmd_geometry(args):
    mode = GrowthMode.EXACT if args.exact else GrowthMode.PAPER_APPROX
    advice = growth_advice(args.x, args.n, args.delta, mode)
    record = {
        "x": args.x, "n": args.n, "delta": args.delta, "mode": mode.value,
        "advice": advice.value,
        "layer_gain": args.x * args.x,
        "footprint_gain": args.n * (2 * args.delta * args.x
                                    + (args.delta ** 2 if args.exact else 0.0)),
    }
    return [record], EXIT_OK


COMMANDS = {
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
    "pareto": cmd_pareto,
    "advise": cmd_advise,
    "compare": cmd_compare,
    "thermal-check": cmd_thermal_check,
    "scaling": cmd_scaling,
    "geometry": cmd_geometry,
}


def _fail(message):
    print(f"stacklaw: error: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.jobs is None:
            args.jobs = _default_jobs()
        results, code = COMMANDS[args.command](args)
        emit_report(results, args.format, args.out)
        return code
    except ConfigError as exc:
        _fail(f"{exc.kind} error: {exc}")
        return EXIT_USAGE
    except (DomainError, StacklawError) as exc:
        _fail(str(exc))
        return EXIT_USAGE
    except Exception:
        traceback.print_exc(file=sys.stderr)
        _fail("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
