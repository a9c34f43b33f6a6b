"""Command-line interface.

Subcommands::

    simulate    run one scenario, write the trace CSV (+ metrics CSV)
    compare     run all four controller kinds, write the metrics table
    compliance  open-loop step-response test, text report + optional JSON
    headroom    minimum headroom meeting a nadir target (bisection)
    sweep       metrics table over a range of one numeric parameter

Exit codes: 0 success, 1 validation/usage error, 2 runtime error,
3 compliance test failed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .compliance import (ComplianceThresholds, evaluate_compliance,
                         format_report, run_step_test)
from .csvio import metrics_rows, write_metrics_csv, write_trace_csv
from .engine import run_simulation
from .headroom import (HeadroomQuery, NonMonotoneError, UnattainableError,
                       min_headroom_for_nadir, sweep_param)
from .metrics import compare_controllers, compute_frequency_metrics
from .pv import CONTROLLER_KINDS
from .scenario import (Scenario, ScenarioError, parse_scenario,
                       parse_set_value, preset_scenario, set_param)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_NONCOMPLIANT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not 2
        raise _UsageError(f"{self.prog}: {message}")


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="named preset scenario")
    src.add_argument("--config", help="scenario JSON document")
    p.add_argument("--set", action="append", default=[], metavar="PATH=VAL",
                   help="override a numeric field, e.g. system.h_sys=3.0")
    p.add_argument("--controller", choices=CONTROLLER_KINDS,
                   help="override the controller kind")


def _load_scenario(args: argparse.Namespace) -> Scenario:
    if args.preset:
        scenario = preset_scenario(args.preset)
    else:
        scenario = parse_scenario(Path(args.config).read_text())
    for item in args.set:
        path, sep, raw = item.partition("=")
        if not sep:
            raise ScenarioError(f"--set expects PATH=VALUE, got {item!r}")
        scenario = set_param(scenario, path.strip(),
                             parse_set_value(raw))
    if args.controller:
        scenario = dataclasses.replace(
            scenario,
            controller=dataclasses.replace(scenario.controller,
                                           kind=args.controller))
    return scenario


def _cmd_simulate(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    trace = run_simulation(scenario)
    with open(args.out, "w", newline="") as sink:
        write_trace_csv(trace, sink)
    metrics_path = args.metrics_out or _derived_metrics_path(args.out)
    m = compute_frequency_metrics(trace, scenario.contingency.t_event,
                                  f0=scenario.system.f0)
    with open(metrics_path, "w", newline="") as sink:
        write_metrics_csv(
            [(scenario.name, scenario.controller.kind, m)], sink)
    print(f"wrote {args.out} and {metrics_path}")
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    table = compare_controllers(scenario)
    with open(args.out, "w", newline="") as sink:
        write_metrics_csv(metrics_rows(scenario.name, table), sink)
    for kind, m in table.items():
        print(f"{scenario.name:>12} {kind:>9}: nadir {m.nadir_hz:.4f} Hz "
              f"at {m.nadir_time_s:.2f} s, max |rocof| "
              f"{m.max_abs_rocof_hz_per_s:.4f} Hz/s, settling "
              f"{m.settling_freq_hz:.4f} Hz")
    return EXIT_OK


def _cmd_compliance(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    if scenario.controller.kind == "none":
        raise ScenarioError(
            "compliance needs a responsive controller; pass --controller "
            "droop|inertia|combined"
        )
    thresholds = ComplianceThresholds(
        step_magnitude=args.step_magnitude,
        max_reaction=args.max_reaction,
        max_rise=args.max_rise,
        max_settling=args.max_settling,
        max_overshoot=args.max_overshoot,
        settling_band=args.settling_band,
    )
    sim = dataclasses.replace(scenario.sim, t_end=args.t_end)
    response = run_step_test(scenario.controller, scenario.system.pv,
                             thresholds, sim=sim)
    report = evaluate_compliance(
        response, thresholds,
        config={"scenario": scenario.name,
                "controller": scenario.controller.kind,
                "thresholds": dataclasses.asdict(thresholds)})
    print(format_report(report))
    if args.out:
        with open(args.out, "w") as sink:
            json.dump(report.as_dict(), sink, indent=2, sort_keys=True)
            sink.write("\n")
        print(f"wrote {args.out}")
    return EXIT_OK if report.passed else EXIT_NONCOMPLIANT


def _cmd_headroom(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    controller = args.controller or scenario.controller.kind
    if controller == "none":
        raise ScenarioError(
            "headroom sizing needs a responsive controller; pass "
            "--controller droop|inertia|combined"
        )
    query = HeadroomQuery(scenario=scenario, controller=controller,
                          target_nadir_hz=args.target,
                          h_max=args.h_max, tolerance=args.tolerance)
    result = min_headroom_for_nadir(query)
    print(f"minimum headroom {result.headroom:.4f} "
          f"({result.n_runs} simulation runs) for nadir >= "
          f"{args.target:.3f} Hz on {scenario.name}/{controller}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    controller = args.controller or scenario.controller.kind
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        raise ScenarioError(
            f"--values expects comma-separated numbers, got "
            f"{args.values!r}") from None
    rows = sweep_param(scenario, controller, args.param, values)
    csv_rows = [(f"{scenario.name}[{args.param}={v:g}]", controller, m)
                for v, m in rows]
    with open(args.out, "w", newline="") as sink:
        write_metrics_csv(csv_rows, sink)
    for v, m in rows:
        print(f"{args.param}={v:g}: nadir {m.nadir_hz:.4f} Hz, "
              f"settling {m.settling_freq_hz:.4f} Hz")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="gridfreq",
                     description="Grid frequency event simulator with PV "
                                 "droop and synthetic-inertia control")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("simulate", help="run one scenario to CSV")
    _add_scenario_args(p)
    p.add_argument("--out", required=True, help="trace CSV path")
    p.add_argument("--metrics-out", help="metrics CSV path "
                                         "(default: <out>.metrics.csv)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="metrics for all controller kinds")
    _add_scenario_args(p)
    p.add_argument("--out", required=True, help="metrics CSV path")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("compliance", help="open-loop step-response test")
    _add_scenario_args(p)
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--t-end", type=float, default=20.0,
                   help="test horizon in seconds (default 20)")
    p.add_argument("--step-magnitude", type=float, default=0.002)
    p.add_argument("--max-reaction", type=float, default=0.5)
    p.add_argument("--max-rise", type=float, default=4.0)
    p.add_argument("--max-settling", type=float, default=10.0)
    p.add_argument("--max-overshoot", type=float, default=0.05)
    p.add_argument("--settling-band", type=float, default=0.025)
    p.set_defaults(func=_cmd_compliance)

    p = sub.add_parser("headroom", help="size headroom for a nadir target")
    _add_scenario_args(p)
    p.add_argument("--target", type=float, required=True,
                   help="nadir target in Hz, e.g. 59.5")
    p.add_argument("--h-max", type=float, default=0.5)
    p.add_argument("--tolerance", type=float, default=0.001)
    p.set_defaults(func=_cmd_headroom)

    p = sub.add_parser("sweep", help="metrics over one parameter range")
    _add_scenario_args(p)
    p.add_argument("--param", required=True,
                   help="dotted path, e.g. system.h_sys")
    p.add_argument("--values", required=True,
                   help="comma-separated values, e.g. 2.0,3.0,4.0")
    p.add_argument("--out", required=True, help="metrics CSV path")
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            return EXIT_VALIDATION
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (UnattainableError, NonMonotoneError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def _derived_metrics_path(out: str) -> str:
    path = Path(out)
    return str(path.with_suffix(path.suffix + ".metrics.csv")
               if path.suffix != ".csv"
               else path.with_name(path.stem + ".metrics.csv"))


if __name__ == "__main__":
    sys.exit(main())
