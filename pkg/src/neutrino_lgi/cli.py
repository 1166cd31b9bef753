"""Command-line interface for neutrino-lgi."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .config import AppConfig, load_config
from .correlator import BaselineSchedule, lgi_correlator
from .errors import EstimationError, NeutrinoLgiError, ParameterError
from .optimizer import (
    Evaluator,
    ScanGrid,
    SweepAxis,
    grid_scan,
    line_scan,
    locate_maximum,
    parameter_sweep,
    refine_spacing,
)
from .oracle import exact_lgi_correlator, max_expansion_deviation, transition_probabilities
from .oscillation import (
    OscillationParams,
    flavor_probabilities_from_e,
    kinematic_factors,
    validity_report,
)
from .paths import ensure_writable, sibling_path
from .reporting import reproduce, write_csv, write_json
from .simulation import simulate_lgi
from .utils.logging import configure_logging, get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_ACCEPTANCE = 3


class UsageError(ParameterError):
    """Raised for malformed command lines instead of exiting."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CLIContext:
    """Context captured from CLI arguments."""

    config: AppConfig
    params: OscillationParams
    evaluator: Evaluator
    out: Optional[Path]
    # sweep --curves 的曲线表，写在 --out 旁边
    curves_out: Optional[Path] = None

    @property
    def digits(self) -> int:
        return self.config.output.significant_digits

    @property
    def workers(self) -> int:
        return self.config.scan.workers


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="neutrino-lgi",
        description="Leggett-Garg correlators of three-flavour neutrino oscillations in matter.",
    )
    parser.add_argument("--config", type=str, default=None, help="Path to a JSON config file overriding defaults.")
    parser.add_argument("--no-cp", action="store_true", help="Set delta_CP to 0.")
    parser.add_argument("--theta13", type=float, default=None, metavar="DEG", help="Override theta13 (degrees).")
    parser.add_argument("--alpha", type=float, default=None, metavar="VAL", help="Override alpha = dm21^2 / dm31^2.")
    parser.add_argument("--vacuum", action="store_true", help="Set the matter potential to zero.")
    parser.add_argument(
        "--evaluator",
        choices=[item.value for item in Evaluator],
        default=None,
        help="Probability model for correlators and scans.",
    )
    parser.add_argument("--seed", type=int, default=None, help="Simulation seed.")
    parser.add_argument("--workers", type=int, default=None, help="Worker threads (0 = physical cores).")
    parser.add_argument("--out", type=str, default=None, metavar="PATH", help="Write output here instead of stdout.")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log progress at INFO level.")

    subparsers = parser.add_subparsers(dest="command", required=True)

    probability_parser = subparsers.add_parser("probability", help="Tabulate P_e, P_mu, P_tau from a nu_e source")
    probability_parser.add_argument("lengths", nargs="*", type=float, help="Baselines in km")
    probability_parser.add_argument(
        "--range", nargs=3, type=float, metavar=("START", "STOP", "STEPS"),
        help="Evenly spaced baselines (inclusive)",
    )
    probability_parser.add_argument(
        "--compare", action="store_true",
        help="Emit expansion and oracle rows and report their largest difference",
    )

    correlator_parser = subparsers.add_parser("correlator", help="Evaluate C12 + C23 + C34 - C14 at one schedule")
    correlator_parser.add_argument("--l1", type=float, default=None, help="First measurement length (km)")
    correlator_parser.add_argument("--dl", type=float, default=None, help="Spacing between measurements (km)")
    correlator_parser.add_argument("--format", choices=["json", "csv"], default="json")

    scan_parser = subparsers.add_parser("scan", help="Sample C over (L1, delta L), or over delta L at fixed L1")
    scan_parser.add_argument("--l1", type=float, default=None, help="Hold L1 fixed (km) and scan delta L only")
    scan_parser.add_argument("--l1-min", type=float, default=None)
    scan_parser.add_argument("--l1-max", type=float, default=None)
    scan_parser.add_argument("--l1-steps", type=int, default=None)
    scan_parser.add_argument("--dl-min", type=float, default=None)
    scan_parser.add_argument("--dl-max", type=float, default=None)
    scan_parser.add_argument("--dl-steps", type=int, default=None)
    scan_parser.add_argument(
        "--refine", action="store_true",
        help="Also refine the grid maximum and report it on stderr",
    )

    sweep_parser = subparsers.add_parser("sweep", help="Re-maximize C for each value of one parameter")
    sweep_parser.add_argument("--axis", required=True, choices=[item.value for item in SweepAxis])
    sweep_parser.add_argument(
        "--values", nargs="+", type=float, default=None,
        help="Values to sweep (degrees for angles); default from config",
    )
    sweep_parser.add_argument("--no-refine", action="store_true", help="Report grid maxima only")
    sweep_parser.add_argument("--fixed-l1", type=float, default=None, help="Also maximize over delta L at this L1 (km)")
    sweep_parser.add_argument(
        "--curves", action="store_true",
        help="Also write C versus delta L at the fixed L1 for every value",
    )

    simulate_parser = subparsers.add_parser("simulate", help="Monte Carlo of the negative-result measurement")
    simulate_parser.add_argument("--l1", type=float, default=None, help="First measurement length (km)")
    simulate_parser.add_argument("--dl", type=float, default=None, help="Spacing between measurements (km)")
    simulate_parser.add_argument("--runs", type=int, default=None, help="Runs per pair")
    simulate_parser.add_argument("--chunk-size", type=int, default=None)
    simulate_parser.add_argument("--format", choices=["json", "csv"], default="json")

    subparsers.add_parser("reproduce", help="Re-derive the published maxima and check them against tolerances")
    subparsers.add_parser("config", help="Print the normalized configuration")

    return parser


def _apply_overrides(config: AppConfig, args: argparse.Namespace) -> None:
    physics = config.physics
    if args.no_cp:
        physics.delta_cp_deg = 0.0
    if args.theta13 is not None:
        physics.theta13_deg = args.theta13
    if args.alpha is not None:
        physics.alpha_override = args.alpha
    if args.vacuum:
        physics.potential_ev = 0.0
    if args.evaluator is not None:
        config.scan.evaluator = args.evaluator
    if args.seed is not None:
        config.simulation.seed = args.seed
    if args.workers is not None:
        config.scan.workers = args.workers
    if args.verbose:
        config.logging.level = "INFO"
    config.validate()


def _build_context(args: argparse.Namespace) -> CLIContext:
    config = load_config(args.config)
    _apply_overrides(config, args)
    configure_logging(config.logging.level)
    out = ensure_writable(args.out)
    curves_out = None
    if out is not None and getattr(args, "curves", False):
        curves_out = ensure_writable(str(sibling_path(out, "curves")))
    params = config.physics.to_params()

    report = validity_report(params)
    if not report.ok:
        logger.warning(
            "Outside the small-parameter regime (alpha=%.4g, s13=%.4g, E=%.3g GeV); "
            "expansion values are not clamped",
            report.alpha,
            report.s13,
            report.energy,
        )
    return CLIContext(
        config=config,
        params=params,
        evaluator=Evaluator(config.scan.evaluator),
        out=out,
        curves_out=curves_out,
    )


def _probability_lengths(args: argparse.Namespace) -> List[float]:
    lengths = list(args.lengths)
    if args.range is not None:
        start, stop, steps = args.range
        if steps < 1 or steps != int(steps):
            raise ParameterError(f"--range STEPS must be a positive integer, got {steps}")
        lengths.extend(float(value) for value in np.linspace(start, stop, int(steps)))
    if not lengths:
        raise ParameterError("Give at least one length or --range")
    for length in lengths:
        if not math.isfinite(length) or length < 0.0:
            raise ParameterError(f"Lengths must be non-negative, got {length}")
    return lengths


def handle_probability_command(args: argparse.Namespace, context: CLIContext) -> int:
    lengths = _probability_lengths(args)
    evaluators = [Evaluator.EXPANSION, Evaluator.ORACLE] if args.compare else [context.evaluator]
    grid = np.asarray(lengths, dtype=float)

    columns = {}
    for evaluator in evaluators:
        if evaluator is Evaluator.ORACLE:
            rows = transition_probabilities(context.params, grid)[..., 0, :]
            columns[evaluator] = [tuple(float(p) for p in row) for row in rows]
        else:
            p_e, p_mu, p_tau = flavor_probabilities_from_e(context.params, grid)
            columns[evaluator] = list(zip(map(float, p_e), map(float, p_mu), map(float, p_tau)))

    table = []
    for i, length in enumerate(lengths):
        for evaluator in evaluators:
            table.append((length, *columns[evaluator][i], evaluator.value))
    write_csv(["L_km", "P_e", "P_mu", "P_tau", "evaluator"], table, context.out, context.digits)

    if args.compare:
        deviation = max_expansion_deviation(context.params, grid)
        print(f"max |expansion - exact| = {deviation:.3e}", file=sys.stderr)
    return EXIT_OK


def handle_correlator_command(args: argparse.Namespace, context: CLIContext) -> int:
    schedule_config = context.config.schedule
    schedule = BaselineSchedule(
        l1=args.l1 if args.l1 is not None else schedule_config.l1_km,
        spacing=args.dl if args.dl is not None else schedule_config.spacing_km,
    )
    if context.evaluator is Evaluator.ORACLE:
        result = exact_lgi_correlator(context.params, schedule)
    else:
        result = lgi_correlator(context.params, schedule)

    if args.format == "csv":
        write_csv(
            ["l1_km", "dl_km", "c12", "c23", "c34", "c14", "c_total", "evaluator"],
            [(schedule.l1, schedule.spacing, result.c12, result.c23, result.c34, result.c14,
              result.c_total, context.evaluator.value)],
            context.out,
            context.digits,
        )
    else:
        payload = result.to_dict()
        payload["violation"] = result.violation
        payload["evaluator"] = context.evaluator.value
        write_json(payload, context.out, context.digits)
    return EXIT_OK


def _scan_grid(args: argparse.Namespace, context: CLIContext) -> ScanGrid:
    scan = context.config.scan
    return ScanGrid(
        l1_min=args.l1_min if args.l1_min is not None else scan.l1_min_km,
        l1_max=args.l1_max if args.l1_max is not None else scan.l1_max_km,
        l1_steps=args.l1_steps if args.l1_steps is not None else scan.l1_steps,
        dl_min=args.dl_min if args.dl_min is not None else scan.dl_min_km,
        dl_max=args.dl_max if args.dl_max is not None else scan.dl_max_km,
        dl_steps=args.dl_steps if args.dl_steps is not None else scan.dl_steps,
    )


def handle_scan_command(args: argparse.Namespace, context: CLIContext) -> int:
    grid = _scan_grid(args, context)
    if args.l1 is not None:
        surface = line_scan(context.params, args.l1, grid.dl_min, grid.dl_max, grid.dl_steps, context.evaluator)
        grid = surface.grid
    else:
        surface = grid_scan(context.params, grid, context.evaluator, workers=context.workers)
    write_csv(["l1_km", "dl_km", "c_total"], surface.samples(), context.out, context.digits)

    l1_best, dl_best, c_best = surface.best()
    print(f"grid maximum: C={c_best:.8f} at (L1, dL)=({l1_best:.3f}, {dl_best:.3f}) km", file=sys.stderr)
    if args.refine:
        scan = context.config.scan
        if args.l1 is not None:
            maximum = refine_spacing(
                context.params, args.l1, dl_best, context.evaluator,
                half_width_km=max(grid.dl_step, scan.tolerance_km), tolerance_km=scan.tolerance_km,
            )
        else:
            maximum = locate_maximum(
                context.params, grid, context.evaluator, workers=context.workers,
                tolerance_km=scan.tolerance_km, max_iterations=scan.max_iterations,
            )
        print(
            f"refined maximum: C*={maximum.c_star:.10f} at (L1, dL)=({maximum.l1_star:.4f}, "
            f"{maximum.dl_star:.4f}) km, refined={maximum.refined}",
            file=sys.stderr,
        )
    return EXIT_OK


def handle_sweep_command(args: argparse.Namespace, context: CLIContext) -> int:
    axis = SweepAxis(args.axis)
    sweep = context.config.sweep
    scan = context.config.scan
    if args.values is not None:
        setattr(sweep, _sweep_field(axis), list(args.values))
        sweep.validate()
    values = sweep.values(axis)
    shown = sweep.display_values(axis)
    fixed_l1 = args.fixed_l1 if args.fixed_l1 is not None else sweep.fixed_l1_km
    if args.curves and fixed_l1 is None:
        raise ParameterError("--curves needs a fixed L1 (--fixed-l1 or sweep.fixed_l1_km)")
    grid = scan.to_grid()

    points = parameter_sweep(
        context.params,
        axis,
        values,
        grid,
        refine=sweep.refine and not args.no_refine,
        evaluator=context.evaluator,
        fixed_l1=fixed_l1,
        workers=context.workers,
        tolerance_km=scan.tolerance_km,
        max_iterations=scan.max_iterations,
    )
    header = ["axis", "value", "l1_star", "dl_star", "c_star", "refined"]
    if fixed_l1 is not None:
        header += ["fixed_l1_km", "fixed_l1_dl_star", "fixed_l1_c_star"]
    rows = []
    for display, point in zip(shown, points):
        row = [axis.value, display, point.maximum.l1_star, point.maximum.dl_star, point.maximum.c_star,
               point.maximum.refined]
        if point.fixed_l1 is not None:
            row += [point.fixed_l1.l1_star, point.fixed_l1.dl_star, point.fixed_l1.c_star]
        rows.append(row)
    write_csv(header, rows, context.out, context.digits)

    # 固定 L1 下每个取值的 C(delta L) 曲线
    if args.curves:
        assert fixed_l1 is not None
        curve_rows = []
        for display, value in zip(shown, values):
            swept = axis.apply(context.params, value)
            line = line_scan(swept, fixed_l1, grid.dl_min, grid.dl_max, grid.dl_steps, context.evaluator)
            curve_rows.extend((axis.value, display, l1, dl, c) for l1, dl, c in line.samples())
        write_csv(["axis", "value", "l1_km", "dl_km", "c_total"], curve_rows, context.curves_out, context.digits)
    return EXIT_OK


def _sweep_field(axis: SweepAxis) -> str:
    return {
        SweepAxis.THETA13: "theta13_deg",
        SweepAxis.ALPHA: "alpha",
        SweepAxis.DELTA_CP: "delta_cp_deg",
    }[axis]


def handle_simulate_command(args: argparse.Namespace, context: CLIContext) -> int:
    simulation = context.config.simulation
    schedule_config = context.config.schedule
    schedule = BaselineSchedule(
        l1=args.l1 if args.l1 is not None else schedule_config.l1_km,
        spacing=args.dl if args.dl is not None else schedule_config.spacing_km,
    )
    n_runs = args.runs if args.runs is not None else simulation.n_runs
    chunk_size = args.chunk_size if args.chunk_size is not None else simulation.chunk_size
    if n_runs < 2:
        raise ParameterError(f"--runs must be at least 2, got {n_runs}")
    if chunk_size < 1:
        raise ParameterError(f"--chunk-size must be positive, got {chunk_size}")

    estimate = simulate_lgi(
        context.params,
        schedule,
        n_runs,
        simulation.seed,
        workers=context.workers,
        chunk_size=chunk_size,
    )
    if args.format == "csv":
        rows = []
        for name, pair in estimate.pairs().items():
            rows.append((
                name,
                pair.c12_hat.value,
                pair.c12_hat.std_error,
                pair.p_pp.value,
                pair.p_pm.value,
                pair.p_mp.value,
                pair.p_mm.value,
                pair.on_e.retention,
                pair.on_not_e.retention,
            ))
        rows.append(("c_total", estimate.c_total.value, estimate.c_total.std_error, "", "", "", "", "", ""))
        write_csv(
            ["pair", "estimate", "std_error", "p_pp", "p_pm", "p_mp", "p_mm",
             "retention_trigger_on_e", "retention_trigger_on_not_e"],
            rows,
            context.out,
            context.digits,
        )
    else:
        write_json(estimate.to_dict(), context.out, context.digits)
    return EXIT_OK


def handle_reproduce_command(args: argparse.Namespace, context: CLIContext) -> int:
    scan = context.config.scan
    report = reproduce(
        context.params,
        scan.to_grid(),
        context.evaluator,
        tolerances=context.config.reproduce.to_tolerances(),
        workers=context.workers,
        tolerance_km=scan.tolerance_km,
        max_iterations=scan.max_iterations,
    )
    for line in report.lines():
        print(line)
    if context.out is not None:
        write_json(report.to_dict(), context.out, context.digits)
    return EXIT_OK if report.passed else EXIT_ACCEPTANCE


def handle_config_command(args: argparse.Namespace, context: CLIContext) -> int:
    params = context.params
    kinematics = kinematic_factors(params, 0.0)
    payload = {
        "source": context.config.to_dict(),
        "internal": {
            "dm21_sq": params.dm21_sq,
            "dm31_sq": params.dm31_sq,
            "theta12_rad": params.theta12,
            "theta13_rad": params.theta13,
            "theta23_rad": params.theta23,
            "delta_cp_rad": params.delta_cp,
            "energy_gev": params.energy,
            "potential_ev": params.potential,
            "alpha": params.alpha,
            "matter_parameter_a": kinematics.a_mat,
            "evaluator": context.evaluator.value,
        },
    }
    write_json(payload, context.out, context.digits)
    return EXIT_OK


_HANDLERS = {
    "probability": handle_probability_command,
    "correlator": handle_correlator_command,
    "scan": handle_scan_command,
    "sweep": handle_sweep_command,
    "simulate": handle_simulate_command,
    "reproduce": handle_reproduce_command,
    "config": handle_config_command,
}


def dispatch_command(args: argparse.Namespace) -> int:
    handler = _HANDLERS.get(args.command)
    if handler is None:
        raise ParameterError(f"Unsupported command: {args.command}")
    context = _build_context(args)
    return handler(args, context)


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        return dispatch_command(args)
    except (ParameterError, EstimationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NeutrinoLgiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
