"""
Command-Line Interface for leaksense
Simulate fault tests, fit scaling exponents, compare systems and run the
leak soft sensor over logged telemetry
"""

import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from ..analysis.homogeneity import SlopeTest, test_slope_homogeneity
from ..analysis.scaling_fit import (
    LogRatioPoint,
    ScalingFit,
    build_log_ratios,
    fit_scaling_exponent,
    residuals,
)
from ..data.telemetry_csv import (
    parse_telemetry_csv,
    write_ground_truth_csv,
    write_telemetry_csv,
)
from ..diagnosis.soft_sensor import LeakTrace, diagnose
from ..simulation.fault_test import export_fault_test
from ..simulation.leak_dynamics import control_exponent, simulate_analytic, simulate_numeric
from ..utils.helpers import ensure_directory, format_sig, write_frame_atomic
from .config import FitGranularity, RunConfig, load_config
from .constants import EXIT_DETECTED, EXIT_ERROR, EXIT_OK
from .errors import ConfigurationError, FittingDataError, LeakSenseError
from .logger import LeakSenseLogger, get_logger
from .telemetry import (
    ACTIVE_MODES,
    DailySample,
    OperationMode,
    TelemetryRecord,
    daily_aggregate,
    mode_temperature,
    record_samples,
)

logger = get_logger(__name__)

FITS_FILE = "fits.csv"
RESIDUALS_FILE = "residuals.csv"
SLOPE_TESTS_FILE = "slope_tests.csv"
LEAK_TRACE_FILE = "leak_trace.csv"
TELEMETRY_FILE = "telemetry.csv"
GROUND_TRUTH_FILE = "ground_truth.csv"


def _print_config(config: RunConfig) -> None:
    print("\n⚙️  Effective configuration:")
    for line in config.summary():
        print(f"   {line}")


def parse_exponent_flags(values: Optional[Sequence[str]]) -> Dict[OperationMode, float]:
    """
    Parse repeated MODE=C flags

    Raises:
        ConfigurationError: Malformed flag, idle mode or c = 0
    """
    exponents: Dict[OperationMode, float] = {}
    for item in values or []:
        mode_text, sep, value_text = item.partition("=")
        try:
            if not sep:
                raise ValueError("expected MODE=C")
            mode = OperationMode.parse(mode_text)
            value = float(value_text)
        except ValueError as e:
            raise ConfigurationError(f"invalid --exponent {item!r}: {e}")
        if mode == OperationMode.IDLE or value == 0:
            raise ConfigurationError(f"invalid --exponent {item!r}: need heating/cooling and c != 0")
        exponents[mode] = value
    return exponents


def _fitting_samples(records: Sequence[TelemetryRecord], config: RunConfig) -> List[DailySample]:
    if config.fit_granularity == FitGranularity.DAILY:
        return daily_aggregate(records)
    return record_samples(records)


def _reference_values(
    records: Sequence[TelemetryRecord],
    mode: OperationMode,
    m0: Optional[float],
    t0: Optional[float],
) -> Tuple[float, float]:
    """M0 and T0 for one mode: explicit values, else the first record's mass and mode temperature"""
    if m0 is None:
        m0 = records[0].mass if records else None
        if m0 is None:
            raise FittingDataError("first telemetry record has no mass; pass M0 explicitly")
    if t0 is None:
        t0 = next(mode_temperature(r) for r in records if r.mode == mode)
    return m0, t0


def _fit_modes(
    records: Sequence[TelemetryRecord],
    config: RunConfig,
    m0: Optional[float],
    t0: Optional[float],
    with_intercept: bool,
) -> Dict[OperationMode, Tuple[ScalingFit, List[LogRatioPoint], float, float]]:
    samples = _fitting_samples(records, config)
    results = {}
    for mode in ACTIVE_MODES:
        mode_samples = [s for s in samples if s.mode == mode]
        if not mode_samples:
            continue
        mode_m0, mode_t0 = _reference_values(records, mode, m0, t0)
        points = build_log_ratios(mode_samples, mode_m0, mode_t0)
        points = points[config.trim_leading : len(points) - config.trim_trailing]
        fit = fit_scaling_exponent(points, with_intercept=with_intercept)
        results[mode] = (fit, points, mode_m0, mode_t0)
    if not results:
        raise FittingDataError("telemetry contains no heating or cooling records")
    return results


def cmd_simulate(config: RunConfig, out_dir: Path, numeric: bool = False) -> Dict[str, Path]:
    """
    Simulate a fault test and write telemetry plus ground truth

    Returns:
        Paths of the written files keyed by "telemetry" and "ground_truth"
    """
    params = config.sim
    exponent = control_exponent(params.c_m, params.c_p)
    print("🧪 Simulating controlled refrigerant leak...")
    trace = simulate_numeric(params) if numeric else simulate_analytic(params)
    records = export_fault_test(trace, config.sim_mode, config.cadence_s, epoch=config.epoch)

    out_dir = ensure_directory(out_dir)
    telemetry_path = write_telemetry_csv(
        records, out_dir / TELEMETRY_FILE, unit=config.temperature_unit
    )
    truth_path = write_ground_truth_csv(trace, out_dir / GROUND_TRUTH_FILE)

    print(f"🔧 Integrator: {'RK4' if numeric else 'closed form'}")
    print(f"📈 Ground-truth scaling exponent c = {format_sig(exponent)}")
    print(f"💧 Final leak degree y = {format_sig(float(trace.leak_degree[-1]))}")
    print(f"📄 Telemetry: {telemetry_path} ({len(records)} records, {config.sim_mode.value})")
    print(f"📄 Ground truth: {truth_path} ({len(trace)} samples)")
    _print_config(config)
    return {"telemetry": telemetry_path, "ground_truth": truth_path}


def cmd_fit(
    telemetry_path: Path,
    config: RunConfig,
    out_dir: Path,
    m0: Optional[float] = None,
    t0: Optional[float] = None,
) -> Dict[OperationMode, ScalingFit]:
    """
    Fit the scaling exponent per operation mode

    Writes fits.csv (one row per mode) and residuals.csv (x, y and
    residual per fitted point).
    """
    print(f"🔍 Fitting scaling exponents from {telemetry_path}...")
    records = parse_telemetry_csv(telemetry_path, config.temperature_unit)
    results = _fit_modes(records, config, m0, t0, config.with_intercept)

    fit_rows = []
    residual_frames = []
    print("\n" + "=" * 60)
    print("📊 SCALING EXPONENTS")
    print("=" * 60)
    for mode, (fit, points, mode_m0, mode_t0) in results.items():
        print(f"\n🎯 {mode.value}")
        print(f"   c:            {format_sig(fit.c)} ± {format_sig(fit.se_c)}")
        print(f"   intercept:    {format_sig(fit.intercept)} ± {format_sig(fit.se_intercept)}")
        print(f"   n:            {fit.n}")
        print(f"   r²:           {format_sig(fit.r_squared)}")
        print(f"   M0, T0:       {format_sig(mode_m0)} kg, {format_sig(mode_t0)} K")
        fit_rows.append(
            {
                "mode": mode.value,
                "c": fit.c,
                "intercept": fit.intercept,
                "se_c": fit.se_c,
                "se_intercept": fit.se_intercept,
                "n": fit.n,
                "residual_variance": fit.residual_variance,
                "r_squared": fit.r_squared,
                "with_intercept": fit.with_intercept,
                "m0": mode_m0,
                "t0": mode_t0,
            }
        )
        residual_frames.append(
            pd.DataFrame(
                {
                    "mode": mode.value,
                    "x": [p.x for p in points],
                    "y": [p.y for p in points],
                    "residual": residuals(points, fit),
                }
            )
        )

    out_dir = ensure_directory(out_dir)
    fits_path = write_frame_atomic(pd.DataFrame(fit_rows), out_dir / FITS_FILE)
    residuals_path = write_frame_atomic(
        pd.concat(residual_frames, ignore_index=True), out_dir / RESIDUALS_FILE
    )
    print(f"\n📄 Fits: {fits_path}")
    print(f"📄 Residuals: {residuals_path}")
    _print_config(config)
    return {mode: result[0] for mode, result in results.items()}


def cmd_ttest(
    path_a: Path,
    path_b: Path,
    config: RunConfig,
    out_dir: Path,
    m0_a: Optional[float] = None,
    t0_a: Optional[float] = None,
    m0_b: Optional[float] = None,
    t0_b: Optional[float] = None,
) -> Dict[OperationMode, Dict[str, SlopeTest]]:
    """
    Test homogeneity of slopes between two systems per shared mode

    Both the with-intercept and the through-origin comparison are run.

    Raises:
        ConfigurationError: The files share no operation mode
    """
    print(f"⚖️  Testing homogeneity of slopes: {path_a} vs {path_b}")
    records_a = parse_telemetry_csv(path_a, config.temperature_unit)
    records_b = parse_telemetry_csv(path_b, config.temperature_unit)

    kinds = (("intercept", True), ("origin", False))
    fits = {
        kind: (
            _fit_modes(records_a, config, m0_a, t0_a, with_intercept),
            _fit_modes(records_b, config, m0_b, t0_b, with_intercept),
        )
        for kind, with_intercept in kinds
    }
    shared = [m for m in ACTIVE_MODES if m in fits["intercept"][0] and m in fits["intercept"][1]]
    if not shared:
        raise ConfigurationError("the two telemetry files share no operation mode")

    alpha = config.significance_level
    results: Dict[OperationMode, Dict[str, SlopeTest]] = {}
    rows = []
    print("\n" + "=" * 60)
    print(f"📊 SLOPE HOMOGENEITY (alpha = {format_sig(alpha)})")
    print("=" * 60)
    for mode in shared:
        results[mode] = {}
        print(f"\n🎯 {mode.value}")
        for kind, _ in kinds:
            fit_a, points_a, _, _ = fits[kind][0][mode]
            fit_b, points_b, _, _ = fits[kind][1][mode]
            test = test_slope_homogeneity(fit_a, points_a, fit_b, points_b)
            results[mode][kind] = test
            print(
                f"   [{kind}] c_A = {format_sig(fit_a.c)}, c_B = {format_sig(fit_b.c)}, "
                f"t = {format_sig(test.t_value)}, dof = {test.dof}, "
                f"p = {format_sig(test.p_value)} → {test.verdict(alpha)}"
            )
            rows.append(
                {
                    "mode": mode.value,
                    "fit": kind,
                    "c_a": fit_a.c,
                    "c_b": fit_b.c,
                    "t_value": test.t_value,
                    "dof": test.dof,
                    "p_value": test.p_value,
                    "rejected": test.rejected(alpha),
                }
            )

    out_dir = ensure_directory(out_dir)
    tests_path = write_frame_atomic(pd.DataFrame(rows), out_dir / SLOPE_TESTS_FILE)
    print(f"\n📄 Slope tests: {tests_path}")
    _print_config(config)
    return results


def cmd_diagnose(
    telemetry_path: Path,
    config: RunConfig,
    out_dir: Path,
    exponents: Optional[Dict[OperationMode, float]] = None,
) -> LeakTrace:
    """
    Run the soft sensor over daily-aggregated telemetry

    Exponents passed here override those from the configuration.
    """
    print(f"🩺 Diagnosing refrigerant leak from {telemetry_path}...")
    records = parse_telemetry_csv(telemetry_path, config.temperature_unit)
    samples = daily_aggregate(records)
    mode_exponents = {**config.mode_exponents, **(exponents or {})}
    trace = diagnose(
        samples,
        mode_exponents,
        window_days=config.window_days,
        threshold=config.threshold,
        initial_leak_degree=config.initial_leak_degree,
    )

    out_dir = ensure_directory(out_dir)
    trace_path = write_frame_atomic(trace.to_frame(), out_dir / LEAK_TRACE_FILE)

    print("\n" + "=" * 60)
    print("📊 LEAK DEGREE")
    print("=" * 60)
    print(f"\n📅 Days diagnosed: {len(trace)}")
    for mode, params in trace.mode_params.items():
        print(
            f"   {mode.value}: c = {format_sig(params.c)}, T0 = {format_sig(params.T0)} K, "
            f"y0 = {format_sig(params.y0)}"
        )
    if len(trace):
        print(f"💧 Latest leak degree (monotone): {format_sig(float(trace.y_mono[-1]))}")
    fired = trace.detection_date
    if fired is not None:
        print(f"🚨 Leak detected on {fired.isoformat()} (threshold {format_sig(config.threshold)})")
    else:
        print(f"✅ No leak detected (threshold {format_sig(config.threshold)})")
    print(f"📄 Leak trace: {trace_path}")
    _print_config(config)
    return trace


def show_config(config: RunConfig) -> None:
    """Show current configuration"""
    print("⚙️  leaksense Configuration")
    print("=" * 60)
    for line in config.summary():
        print(f"   {line}")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="dotenv-format config file")
    common.add_argument("--unit", choices=["kelvin", "celsius"], default=None)
    common.add_argument("--seed", type=int, default=None, help="simulation PRNG seed")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        description="leaksense - scaling-law soft sensor for refrigerant leaks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # Simulate command
    sim_parser = subparsers.add_parser("simulate", parents=[common], help="Simulate a fault test")
    sim_parser.add_argument("--numeric", action="store_true", help="integrate with RK4")

    # Fit command
    fit_parser = subparsers.add_parser("fit", parents=[common], help="Fit scaling exponents")
    fit_parser.add_argument("telemetry", type=Path)
    fit_parser.add_argument("--m0", type=float, default=None, help="initial mass (kg)")
    fit_parser.add_argument("--t0", type=float, default=None, help="initial temperature (K)")
    fit_parser.add_argument("--no-intercept", action="store_true")
    fit_parser.add_argument("--daily", action="store_true", help="fit daily aggregates")
    fit_parser.add_argument("--trim-leading", type=int, default=None)
    fit_parser.add_argument("--trim-trailing", type=int, default=None)

    # Slope test command
    ttest_parser = subparsers.add_parser(
        "ttest", parents=[common], help="Test homogeneity of slopes between two systems"
    )
    ttest_parser.add_argument("telemetry_a", type=Path)
    ttest_parser.add_argument("telemetry_b", type=Path)
    for suffix in ("a", "b"):
        ttest_parser.add_argument(f"--m0-{suffix}", type=float, default=None)
        ttest_parser.add_argument(f"--t0-{suffix}", type=float, default=None)
    ttest_parser.add_argument("--alpha", type=float, default=None)
    ttest_parser.add_argument("--daily", action="store_true", help="fit daily aggregates")

    # Diagnose command
    diag_parser = subparsers.add_parser(
        "diagnose", parents=[common], help="Estimate the leak degree over telemetry"
    )
    diag_parser.add_argument("telemetry", type=Path)
    diag_parser.add_argument(
        "--exponent", action="append", metavar="MODE=C", help="scaling exponent per mode"
    )
    diag_parser.add_argument("--window-days", type=int, default=None)
    diag_parser.add_argument("--threshold", type=float, default=None)
    diag_parser.add_argument("--y0", type=float, default=None, help="initial leak degree")

    # Config command
    subparsers.add_parser("config", parents=[common], help="Show configuration")
    return parser


def _overrides(args: argparse.Namespace) -> Dict:
    overrides = {
        "temperature_unit": args.unit,
        "sim": {"seed": args.seed} if args.seed is not None else None,
    }
    if getattr(args, "no_intercept", False):
        overrides["with_intercept"] = False
    if getattr(args, "daily", False):
        overrides["fit_granularity"] = FitGranularity.DAILY
    overrides["trim_leading"] = getattr(args, "trim_leading", None)
    overrides["trim_trailing"] = getattr(args, "trim_trailing", None)
    overrides["significance_level"] = getattr(args, "alpha", None)
    overrides["window_days"] = getattr(args, "window_days", None)
    overrides["threshold"] = getattr(args, "threshold", None)
    overrides["initial_leak_degree"] = getattr(args, "y0", None)
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    if argv is None:
        argv = sys.argv[1:]

    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_ERROR

    try:
        config = load_config(args.config, **_overrides(args))
        if args.command == "simulate":
            cmd_simulate(config, args.out, numeric=args.numeric)
        elif args.command == "fit":
            cmd_fit(args.telemetry, config, args.out, m0=args.m0, t0=args.t0)
        elif args.command == "ttest":
            cmd_ttest(
                args.telemetry_a,
                args.telemetry_b,
                config,
                args.out,
                m0_a=args.m0_a,
                t0_a=args.t0_a,
                m0_b=args.m0_b,
                t0_b=args.t0_b,
            )
        elif args.command == "diagnose":
            trace = cmd_diagnose(
                args.telemetry, config, args.out, exponents=parse_exponent_flags(args.exponent)
            )
            if trace.detection_date is not None:
                return EXIT_DETECTED
        elif args.command == "config":
            show_config(config)
        return EXIT_OK
    except LeakSenseError as e:
        LeakSenseLogger.log_error(logger, e, {"command": args.command, **e.details})
        print(f"\n❌ Error: {e}")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"Command failed: {e}", exc_info=True)
        print(f"\n❌ Error: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
