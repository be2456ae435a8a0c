"""Command-line front end.

Subcommands: geometry, sweep-slant, sweep-separation, min-separation,
channel-stats. Exit codes: 0 success, 1 input error, 2 valid run whose
geometry violates the channel-model applicability conditions.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import lms_channel, lms_tables, sweep as sweep_mod
from .geometry import UePlacement, check_itu_validity, solve_geometry
from .scenario import (
    ConfigError,
    ScenarioConfig,
    effective_config_text,
    load_scenario,
)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_ITU_INVALID = 2

SWEEP_CSV_HEADER = (
    "variable",
    "alpha_deg",
    "elevation_deg",
    "theta_deg",
    "eirp_dbw",
    "fspl_db",
    "gaseous_db",
    "scint_db",
    "channel_gain_db",
    "rx_dbm",
    "noise_dbm",
    "inr_db",
    "itu_valid",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit_(message)


class SystemExit_(Exception):
    """Argument errors map to exit code 1 instead of argparse's 2."""


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _write_csv(path: str, header, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None


def _load_config(args) -> ScenarioConfig:
    cfg = load_scenario(args.config) if args.config else ScenarioConfig()
    print(effective_config_text(cfg), end="")
    return cfg


def _add_common(sub):
    sub.add_argument("--config", help="scenario configuration file")
    sub.add_argument("--out", help="output CSV path")
    sub.add_argument("--svg", action="store_true", help="also render SVG figures")
    sub.add_argument("--seed", type=int, help="master seed for stochastic modes")
    sub.add_argument("--runs", type=int, help="fading realisations per point")


def _build_parser() -> _Parser:
    parser = _Parser(prog="ntncoex", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    geo = subs.add_parser("geometry", help="solve one scenario geometry")
    _add_common(geo)
    geo.add_argument("--slant", type=float, help="slant range to beam center (km)")
    geo.add_argument("--separation", type=float, help="separation distance (km)")
    geo.add_argument("--alpha", type=float, default=0.0, help="azimuth at beam center (deg)")

    for name, helptext in (
        ("sweep-slant", "sweep the slant range at fixed separation"),
        ("sweep-separation", "sweep the separation distance at fixed slant range"),
    ):
        sp = subs.add_parser(name, help=helptext)
        _add_common(sp)
        sp.add_argument("--min", type=float, help="sweep start (km)")
        sp.add_argument("--max", type=float, help="sweep stop (km)")
        sp.add_argument("--step", type=float, help="sweep step (km)")
        sp.add_argument("--fixed", type=float, help="value of the non-swept variable (km)")
        sp.add_argument("--alphas", help="comma-separated alpha list (deg)")
        sp.add_argument(
            "--monte-carlo", action="store_true",
            help="draw the channel gain from the fading model instead of the worst case",
        )

    ms = subs.add_parser("min-separation", help="0 dB INR separation vs slant range")
    _add_common(ms)
    ms.add_argument("--slant-min", type=float, default=600.0)
    ms.add_argument("--slant-max", type=float, default=1075.19)
    ms.add_argument("--slant-step", type=float, default=25.0)
    ms.add_argument("--slants", help="explicit comma-separated slant list (km)")

    cs = subs.add_parser("channel-stats", help="mean channel gain with 95% CI")
    _add_common(cs)
    cs.add_argument("--environment", default=None)
    cs.add_argument("--elevation", type=int, default=None)
    cs.add_argument("--band", default=None)
    cs.add_argument("--duration", type=float, default=20.0, help="seconds per run")
    cs.add_argument("--table", help="parameter table path (default: built-in synthetic)")
    return parser


def _cmd_geometry(args, cfg: ScenarioConfig) -> int:
    slant = args.slant if args.slant is not None else cfg.slant_range_km
    separation = args.separation if args.separation is not None else 0.0
    solution = solve_geometry(
        cfg.sat_geometry(slant),
        UePlacement(separation, args.alpha, cfg.cell_radius_km),
        cfg.earth(),
    )
    report = check_itu_validity(
        solution, cfg.carrier_ghz * 1e9, cfg.prb_bandwidth_khz * 1e3
    )
    print(f"slant_range_km = {_fmt(slant)}")
    print(f"separation_km = {_fmt(separation)}")
    print(f"alpha_deg = {_fmt(args.alpha)}")
    print(f"gamma_b_rad = {_fmt(solution.gamma_b_rad)}")
    print(f"gamma_bu_rad = {_fmt(solution.gamma_bu_rad)}")
    print(f"gamma_u_rad = {_fmt(solution.gamma_u_rad)}")
    print(f"d_u_km = {_fmt(solution.d_u_km)}")
    print(f"elevation_deg = {_fmt(solution.elevation_deg)}")
    print(f"theta_deg = {_fmt(solution.theta_deg)}")
    print(f"itu_valid = {_fmt(report.valid)}")
    for cond in report.violated_conditions:
        print(f"violated = {cond}")
    return EXIT_OK if report.valid else EXIT_ITU_INVALID


def _sweep_spec(args, cfg: ScenarioConfig, variable: str) -> sweep_mod.SweepSpec:
    if variable == "slant_range":
        start = args.min if args.min is not None else 600.0
        stop = args.max if args.max is not None else 1075.19
        step = args.step if args.step is not None else cfg.sweep_step_km
        fixed = args.fixed if args.fixed is not None else cfg.sweep_fixed_km
    else:
        start = args.min if args.min is not None else 0.0
        stop = args.max if args.max is not None else 550.0
        step = args.step if args.step is not None else 10.0
        fixed = args.fixed if args.fixed is not None else cfg.slant_range_km
    alphas = cfg.sweep_alphas_deg
    if args.alphas:
        alphas = tuple(float(v) for v in args.alphas.split(",") if v.strip())
    mode = "monte_carlo" if args.monte_carlo else "worst_case"
    return sweep_mod.SweepSpec(
        variable=variable,
        start_km=start,
        stop_km=stop,
        step_km=step,
        fixed_km=fixed,
        alphas_deg=alphas,
        channel_mode=mode,
        mc_seed=args.seed if args.seed is not None else cfg.monte_carlo_seed,
        mc_runs=args.runs if args.runs is not None else cfg.monte_carlo_runs,
    )


def _cmd_sweep(args, cfg: ScenarioConfig, variable: str) -> int:
    spec = _sweep_spec(args, cfg, variable)
    result = sweep_mod.run_sweep(spec, cfg)
    out = args.out or f"{variable}_sweep.csv"
    _write_csv(
        out,
        SWEEP_CSV_HEADER,
        (
            (
                r.variable_km, r.alpha_deg, r.elevation_deg, r.theta_deg,
                r.eirp_dbw, r.fspl_db, r.gaseous_db, r.scint_db,
                r.channel_gain_db, r.rx_dbm, r.noise_dbm, r.inr_db, r.itu_valid,
            )
            for r in result.rows
        ),
    )
    print(f"wrote {out} ({len(result.rows)} rows)")
    if args.svg:
        from .plots import render_sweep_figures

        for path in render_sweep_figures(result, out.rsplit(".", 1)[0]):
            print(f"wrote {path}")
    return EXIT_OK


def _cmd_min_separation(args, cfg: ScenarioConfig) -> int:
    if args.slants:
        slants = [float(v) for v in args.slants.split(",") if v.strip()]
    else:
        if args.slant_step <= 0 or args.slant_max <= args.slant_min:
            raise ConfigError("slant range must satisfy min < max with positive step")
        slants = list(np.arange(args.slant_min, args.slant_max, args.slant_step))
        slants.append(args.slant_max)
    solutions = [sweep_mod.zero_db_separation(s, cfg) for s in slants]
    out = args.out or "min_separation.csv"
    _write_csv(
        out,
        ("slant_km", "min_separation_km", "binding_alpha_deg"),
        (
            (
                s.slant_range_km,
                "unresolvable" if s.unresolvable else s.separation_km,
                "" if s.binding_alpha_deg is None else s.binding_alpha_deg,
            )
            for s in solutions
        ),
    )
    print(f"wrote {out} ({len(solutions)} rows)")
    if args.svg:
        from .plots import render_min_separation_figure

        path = render_min_separation_figure(solutions, out.rsplit(".", 1)[0] + ".svg")
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_channel_stats(args, cfg: ScenarioConfig) -> int:
    table_path = args.table or cfg.lms_table
    try:
        table = lms_tables.load_table(table_path) if table_path else lms_tables.synthetic_table()
    except (OSError, lms_tables.TableFormatError) as exc:
        raise ConfigError(str(exc)) from None
    environment = args.environment or cfg.environment
    band = args.band or cfg.band
    elevations = (
        [args.elevation]
        if args.elevation is not None
        else list(lms_tables.AVAILABLE_ELEVATIONS_DEG.get(environment, ()))
    )
    if not elevations:
        raise ConfigError(f"unknown environment {environment!r}")
    runs = args.runs if args.runs is not None else 50
    seed = args.seed if args.seed is not None else cfg.monte_carlo_seed
    out_rows = []
    for elevation in elevations:
        try:
            good, bad = table.lookup(environment, elevation, band)
        except KeyError as exc:
            raise ConfigError(str(exc)) from None
        doppler = lms_channel.DopplerConfig(
            satellite_altitude_km=cfg.altitude_km,
            elevation_deg=float(elevation),
            carrier_hz=cfg.carrier_ghz * 1e9,
            ue_speed_mps=cfg.ue_speed_mps,
            ue_azimuth_deg=cfg.ue_azimuth_deg,
        )
        fs = 8.0 * max(lms_channel.ue_doppler_spread_hz(doppler), 1.0)
        series = []
        for r in range(runs):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=(seed, elevation, r))
            )
            series.append(
                lms_channel.simulate_channel(
                    good, bad, args.duration, doppler, fs, rng,
                    duration_unit=table.duration_unit,
                )
            )
        mean, (lo, hi) = lms_channel.mean_channel_gain_db(series)
        print(
            f"{environment} @ {elevation} deg: mean gain {mean:.3f} dB, "
            f"95% CI [{lo:.3f}, {hi:.3f}] dB ({runs} runs)"
        )
        out_rows.append((environment, elevation, band, runs, mean, lo, hi))
    if args.out:
        _write_csv(
            args.out,
            ("environment", "elevation_deg", "band", "runs",
             "mean_gain_db", "ci95_low_db", "ci95_high_db"),
            out_rows,
        )
        print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_config(args)
        if args.command == "geometry":
            return _cmd_geometry(args, cfg)
        if args.command == "sweep-slant":
            return _cmd_sweep(args, cfg, "slant_range")
        if args.command == "sweep-separation":
            return _cmd_sweep(args, cfg, "separation_distance")
        if args.command == "min-separation":
            return _cmd_min_separation(args, cfg)
        if args.command == "channel-stats":
            return _cmd_channel_stats(args, cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except SystemExit_ as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
