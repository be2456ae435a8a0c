"""Experiment engine: link-budget sweeps and the 0 dB INR separation solver.

Sweeps evaluate one link budget per (alpha, variable value). The solver
answers the operator question "how far from the cell edge must a UE be so
that no direction and no larger separation sees INR above 0 dB"; because
the antenna pattern makes INR non-monotone in separation, it searches for
the last exceedance from the far end instead of the first crossing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lms_channel, lms_tables, propagation
from .link_budget import compose_link_budget, noise_power_dbm
from .antenna import normalized_gain_db
from .geometry import (
    MIN_ITU_ELEVATION_DEG,
    UePlacement,
    central_angle_from_slant_range,
    check_itu_validity,
    max_separation_for_min_elevation,
    solve_components,
    solve_geometry,
)
from .scenario import ScenarioConfig

SWEEP_VARIABLES = ("slant_range", "separation_distance")
CHANNEL_MODES = ("worst_case", "monte_carlo")

DEFAULT_PROBE_ALPHAS_DEG = tuple(range(0, 181, 5))


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start_km: float
    stop_km: float
    step_km: float
    fixed_km: float
    alphas_deg: tuple
    channel_mode: str = "worst_case"
    mc_seed: int = 1
    mc_runs: int = 25

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"variable must be one of {SWEEP_VARIABLES}")
        if self.channel_mode not in CHANNEL_MODES:
            raise ValueError(f"channel mode must be one of {CHANNEL_MODES}")
        if not self.start_km < self.stop_km:
            raise ValueError("sweep range must satisfy start < stop")
        if self.step_km <= 0:
            raise ValueError("sweep step must be positive")
        if not self.alphas_deg:
            raise ValueError("alpha list must not be empty")
        if self.channel_mode == "monte_carlo" and self.mc_runs < 2:
            raise ValueError("monte carlo mode needs at least two runs")

    def values(self) -> np.ndarray:
        grid = np.arange(self.start_km, self.stop_km, self.step_km)
        if not grid.size or grid[-1] < self.stop_km:
            grid = np.append(grid, self.stop_km)
        return grid


@dataclass(frozen=True)
class SweepRow:
    variable_km: float
    alpha_deg: float
    elevation_deg: float
    theta_deg: float
    eirp_dbw: float           # EIRP toward the UE, pattern included
    fspl_db: float
    gaseous_db: float
    scint_db: float
    channel_gain_db: float
    rx_dbm: float
    noise_dbm: float
    inr_db: float
    itu_valid: bool


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple


@dataclass(frozen=True)
class SeparationSolution:
    slant_range_km: float
    separation_km: float | None   # None when unresolvable within the bound
    binding_alpha_deg: float | None
    unresolvable: bool = False


def _row_for(
    scenario: ScenarioConfig,
    slant_km: float,
    separation_km: float,
    alpha_deg: float,
    variable_km: float,
    channel_gain_db: float,
) -> SweepRow:
    solution = solve_geometry(
        scenario.sat_geometry(slant_km),
        UePlacement(
            separation_km=separation_km,
            alpha_deg=alpha_deg,
            cell_radius_km=scenario.cell_radius_km,
        ),
        scenario.earth(),
    )
    pathloss = propagation.total_path_loss(solution, scenario.propagation())
    budget = compose_link_budget(
        solution,
        pathloss,
        channel_gain_db,
        scenario.radio(),
        scenario.pattern(),
        scenario.receiver(),
    )
    validity = check_itu_validity(
        solution, scenario.carrier_ghz * 1e9, scenario.prb_bandwidth_khz * 1e3
    )
    return SweepRow(
        variable_km=variable_km,
        alpha_deg=alpha_deg,
        elevation_deg=solution.elevation_deg,
        theta_deg=solution.theta_deg,
        eirp_dbw=budget.eirp_dbw + budget.normalized_gain_db,
        fspl_db=pathloss.fspl_db,
        gaseous_db=pathloss.gaseous_db,
        scint_db=pathloss.scintillation_db,
        channel_gain_db=channel_gain_db,
        rx_dbm=budget.rx_power_dbm,
        noise_dbm=budget.noise_dbm,
        inr_db=budget.inr_db,
        itu_valid=validity.valid,
    )


def _monte_carlo_gain_db(
    scenario: ScenarioConfig,
    elevation_deg: float,
    alpha_deg: float,
    value_km: float,
    spec: SweepSpec,
    table: lms_tables.LmsEnvironmentTable,
) -> float:
    """Mean channel gain from seeded fading runs for one sweep row.

    The parameter tables only carry a few discrete elevations, so the row
    elevation snaps to the nearest available angle for the environment.
    Per-row seeds derive from (master seed, alpha, value) so that any
    evaluation order produces identical results.
    """
    available = lms_tables.AVAILABLE_ELEVATIONS_DEG[scenario.environment]
    nearest = min(available, key=lambda e: abs(e - elevation_deg))
    good, bad = table.lookup(scenario.environment, nearest, scenario.band)
    doppler = lms_channel.DopplerConfig(
        satellite_altitude_km=scenario.altitude_km,
        elevation_deg=float(nearest),
        carrier_hz=scenario.carrier_ghz * 1e9,
        ue_speed_mps=scenario.ue_speed_mps,
        ue_azimuth_deg=scenario.ue_azimuth_deg,
    )
    fs = 8.0 * max(lms_channel.ue_doppler_spread_hz(doppler), 1.0)
    runs = []
    for r in range(spec.mc_runs):
        seed = np.random.SeedSequence(
            entropy=(spec.mc_seed, int(round(alpha_deg * 1e3)), int(round(value_km * 1e3)), r)
        )
        rng = np.random.default_rng(seed)
        runs.append(
            lms_channel.simulate_channel(
                good, bad, 20.0, doppler, fs, rng,
                duration_unit=table.duration_unit,
            )
        )
    mean, _ = lms_channel.mean_channel_gain_db(runs)
    return mean


def run_sweep(spec: SweepSpec, scenario: ScenarioConfig) -> SweepResult:
    """One row per (alpha, value), ordered by (alpha, value).

    Rows with ITU-invalid geometry are flagged, never dropped.
    """
    table = None
    if spec.channel_mode == "monte_carlo":
        table = (
            lms_tables.load_table(scenario.lms_table)
            if scenario.lms_table
            else lms_tables.synthetic_table()
        )
    rows = []
    for alpha in spec.alphas_deg:
        for value in spec.values():
            slant = value if spec.variable == "slant_range" else spec.fixed_km
            sep = value if spec.variable == "separation_distance" else spec.fixed_km
            try:
                if spec.channel_mode == "worst_case":
                    gain = scenario.channel_gain_db
                else:
                    probe = solve_geometry(
                        scenario.sat_geometry(slant),
                        UePlacement(sep, alpha, scenario.cell_radius_km),
                        scenario.earth(),
                    )
                    gain = _monte_carlo_gain_db(
                        scenario, probe.elevation_deg, alpha, value, spec, table
                    )
                rows.append(_row_for(scenario, slant, sep, alpha, float(value), gain))
            except ValueError as exc:
                raise ValueError(
                    f"sweep point (alpha={alpha}, value={value}) failed: {exc}"
                ) from exc
    return SweepResult(spec=spec, rows=tuple(rows))


def worst_case_inr_curve(
    slant_km: float, separations_km, alpha_deg: float, scenario: ScenarioConfig
) -> np.ndarray:
    """Vectorised worst-case INR over an array of separations.

    Uses the same numpy formulas as the scalar composition, so solver
    results and sweep rows agree bit for bit.
    """
    earth = scenario.earth()
    gamma_b = central_angle_from_slant_range(slant_km, earth, scenario.altitude_km)
    gamma_bu = (np.asarray(separations_km, dtype=float) + scenario.cell_radius_km) / earth.radius_km
    _, d_u, elevation, theta = solve_components(
        gamma_b, gamma_bu, alpha_deg, earth, scenario.altitude_km
    )
    prop = scenario.propagation()
    loss = propagation.fspl_db(d_u, prop.carrier_ghz) + propagation.scintillation_db(
        prop.carrier_ghz, prop.latitude_deg
    )
    if prop.gaseous_enabled:
        loss = loss + prop.gaseous_zenith_db / np.sin(np.radians(elevation))
    rx = (
        scenario.peak_eirp_per_prb_dbw
        + 30.0
        + normalized_gain_db(theta, scenario.pattern())
        - loss
        + scenario.channel_gain_db
        + scenario.rx_antenna_gain_dbi
    )
    return rx - noise_power_dbm(scenario.receiver())


def separation_validity_bound_km(slant_km: float, scenario: ScenarioConfig) -> float:
    """Largest separation with elevation >= 20 deg in every direction."""
    return max_separation_for_min_elevation(
        slant_km,
        MIN_ITU_ELEVATION_DEG,
        earth=scenario.earth(),
        altitude_km=scenario.altitude_km,
        cell_radius_km=scenario.cell_radius_km,
    )


def zero_db_separation(
    slant_km: float,
    scenario: ScenarioConfig,
    *,
    probe_alphas_deg=DEFAULT_PROBE_ALPHAS_DEG,
    coarse_step_km: float = 1.0,
    refine_km: float = 0.1,
) -> SeparationSolution:
    """Smallest separation beyond which INR stays at or below 0 dB.

    Worst-case channel mode; searches up to the model validity bound. A
    coarse grid locates the last exceedance over the alpha probe set, then
    bisection on the binding direction refines the crossing.
    """
    bound = separation_validity_bound_km(slant_km, scenario)
    grid = np.arange(0.0, bound, coarse_step_km)
    if not grid.size or grid[-1] < bound:
        grid = np.append(grid, bound)

    curves = np.vstack(
        [worst_case_inr_curve(slant_km, grid, a, scenario) for a in probe_alphas_deg]
    )
    worst = curves.max(axis=0)
    exceed = worst > 0.0
    if not exceed.any():
        return SeparationSolution(slant_km, 0.0, None)
    if exceed[-1]:
        alpha = float(probe_alphas_deg[int(curves[:, -1].argmax())])
        return SeparationSolution(slant_km, None, alpha, unresolvable=True)

    last = int(np.nonzero(exceed)[0][-1])
    binding = float(probe_alphas_deg[int(curves[:, last].argmax())])
    lo, hi = float(grid[last]), float(grid[last + 1])
    while hi - lo > refine_km:
        mid = 0.5 * (lo + hi)
        if float(worst_case_inr_curve(slant_km, mid, binding, scenario)) > 0.0:
            lo = mid
        else:
            hi = mid
    return SeparationSolution(slant_km, 0.5 * (lo + hi), binding)


def dominant_alpha_crossover(
    scenario: ScenarioConfig,
    *,
    probe_alphas_deg=DEFAULT_PROBE_ALPHAS_DEG,
    slant_start_km: float = 600.0,
    slant_stop_km: float = 1075.19,
    scan_step_km: float = 10.0,
) -> float | None:
    """Slant range where the binding direction flips from 180 to 0 degrees.

    Returns None when the binding direction never switches (for example
    when interference stays below the noise floor everywhere).
    """
    slants = np.arange(slant_start_km, slant_stop_km, scan_step_km)

    def side(slant):
        sol = zero_db_separation(
            slant, scenario, probe_alphas_deg=probe_alphas_deg
        )
        if sol.binding_alpha_deg is None:
            return None
        return "high" if sol.binding_alpha_deg >= 90.0 else "low"

    sides = [side(s) for s in slants]
    highs = [s for s, m in zip(slants, sides) if m == "high"]
    lows = [s for s, m in zip(slants, sides) if m == "low"]
    if not highs or not lows:
        return None
    last_high = max(highs)
    above = [s for s in lows if s > last_high]
    if not above:
        return None
    lo, hi = float(last_high), float(min(above))
    while hi - lo > 5.0:
        mid = 0.5 * (lo + hi)
        if side(mid) == "high":
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
