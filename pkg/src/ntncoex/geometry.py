"""Spherical-Earth geometry of a LEO downlink interfering with a ground UE.

The scenario has three ground points on a sphere of radius R: the
sub-satellite point S, the beam center B of the satellite cell (at slant
range d from the satellite), and the victim UE U. The UE is placed at a
surface (great-circle) separation distance from the cell edge, in a
direction that makes azimuth ``alpha`` at B with the direction toward S;
``alpha = 0`` puts the UE between B and S, i.e. toward the satellite.

All derived angles and distances needed by the link budget come out of
this module: the UE elevation angle, the boresight misalignment angle at
the satellite, and the satellite-UE distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_EARTH_RADIUS_KM

MIN_ITU_ELEVATION_DEG = 20.0
ITU_FREQ_RANGE_HZ = (1.5e9, 20e9)
MAX_ITU_BANDWIDTH_HZ = 5e6


@dataclass(frozen=True)
class EarthModel:
    """Spherical Earth."""

    radius_km: float = DEFAULT_EARTH_RADIUS_KM

    def __post_init__(self):
        if self.radius_km <= 0:
            raise ValueError("earth radius must be positive")


@dataclass(frozen=True)
class SatelliteGeometryConfig:
    """Satellite altitude and the slant range from satellite to beam center."""

    altitude_km: float = 600.0
    slant_range_km: float = 882.38

    def __post_init__(self):
        if self.altitude_km <= 0:
            raise ValueError("altitude must be positive")
        if self.slant_range_km < self.altitude_km:
            raise ValueError("slant range cannot be shorter than the altitude")


@dataclass(frozen=True)
class UePlacement:
    """Victim UE position relative to the cell.

    ``separation_km`` is the surface distance from the cell edge to the UE;
    ``-cell_radius_km`` puts the UE exactly at the beam center (admitted for
    diagnostics). ``alpha_deg`` is normalised into [0, 180]; the scenario is
    mirror-symmetric about the great circle through S and B.
    """

    separation_km: float
    alpha_deg: float
    cell_radius_km: float = 22.5

    def __post_init__(self):
        if self.cell_radius_km <= 0:
            raise ValueError("cell radius must be positive")
        if self.separation_km < -self.cell_radius_km:
            raise ValueError(
                "separation distance may not be below -cell_radius "
                f"({-self.cell_radius_km} km)"
            )
        wrapped = abs((self.alpha_deg + 180.0) % 360.0 - 180.0)
        object.__setattr__(self, "alpha_deg", wrapped)


@dataclass(frozen=True)
class GeometrySolution:
    """Angles and distances derived for one (slant range, separation, alpha)."""

    gamma_b_rad: float      # Earth-central angle S -> B
    gamma_bu_rad: float     # Earth-central angle B -> U
    gamma_u_rad: float      # Earth-central angle S -> U
    d_u_km: float           # satellite-UE distance
    elevation_deg: float    # elevation of the satellite seen from the UE
    theta_deg: float        # misalignment between boresight and UE at the satellite


@dataclass(frozen=True)
class ItuValidityReport:
    """Which applicability conditions of the two-state channel model hold."""

    valid: bool
    violated_conditions: tuple[str, ...] = field(default_factory=tuple)


def max_slant_range_km(earth: EarthModel, altitude_km: float) -> float:
    """Horizon-limited slant range (beam center at 0 deg elevation)."""
    r = earth.radius_km
    return math.sqrt((r + altitude_km) ** 2 - r * r)


def central_angle_from_slant_range(
    slant_range_km: float, earth: EarthModel, altitude_km: float
) -> float:
    """Invert the chord law of cosines: slant range -> Earth-central angle.

    Returns gamma satisfying d^2 = R^2 + (R+h)^2 - 2 R (R+h) cos(gamma).
    """
    d_max = max_slant_range_km(earth, altitude_km)
    if not altitude_km <= slant_range_km <= d_max:
        raise ValueError(
            f"slant range {slant_range_km} km outside the admissible "
            f"interval [{altitude_km}, {d_max:.2f}] km"
        )
    r = earth.radius_km
    rs = r + altitude_km
    cos_g = (r * r + rs * rs - slant_range_km**2) / (2.0 * r * rs)
    return float(np.arccos(np.clip(cos_g, -1.0, 1.0)))


def slant_range_from_central_angle(
    gamma_rad, earth: EarthModel, altitude_km: float
):
    """Forward chord law of cosines: Earth-central angle -> distance (km)."""
    r = earth.radius_km
    rs = r + altitude_km
    return np.sqrt(r * r + rs * rs - 2.0 * r * rs * np.cos(gamma_rad))


def solve_components(
    gamma_b_rad: float,
    gamma_bu_rad,
    alpha_deg: float,
    earth: EarthModel,
    altitude_km: float,
):
    """Core geometry evaluation; ``gamma_bu_rad`` may be a numpy array.

    Returns (gamma_u, d_u, elevation_deg, theta_deg) with the same shape
    as ``gamma_bu_rad``. Used both by :func:`solve_geometry` and by the
    vectorised sweep solvers so that single-point and array evaluation are
    bit-identical.
    """
    r = earth.radius_km
    rs = r + altitude_km
    gamma_bu = np.asarray(gamma_bu_rad, dtype=float)
    a = math.radians(alpha_deg)

    # Spherical law of cosines with the included angle at the beam center.
    cos_gu = np.cos(gamma_b_rad) * np.cos(gamma_bu) + np.sin(
        gamma_b_rad
    ) * np.sin(gamma_bu) * math.cos(a)
    gamma_u = np.arccos(np.clip(cos_gu, -1.0, 1.0))
    d_u = np.sqrt(r * r + rs * rs - 2.0 * r * rs * cos_gu)
    elevation = np.degrees(np.arcsin((rs * cos_gu - r) / d_u))

    # Misalignment angle from 3-D vectors: satellite above S on the z-axis,
    # B in the x-z plane, U reached from B along bearing alpha.
    sat = np.array([0.0, 0.0, rs])
    b_hat = np.array([math.sin(gamma_b_rad), 0.0, math.cos(gamma_b_rad)])
    toward_s = np.array([-math.cos(gamma_b_rad), 0.0, math.sin(gamma_b_rad)])
    bearing = math.cos(a) * toward_s + math.sin(a) * np.array([0.0, 1.0, 0.0])
    u_hat = (
        np.multiply.outer(np.cos(gamma_bu), b_hat)
        + np.multiply.outer(np.sin(gamma_bu), bearing)
    )
    v_beam = r * b_hat - sat
    v_ue = r * u_hat - sat
    cross = np.cross(np.broadcast_to(v_beam, v_ue.shape), v_ue)
    theta = np.degrees(
        np.arctan2(np.linalg.norm(cross, axis=-1), v_ue @ v_beam)
    )
    return gamma_u, d_u, elevation, theta


def solve_geometry(
    sat: SatelliteGeometryConfig, ue: UePlacement, earth: EarthModel = EarthModel()
) -> GeometrySolution:
    """Solve the full scenario geometry for one UE placement."""
    gamma_b = central_angle_from_slant_range(
        sat.slant_range_km, earth, sat.altitude_km
    )
    gamma_bu = (ue.separation_km + ue.cell_radius_km) / earth.radius_km
    gamma_u, d_u, elevation, theta = solve_components(
        gamma_b, gamma_bu, ue.alpha_deg, earth, sat.altitude_km
    )
    return GeometrySolution(
        gamma_b_rad=gamma_b,
        gamma_bu_rad=float(gamma_bu),
        gamma_u_rad=float(gamma_u),
        d_u_km=float(d_u),
        elevation_deg=float(elevation),
        theta_deg=float(theta),
    )


def check_itu_validity(
    solution: GeometrySolution, carrier_hz: float, bandwidth_hz: float
) -> ItuValidityReport:
    """Gate the two-state channel model applicability for one geometry."""
    violations = []
    if solution.elevation_deg < MIN_ITU_ELEVATION_DEG:
        violations.append("elevation_below_20deg")
    if not ITU_FREQ_RANGE_HZ[0] <= carrier_hz <= ITU_FREQ_RANGE_HZ[1]:
        violations.append("frequency_outside_1.5_20ghz")
    if bandwidth_hz > MAX_ITU_BANDWIDTH_HZ:
        violations.append("bandwidth_above_5mhz")
    return ItuValidityReport(valid=not violations, violated_conditions=tuple(violations))


def min_elevation_over_alpha(
    slant_range_km: float,
    separation_km,
    earth: EarthModel,
    altitude_km: float,
    cell_radius_km: float,
    alpha_probe_deg=None,
):
    """Worst-direction elevation for each separation (array-friendly)."""
    if alpha_probe_deg is None:
        alpha_probe_deg = range(0, 181, 5)
    gamma_b = central_angle_from_slant_range(slant_range_km, earth, altitude_km)
    gamma_bu = (np.asarray(separation_km, dtype=float) + cell_radius_km) / earth.radius_km
    worst = None
    for alpha in alpha_probe_deg:
        _, _, elev, _ = solve_components(gamma_b, gamma_bu, alpha, earth, altitude_km)
        worst = elev if worst is None else np.minimum(worst, elev)
    return worst


def max_separation_for_min_elevation(
    slant_range_km: float,
    min_elevation_deg: float,
    *,
    earth: EarthModel = EarthModel(),
    altitude_km: float = 600.0,
    cell_radius_km: float = 22.5,
    alpha_probe_deg=None,
    coarse_step_km: float = 10.0,
) -> float:
    """Largest separation keeping elevation >= ``min_elevation_deg`` for every alpha.

    The binding direction is discovered by probing an alpha grid rather than
    assumed. Coarse scan first, then bisection to well under 1 km. Returns
    0.0 if even zero separation violates the bound.
    """
    if not 0.0 < min_elevation_deg < 90.0:
        raise ValueError("min elevation must lie in (0, 90) degrees")

    def worst(sep):
        return min_elevation_over_alpha(
            slant_range_km, sep, earth, altitude_km, cell_radius_km, alpha_probe_deg
        )

    if worst(0.0) < min_elevation_deg:
        return 0.0

    # Elevation reaches zero before the horizon arc, so this cap is generous.
    gamma_b = central_angle_from_slant_range(slant_range_km, earth, altitude_km)
    horizon = math.acos(earth.radius_km / (earth.radius_km + altitude_km))
    cap = earth.radius_km * (horizon - gamma_b) - cell_radius_km
    grid = np.arange(0.0, cap + coarse_step_km, coarse_step_km)
    ok = worst(grid) >= min_elevation_deg
    if ok.all():
        return float(grid[-1])
    first_bad = int(np.argmin(ok))
    lo, hi = float(grid[first_bad - 1]), float(grid[first_bad])
    while hi - lo > 0.5:
        mid = 0.5 * (lo + hi)
        if worst(mid) >= min_elevation_deg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
