"""Path loss: free-space spreading, gaseous absorption, ionospheric scintillation.

Rain, clouds and building entry are out of scope for an outdoor S-band UE.
Shadow fading and clutter loss are intentionally absent here: the two-state
fading channel already accounts for them, and adding them again would double
count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT

SCINTILLATION_LATITUDE_DEG = 20.0
_SCINT_4GHZ_DB = 0.7778  # peak-to-peak equatorial fluctuation / sqrt(2) at 4 GHz


@dataclass(frozen=True)
class PropagationConfig:
    carrier_ghz: float = 2.17
    latitude_deg: float = 0.0
    gaseous_zenith_db: float = 0.07
    gaseous_enabled: bool = False

    def __post_init__(self):
        if self.carrier_ghz <= 0:
            raise ValueError("carrier must be positive")
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise ValueError("latitude must lie in [-90, 90]")
        if self.gaseous_zenith_db < 0:
            raise ValueError("zenith attenuation cannot be negative")


@dataclass(frozen=True)
class PathLossBreakdown:
    fspl_db: float
    gaseous_db: float
    scintillation_db: float

    @property
    def total_db(self) -> float:
        return self.fspl_db + self.gaseous_db + self.scintillation_db


def fspl_db(distance_km, carrier_ghz):
    """Free-space path loss, 20*log10(4 pi d f / c)."""
    d = np.asarray(distance_km, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    if carrier_ghz <= 0:
        raise ValueError("carrier must be positive")
    return 20.0 * np.log10(
        4.0 * math.pi * d * 1e3 * carrier_ghz * 1e9 / SPEED_OF_LIGHT
    )


def gaseous_attenuation_db(elevation_deg: float, config: PropagationConfig) -> float:
    """Flat-atmosphere cosecant law from a configurable zenith value.

    A stand-in for a full line-by-line gas model; absorption below 10 GHz
    is small enough that a single zenith number suffices for this band.
    """
    if elevation_deg <= 0.0 or elevation_deg > 90.0:
        raise ValueError("elevation must lie in (0, 90] degrees")
    if not config.gaseous_enabled:
        return 0.0
    return config.gaseous_zenith_db / math.sin(math.radians(elevation_deg))


def scintillation_db(carrier_ghz: float, latitude_deg: float) -> float:
    """Ionospheric scintillation loss, active only at low latitude.

    Within +/-20 deg latitude the loss scales as (f/4 GHz)^-1.5 from the
    4 GHz equatorial reference; at higher latitudes amplitude effects are
    negligible and the loss is zero.
    """
    if carrier_ghz <= 0:
        raise ValueError("carrier must be positive")
    if abs(latitude_deg) > SCINTILLATION_LATITUDE_DEG:
        return 0.0
    return _SCINT_4GHZ_DB * (carrier_ghz / 4.0) ** -1.5


def total_path_loss(solution, config: PropagationConfig) -> PathLossBreakdown:
    """Evaluate every component for a solved geometry (d = d_u)."""
    return PathLossBreakdown(
        fspl_db=float(fspl_db(solution.d_u_km, config.carrier_ghz)),
        gaseous_db=gaseous_attenuation_db(solution.elevation_deg, config),
        scintillation_db=scintillation_db(config.carrier_ghz, config.latitude_deg),
    )
