"""Per-PRB received interference power, thermal noise and INR.

Every internal power is in dBm; the one dBW quantity is the configured
satellite EIRP, converted with the +30 dB offset in exactly one place
(:func:`rx_power_dbm`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .antenna import AperturePattern, SatelliteRadioConfig, normalized_gain_db
from .constants import BOLTZMANN
from .geometry import GeometrySolution
from .propagation import PathLossBreakdown

DBW_TO_DBM = 30.0


@dataclass(frozen=True)
class ReceiverConfig:
    """Victim UE receive chain (omnidirectional antenna by default)."""

    antenna_gain_dbi: float = 0.0
    equivalent_temperature_k: float = 2303.55
    prb_bandwidth_hz: float = 180e3

    def __post_init__(self):
        if self.equivalent_temperature_k <= 0:
            raise ValueError("equivalent temperature must be positive")
        if self.prb_bandwidth_hz <= 0:
            raise ValueError("PRB bandwidth must be positive")


@dataclass(frozen=True)
class LinkBudgetBreakdown:
    """Every additive term of the received-power chain, stored separately."""

    eirp_dbw: float
    normalized_gain_db: float
    path_loss: PathLossBreakdown
    channel_gain_db: float
    rx_gain_dbi: float
    rx_power_dbm: float
    noise_dbm: float

    @property
    def inr_db(self) -> float:
        return self.rx_power_dbm - self.noise_dbm


def noise_power_dbm(rx: ReceiverConfig) -> float:
    """Thermal noise power kTB over one PRB, in dBm."""
    watts = BOLTZMANN * rx.equivalent_temperature_k * rx.prb_bandwidth_hz
    return 10.0 * math.log10(watts) + DBW_TO_DBM


def rx_power_dbm(
    geometry: GeometrySolution,
    pathloss: PathLossBreakdown,
    channel_gain_db: float,
    radio: SatelliteRadioConfig,
    pattern: AperturePattern,
    rx: ReceiverConfig,
) -> float:
    """Received interference power per PRB in dBm."""
    return (
        radio.peak_eirp_per_prb_dbw
        + DBW_TO_DBM
        + normalized_gain_db(geometry.theta_deg, pattern)
        - pathloss.total_db
        + channel_gain_db
        + rx.antenna_gain_dbi
    )


def inr_db(rx_power: float, noise: float) -> float:
    """Interference-to-noise ratio in dB."""
    return rx_power - noise


def compose_link_budget(
    geometry: GeometrySolution,
    pathloss: PathLossBreakdown,
    channel_gain_db: float,
    radio: SatelliteRadioConfig,
    pattern: AperturePattern,
    rx: ReceiverConfig,
) -> LinkBudgetBreakdown:
    """Assemble the full breakdown for one scenario point."""
    gain = normalized_gain_db(geometry.theta_deg, pattern)
    power = (
        radio.peak_eirp_per_prb_dbw
        + DBW_TO_DBM
        + gain
        - pathloss.total_db
        + channel_gain_db
        + rx.antenna_gain_dbi
    )
    return LinkBudgetBreakdown(
        eirp_dbw=radio.peak_eirp_per_prb_dbw,
        normalized_gain_db=float(gain),
        path_loss=pathloss,
        channel_gain_db=channel_gain_db,
        rx_gain_dbi=rx.antenna_gain_dbi,
        rx_power_dbm=float(power),
        noise_dbm=noise_power_dbm(rx),
    )
