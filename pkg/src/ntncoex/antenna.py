"""Circular-aperture antenna pattern of the satellite and its EIRP."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT

_SERIES_LIMIT = 12.0
_SERIES_TERMS = 48


def _j1_series(x):
    # Alternating power series; well conditioned for |x| <= 12 in float64.
    t = np.asarray(x, dtype=float) / 2.0
    term = t.copy()
    total = t.copy()
    t2 = t * t
    for m in range(1, _SERIES_TERMS):
        term *= -t2 / (m * (m + 1))
        total += term
    return total


def _j1_downward(x: float) -> float:
    # Miller's downward recurrence, normalised with J0 + 2*sum(J_2k) = 1.
    # Start order comfortably above the turning point n ~ x.
    n_start = int(x) + 32 + int(2.0 * math.sqrt(x))
    jp = 0.0
    jc = 1e-30
    norm = 0.0
    j1 = 0.0
    for n in range(n_start, 0, -1):
        jm = (2.0 * n / x) * jc - jp
        jp, jc = jc, jm
        order = n - 1
        if order == 1:
            j1 = jc
        if order % 2 == 0:
            norm += jc if order == 0 else 2.0 * jc
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            norm *= 1e-250
            j1 *= 1e-250
    return j1 / norm


def bessel_j1(x):
    """Bessel function of the first kind, order one.

    Accurate to better than 1e-10 absolute error for |x| <= 50 (power
    series below 12, downward recurrence above). Accepts scalars or
    numpy arrays.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = np.abs(arr) <= _SERIES_LIMIT
    if small.any():
        out[small] = _j1_series(arr[small])
    if (~small).any():
        big = arr[~small]
        out[~small] = [
            _j1_downward(v) if v > 0 else -_j1_downward(-v) for v in big
        ]
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class AperturePattern:
    """Normalized gain pattern of a circular aperture.

    ``ka`` (wavenumber times aperture radius) fixes the pattern shape; it is
    the number of wavelengths around the aperture circumference, so scaling
    frequency up and the radius down by the same factor leaves the pattern
    unchanged. Exact pattern nulls are clamped to ``null_floor_db`` to keep
    dB arithmetic finite.
    """

    aperture_radius_m: float = 0.22
    carrier_hz: float = 2.17e9
    null_floor_db: float = -80.0

    def __post_init__(self):
        if self.aperture_radius_m <= 0:
            raise ValueError("aperture radius must be positive")
        if self.carrier_hz <= 0:
            raise ValueError("carrier frequency must be positive")

    @property
    def ka(self) -> float:
        return 2.0 * math.pi * self.carrier_hz * self.aperture_radius_m / SPEED_OF_LIGHT


@dataclass(frozen=True)
class SatelliteRadioConfig:
    """Transmit side of the downlink, per resource block.

    ``max_gain_dbi`` is carried as metadata only; the link budget needs the
    boresight EIRP plus the normalized pattern, never the gain by itself.
    """

    peak_eirp_per_prb_dbw: float = 19.24
    max_gain_dbi: float = 40.4


def normalized_gain_db(theta_deg, pattern: AperturePattern):
    """Pattern gain in dB relative to boresight: 0 dB at theta = 0.

    Off boresight the gain is 10*log10(4 * |J1(ka sin t)/(ka sin t)|^2),
    clamped from below at the pattern's null floor. Defined for
    |theta| <= 90 degrees only.
    """
    theta = np.asarray(theta_deg, dtype=float)
    scalar = theta.ndim == 0
    theta = np.atleast_1d(theta)
    if (np.abs(theta) > 90.0).any():
        raise ValueError("pattern is defined for |theta| <= 90 degrees")
    x = pattern.ka * np.sin(np.radians(theta))
    out = np.zeros_like(x)
    off = x != 0.0
    if off.any():
        ratio = bessel_j1(x[off]) / x[off]
        lin = 4.0 * np.abs(ratio) ** 2
        with np.errstate(divide="ignore"):
            db = 10.0 * np.log10(lin)
        out[off] = np.maximum(db, pattern.null_floor_db)
    return float(out[0]) if scalar else out


def eirp_toward(theta_deg, radio: SatelliteRadioConfig, pattern: AperturePattern):
    """EIRP (dBW) radiated toward a direction ``theta_deg`` off boresight."""
    return radio.peak_eirp_per_prb_dbw + normalized_gain_db(theta_deg, pattern)
