"""Two-state semi-Markov land-mobile-satellite fading generator.

The long-term signal level alternates between a GOOD state (line of sight
or light shadowing) and a BAD state (heavy shadowing); state durations are
log-normal with a lower clamp. Within a state the coefficient is the sum
of a slowly varying direct path (log-normal level around a per-state draw)
and Rayleigh multipath band-limited by the UE-motion Doppler spread:

    h[n] = a_direct[n] + a_multipath[n]

One fresh direct-level draw happens on every state entry. The satellite
Doppler shift is a common phase rotation under flat fading and does not
affect |h|; it can optionally be applied to the direct path, at the cost
of a correspondingly higher sample rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import firwin, lfilter

from .constants import DEFAULT_EARTH_RADIUS_KM, EARTH_GM, SPEED_OF_LIGHT
from .lms_tables import BAD, GOOD, LmsStateParams

_FIR_TAPS = 257
_FIR_CUTOFF_FRACTION = 0.92  # keep the transition band inside the spread


@dataclass(frozen=True)
class LooTriplet:
    """Per-state fading parameters: direct level stats and multipath power."""

    mean_direct_db: float
    std_direct_db: float
    multipath_power_db: float

    def __post_init__(self):
        if self.std_direct_db < 0:
            raise ValueError("direct-path standard deviation cannot be negative")


@dataclass(frozen=True)
class DopplerConfig:
    satellite_altitude_km: float = 600.0
    elevation_deg: float = 90.0
    carrier_hz: float = 2.17e9
    ue_speed_mps: float = 3.0
    ue_azimuth_deg: float = 0.0

    def __post_init__(self):
        if self.ue_speed_mps < 0:
            raise ValueError("UE speed cannot be negative")


@dataclass(frozen=True)
class StateInterval:
    state: str
    duration_s: float


@dataclass
class LooDiagnostics:
    """Counters for degenerate parameter draws."""

    sigma_clamped: int = 0


@dataclass
class ChannelSeries:
    """A generated coefficient series with its per-sample state labels."""

    sample_rate_hz: float
    samples: np.ndarray
    state_track: np.ndarray

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise ValueError("sample rate must be positive")
        if len(self.samples) != len(self.state_track):
            raise ValueError("samples and state track must align")

    def gains(self) -> np.ndarray:
        return np.abs(self.samples) ** 2


def satellite_speed_mps(
    altitude_km: float, earth_radius_km: float = DEFAULT_EARTH_RADIUS_KM
) -> float:
    """Circular-orbit speed sqrt(GM / (R + h))."""
    if altitude_km < 0:
        raise ValueError("altitude cannot be negative")
    return math.sqrt(EARTH_GM / ((earth_radius_km + altitude_km) * 1e3))


def doppler_shift_hz(
    config: DopplerConfig, earth_radius_km: float = DEFAULT_EARTH_RADIUS_KM
) -> float:
    """Shift caused by satellite motion, (v/c)(R/(R+h)) cos(elev) f_c."""
    v = satellite_speed_mps(config.satellite_altitude_km, earth_radius_km)
    geom = earth_radius_km / (earth_radius_km + config.satellite_altitude_km)
    return (
        v / SPEED_OF_LIGHT
        * geom
        * math.cos(math.radians(config.elevation_deg))
        * config.carrier_hz
    )


def ue_doppler_spread_hz(config: DopplerConfig) -> float:
    """Maximum Doppler of the UE motion, v f_c / c."""
    return config.ue_speed_mps * config.carrier_hz / SPEED_OF_LIGHT


def draw_state_sequence(
    good: LmsStateParams,
    bad: LmsStateParams,
    total_duration_s: float,
    rng: np.random.Generator,
    *,
    duration_unit: str = "seconds",
    ue_speed_mps: float | None = None,
) -> list[StateInterval]:
    """Alternating GOOD/BAD intervals covering ``total_duration_s``.

    Durations are log-normal draws clamped below by each state's minimum;
    the first state is chosen with probability proportional to the mean
    state duration. Distance-based tables are converted to time with the
    UE speed.
    """
    if total_duration_s <= 0:
        raise ValueError("total duration must be positive")
    if duration_unit not in ("seconds", "meters"):
        raise ValueError("duration unit must be seconds or meters")
    scale = 1.0
    if duration_unit == "meters":
        if not ue_speed_mps or ue_speed_mps <= 0:
            raise ValueError("distance-based durations need a positive UE speed")
        scale = 1.0 / ue_speed_mps

    params = {GOOD: good, BAD: bad}
    mean_good = good.mean_duration()
    mean_bad = bad.mean_duration()
    p_good = mean_good / (mean_good + mean_bad)
    state = GOOD if rng.random() < p_good else BAD

    intervals: list[StateInterval] = []
    elapsed = 0.0
    while elapsed < total_duration_s:
        p = params[state]
        if p.duration_sigma > 0:
            raw = rng.lognormal(p.duration_mu, p.duration_sigma)
        else:
            raw = math.exp(p.duration_mu)
        dur = max(raw, p.duration_min) * scale
        dur = min(dur, total_duration_s - elapsed)
        intervals.append(StateInterval(state=state, duration_s=dur))
        elapsed += dur
        state = BAD if state == GOOD else GOOD
    return intervals


def draw_loo_triplet(
    state: LmsStateParams,
    rng: np.random.Generator,
    diagnostics: LooDiagnostics | None = None,
) -> LooTriplet:
    """Draw the per-interval fading parameters for one state entry."""
    if state.sigma_ma_db > 0:
        ma = rng.normal(state.mu_ma_db, state.sigma_ma_db)
    else:
        ma = state.mu_ma_db
    sigma = state.g1 * ma + state.g2_db
    if sigma < 0:
        sigma = 0.0
        if diagnostics is not None:
            diagnostics.sigma_clamped += 1
    mp = state.h1 * ma + state.h2_db
    return LooTriplet(
        mean_direct_db=ma, std_direct_db=sigma, multipath_power_db=mp
    )


def _moving_average(track: np.ndarray, window: int) -> np.ndarray:
    if window <= 1:
        return track
    pad = window // 2
    padded = np.pad(track, pad, mode="edge")
    kernel = np.full(window, 1.0 / window)
    smoothed = np.convolve(padded, kernel, mode="same")
    return smoothed[pad : pad + len(track)]


def _bandlimited_unit_noise(
    n: int, spread_hz: float, sample_rate_hz: float, rng: np.random.Generator
) -> np.ndarray:
    """Unit-power complex Gaussian, band-limited to |f| <= spread_hz."""
    if spread_hz <= 0.0:
        z = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
        return np.full(n, z, dtype=complex)
    white = (
        rng.standard_normal(n + _FIR_TAPS - 1)
        + 1j * rng.standard_normal(n + _FIR_TAPS - 1)
    ) / math.sqrt(2.0)
    taps = firwin(_FIR_TAPS, _FIR_CUTOFF_FRACTION * spread_hz, fs=sample_rate_hz)
    taps = taps / math.sqrt(float(np.sum(taps**2)))
    return np.convolve(white, taps, mode="valid")


def generate_series(
    triplet_source,
    state_sequence,
    doppler: DopplerConfig,
    sample_rate_hz: float,
    rng: np.random.Generator,
    *,
    slow_fade_corr_s: float = 1.0,
    transition_s: float = 0.0,
    include_satellite_doppler: bool = False,
) -> ChannelSeries:
    """Synthesize the complex coefficient series for a state sequence.

    ``triplet_source(state, rng) -> LooTriplet`` supplies fresh fading
    parameters on every state entry. The direct-path level in dB follows a
    first-order low-pass Gaussian process (correlation time
    ``slow_fade_corr_s``) around the drawn mean; the multipath component is
    one continuous band-limited Rayleigh stream scaled per state. State
    changes switch parameters instantly unless ``transition_s`` smooths the
    parameter tracks. Deterministic for a fixed seed and configuration.
    """
    if sample_rate_hz <= 0:
        raise ValueError("sample rate must be positive")
    spread = ue_doppler_spread_hz(doppler)
    shift = doppler_shift_hz(doppler) if include_satellite_doppler else 0.0
    needed = 8.0 * (spread + abs(shift))
    if sample_rate_hz < needed:
        raise ValueError(
            f"sample rate {sample_rate_hz} Hz undersamples the Doppler "
            f"bandwidth; need at least {needed:.1f} Hz"
        )
    if not state_sequence:
        raise ValueError("state sequence is empty")

    counts = [max(1, round(iv.duration_s * sample_rate_hz)) for iv in state_sequence]
    total = int(np.sum(counts))

    mean_track = np.empty(total)
    std_track = np.empty(total)
    mp_amp_track = np.empty(total)
    labels = np.empty(total, dtype="<U4")
    pos = 0
    for interval, n in zip(state_sequence, counts):
        triplet = triplet_source(interval.state, rng)
        sl = slice(pos, pos + n)
        mean_track[sl] = triplet.mean_direct_db
        std_track[sl] = triplet.std_direct_db
        mp_amp_track[sl] = 10.0 ** (triplet.multipath_power_db / 20.0)
        labels[sl] = interval.state
        pos += n

    if transition_s > 0:
        window = int(round(transition_s * sample_rate_hz)) | 1
        mean_track = _moving_average(mean_track, window)
        std_track = _moving_average(std_track, window)
        mp_amp_track = _moving_average(mp_amp_track, window)

    # AR(1) slow fade of the direct level, unit variance in steady state.
    corr_samples = max(slow_fade_corr_s * sample_rate_hz, 1.0)
    rho = math.exp(-1.0 / corr_samples)
    seed_state = rng.standard_normal()
    innovations = rng.standard_normal(total)
    slow, _ = lfilter(
        [math.sqrt(1.0 - rho * rho)], [1.0, -rho], innovations, zi=[rho * seed_state]
    )
    level_db = mean_track + std_track * slow
    direct = 10.0 ** (level_db / 20.0)
    if shift != 0.0:
        t = np.arange(total) / sample_rate_hz
        direct = direct * np.exp(2j * math.pi * shift * t)

    multipath = mp_amp_track * _bandlimited_unit_noise(
        total, spread, sample_rate_hz, rng
    )
    return ChannelSeries(
        sample_rate_hz=sample_rate_hz,
        samples=direct + multipath,
        state_track=labels,
    )


def simulate_channel(
    good: LmsStateParams,
    bad: LmsStateParams,
    duration_s: float,
    doppler: DopplerConfig,
    sample_rate_hz: float,
    rng: np.random.Generator,
    *,
    duration_unit: str = "seconds",
    transition_s: float = 0.0,
    diagnostics: LooDiagnostics | None = None,
) -> ChannelSeries:
    """Wire the state machine, parameter draws and synthesis together."""
    sequence = draw_state_sequence(
        good,
        bad,
        duration_s,
        rng,
        duration_unit=duration_unit,
        ue_speed_mps=doppler.ue_speed_mps,
    )
    params = {GOOD: good, BAD: bad}

    def source(state, r):
        return draw_loo_triplet(params[state], r, diagnostics)

    corr = max(
        min(good.duration_min, bad.duration_min), 1.0 / sample_rate_hz
    )
    if duration_unit == "meters":
        corr = corr / doppler.ue_speed_mps
    return generate_series(
        source,
        sequence,
        doppler,
        sample_rate_hz,
        rng,
        slow_fade_corr_s=corr,
        transition_s=transition_s,
    )


def mean_channel_gain_db(runs) -> tuple[float, tuple[float, float]]:
    """Across-run mean gain and normal-approximation 95% confidence interval.

    Each run contributes 10*log10(mean |h|^2); needs at least two runs.
    """
    if len(runs) < 2:
        raise ValueError("need at least two runs for a confidence interval")
    per_run = np.array(
        [10.0 * math.log10(float(np.mean(r.gains()))) for r in runs]
    )
    mean = float(per_run.mean())
    half = 1.96 * float(per_run.std(ddof=1)) / math.sqrt(len(per_run))
    return mean, (mean - half, mean + half)
