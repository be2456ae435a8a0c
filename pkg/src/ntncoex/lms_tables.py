"""State-parameter tables for the two-state land-mobile-satellite channel.

The numeric tables live in an external recommendation and must be
transcribed by the operator; this package ships a clearly labelled
SYNTHETIC set so the generator and its statistics can be exercised
end to end. File format (one record per line, '#' comments):

    !duration_unit seconds|meters
    environment elevation band state mu_MA sigma_MA g1 g2 h1 h2 dur_mu dur_sigma dur_min

Only the (environment, elevation) combinations with published statistics
are accepted; notably Residential has no 45 degree entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

GOOD = "GOOD"
BAD = "BAD"

ENVIRONMENTS = ("Urban", "Suburban", "RuralWooded", "Village", "Residential")

AVAILABLE_ELEVATIONS_DEG = {
    "Urban": (20, 30, 45, 60, 70),
    "Suburban": (20, 30, 45, 60, 70),
    "Village": (20, 30, 45, 60, 70),
    "RuralWooded": (20, 30, 45, 60, 70),
    "Residential": (20, 30, 60, 70),
}

_SYNTHETIC_RESOURCE = "lms_params_synthetic.txt"


class TableFormatError(ValueError):
    """Raised with a '<source>:<line>: message' prefix on malformed tables."""


@dataclass(frozen=True)
class LmsStateParams:
    """Statistics of one semi-Markov state.

    ``mu_ma_db``/``sigma_ma_db`` describe the normal distribution of the
    mean direct-path level drawn on each state entry; ``g1``/``g2_db`` and
    ``h1``/``h2_db`` are the affine maps from that level to the direct-path
    standard deviation and the mean multipath power. State durations are
    log-normal with a lower clamp.
    """

    mu_ma_db: float
    sigma_ma_db: float
    g1: float
    g2_db: float
    h1: float
    h2_db: float
    duration_mu: float
    duration_sigma: float
    duration_min: float

    def __post_init__(self):
        if self.sigma_ma_db < 0:
            raise ValueError("sigma_MA cannot be negative")
        if self.duration_sigma < 0:
            raise ValueError("duration sigma cannot be negative")
        if self.duration_min < 0:
            raise ValueError("duration minimum cannot be negative")

    def mean_duration(self) -> float:
        """Unclamped log-normal mean, exp(mu + sigma^2/2)."""
        return math.exp(self.duration_mu + 0.5 * self.duration_sigma**2)


@dataclass
class LmsEnvironmentTable:
    """Lookup of (environment, elevation, band) -> (GOOD, BAD) parameters."""

    duration_unit: str = "seconds"
    entries: dict = field(default_factory=dict)

    def add(self, environment, elevation_deg, band, state, params: LmsStateParams):
        allowed = AVAILABLE_ELEVATIONS_DEG.get(environment)
        if allowed is None:
            raise KeyError(f"unknown environment {environment!r}")
        if elevation_deg not in allowed:
            raise KeyError(
                f"no statistics for {environment} at {elevation_deg} deg "
                f"(available: {allowed})"
            )
        if state not in (GOOD, BAD):
            raise KeyError(f"state must be {GOOD} or {BAD}, got {state!r}")
        self.entries.setdefault((environment, elevation_deg, band), {})[state] = params

    def lookup(self, environment, elevation_deg, band):
        """Return the (good, bad) parameter pair or raise KeyError."""
        allowed = AVAILABLE_ELEVATIONS_DEG.get(environment)
        if allowed is None:
            raise KeyError(f"unknown environment {environment!r}")
        if elevation_deg not in allowed:
            raise KeyError(
                f"no statistics for {environment} at {elevation_deg} deg "
                f"(available: {allowed})"
            )
        pair = self.entries.get((environment, elevation_deg, band))
        if pair is None:
            raise KeyError(
                f"table has no record for ({environment}, {elevation_deg}, {band})"
            )
        if GOOD not in pair or BAD not in pair:
            raise KeyError(
                f"incomplete record for ({environment}, {elevation_deg}, {band}): "
                f"both GOOD and BAD states are required"
            )
        return pair[GOOD], pair[BAD]

    def keys(self):
        return sorted(self.entries)


def parse_table(text: str, source: str = "<string>") -> LmsEnvironmentTable:
    """Parse a parameter table, reporting errors with line numbers."""
    table = LmsEnvironmentTable()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("!"):
            parts = line[1:].split()
            if len(parts) != 2 or parts[0] != "duration_unit":
                raise TableFormatError(
                    f"{source}:{lineno}: unknown directive {line!r}"
                )
            if parts[1] not in ("seconds", "meters"):
                raise TableFormatError(
                    f"{source}:{lineno}: duration_unit must be seconds or meters"
                )
            table.duration_unit = parts[1]
            continue
        fields = line.split()
        if len(fields) != 13:
            raise TableFormatError(
                f"{source}:{lineno}: expected 13 fields, got {len(fields)}"
            )
        env, elev_s, band, state = fields[:4]
        try:
            elev = int(elev_s)
            numbers = [float(v) for v in fields[4:]]
        except ValueError as exc:
            raise TableFormatError(f"{source}:{lineno}: {exc}") from None
        try:
            params = LmsStateParams(*numbers)
            table.add(env, elev, band, state, params)
        except (ValueError, KeyError) as exc:
            raise TableFormatError(f"{source}:{lineno}: {exc}") from None
    for key, pair in table.entries.items():
        if GOOD not in pair or BAD not in pair:
            raise TableFormatError(
                f"{source}: record {key} is missing its "
                f"{GOOD if GOOD not in pair else BAD} state"
            )
    return table


def load_table(path) -> LmsEnvironmentTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_table(fh.read(), source=str(path))


def synthetic_table() -> LmsEnvironmentTable:
    """Built-in SYNTHETIC parameter set (placeholder, not measured data)."""
    text = (
        resources.files("ntncoex").joinpath(f"data/{_SYNTHETIC_RESOURCE}").read_text()
    )
    return parse_table(text, source=f"builtin:{_SYNTHETIC_RESOURCE}")
