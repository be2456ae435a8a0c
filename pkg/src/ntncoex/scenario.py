"""Scenario configuration: defaults, plain-text files and the effective echo.

The file format is ``key = value`` lines with ``#`` comments. Lengths are
in km, frequencies in GHz, powers in dBW/dBm as each key's suffix states.
Unknown keys are rejected with their line number; missing keys fall back
to the defaults below. ``effective_config_text`` renders a normalized
block that parses back to the identical configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .antenna import AperturePattern, SatelliteRadioConfig
from .geometry import EarthModel, SatelliteGeometryConfig
from .link_budget import ReceiverConfig
from .propagation import PropagationConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    earth_radius_km: float = 6378.0
    altitude_km: float = 600.0
    slant_range_km: float = 882.38
    cell_radius_km: float = 22.5
    carrier_ghz: float = 2.17
    prb_bandwidth_khz: float = 180.0
    aperture_diameter_m: float = 0.44
    peak_eirp_per_prb_dbw: float = 19.24
    max_antenna_gain_dbi: float = 40.4
    pattern_floor_db: float = -80.0
    rx_antenna_gain_dbi: float = 0.0
    equivalent_temperature_k: float = 2303.55
    latitude_deg: float = 0.0
    gaseous_enabled: bool = False
    gaseous_zenith_db: float = 0.07
    channel_gain_db: float = 1.2
    environment: str = "Urban"
    band: str = "s_band"
    ue_speed_mps: float = 3.0
    ue_azimuth_deg: float = 0.0
    lms_table: str = ""
    sweep_variable: str = "slant_range"
    sweep_min_km: float = 600.0
    sweep_max_km: float = 1075.19
    sweep_step_km: float = 5.0
    sweep_fixed_km: float = 100.0
    sweep_alphas_deg: tuple = (0.0, 45.0, 90.0, 135.0, 180.0)
    channel_mode: str = "worst_case"
    monte_carlo_runs: int = 25
    monte_carlo_seed: int = 1

    # -- views onto the module-level config types -------------------------

    def earth(self) -> EarthModel:
        return EarthModel(radius_km=self.earth_radius_km)

    def sat_geometry(self, slant_range_km=None) -> SatelliteGeometryConfig:
        return SatelliteGeometryConfig(
            altitude_km=self.altitude_km,
            slant_range_km=self.slant_range_km if slant_range_km is None else slant_range_km,
        )

    def pattern(self) -> AperturePattern:
        return AperturePattern(
            aperture_radius_m=self.aperture_diameter_m / 2.0,
            carrier_hz=self.carrier_ghz * 1e9,
            null_floor_db=self.pattern_floor_db,
        )

    def radio(self) -> SatelliteRadioConfig:
        return SatelliteRadioConfig(
            peak_eirp_per_prb_dbw=self.peak_eirp_per_prb_dbw,
            max_gain_dbi=self.max_antenna_gain_dbi,
        )

    def receiver(self) -> ReceiverConfig:
        return ReceiverConfig(
            antenna_gain_dbi=self.rx_antenna_gain_dbi,
            equivalent_temperature_k=self.equivalent_temperature_k,
            prb_bandwidth_hz=self.prb_bandwidth_khz * 1e3,
        )

    def propagation(self) -> PropagationConfig:
        return PropagationConfig(
            carrier_ghz=self.carrier_ghz,
            latitude_deg=self.latitude_deg,
            gaseous_zenith_db=self.gaseous_zenith_db,
            gaseous_enabled=self.gaseous_enabled,
        )


_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}


def _parse_value(key: str, text: str, lineno: int, source: str):
    kind = _FIELD_TYPES[key]
    try:
        if kind == "bool":
            low = text.lower()
            if low in ("true", "yes", "1", "on"):
                return True
            if low in ("false", "no", "0", "off"):
                return False
            raise ValueError(f"not a boolean: {text!r}")
        if kind == "int":
            return int(text)
        if kind == "float":
            return float(text)
        if kind == "tuple":
            return tuple(float(v) for v in text.split(",") if v.strip())
        return text
    except ValueError as exc:
        raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from None


def parse_scenario_text(text: str, source: str = "<string>") -> ScenarioConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, val, lineno, source)
    try:
        return ScenarioConfig(**values)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_scenario(path) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_scenario_text(text, source=str(path))


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)  # exact round trip
    return str(value)


def effective_config_text(cfg: ScenarioConfig) -> str:
    """Normalized config block; feeding it back reproduces ``cfg`` exactly."""
    lines = ["# effective configuration"]
    for f in fields(ScenarioConfig):
        lines.append(f"{f.name} = {_format_value(getattr(cfg, f.name))}")
    return "\n".join(lines) + "\n"

