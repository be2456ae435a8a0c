"""LEO downlink co-channel interference simulator for terrestrial S-band UEs."""

from .antenna import (
    AperturePattern,
    SatelliteRadioConfig,
    bessel_j1,
    eirp_toward,
    normalized_gain_db,
)
from .geometry import (
    EarthModel,
    GeometrySolution,
    ItuValidityReport,
    SatelliteGeometryConfig,
    UePlacement,
    central_angle_from_slant_range,
    check_itu_validity,
    max_separation_for_min_elevation,
    solve_geometry,
)
from .link_budget import (
    LinkBudgetBreakdown,
    ReceiverConfig,
    compose_link_budget,
    inr_db,
    noise_power_dbm,
    rx_power_dbm,
)
from .lms_channel import (
    ChannelSeries,
    DopplerConfig,
    LooTriplet,
    doppler_shift_hz,
    draw_loo_triplet,
    draw_state_sequence,
    generate_series,
    mean_channel_gain_db,
    satellite_speed_mps,
    simulate_channel,
)
from .lms_tables import (
    LmsEnvironmentTable,
    LmsStateParams,
    load_table,
    parse_table,
    synthetic_table,
)
from .propagation import (
    PathLossBreakdown,
    PropagationConfig,
    fspl_db,
    gaseous_attenuation_db,
    scintillation_db,
    total_path_loss,
)
from .scenario import ScenarioConfig, effective_config_text, load_scenario, parse_scenario_text
from .sweep import (
    SeparationSolution,
    SweepResult,
    SweepSpec,
    dominant_alpha_crossover,
    run_sweep,
    zero_db_separation,
)

__version__ = "0.1.0"
