import math

import pytest

from ntncoex.antenna import AperturePattern, SatelliteRadioConfig
from ntncoex.geometry import EarthModel, SatelliteGeometryConfig, UePlacement, solve_geometry
from ntncoex.link_budget import (
    ReceiverConfig,
    compose_link_budget,
    inr_db,
    noise_power_dbm,
    rx_power_dbm,
)
from ntncoex.propagation import PropagationConfig, total_path_loss

from oracles import noise_oracle_dbm

RX = ReceiverConfig()
RADIO = SatelliteRadioConfig()
PATTERN = AperturePattern()


def _beam_center_inputs():
    solution = solve_geometry(
        SatelliteGeometryConfig(slant_range_km=882.38),
        UePlacement(-22.5, 0.0),
        EarthModel(),
    )
    loss = total_path_loss(solution, PropagationConfig(latitude_deg=10.0))
    return solution, loss


class TestNoise:
    def test_default_receiver(self):
        assert noise_power_dbm(RX) == pytest.approx(-112.42, abs=0.05)
        assert noise_power_dbm(RX) == pytest.approx(
            noise_oracle_dbm(2303.55, 180e3), abs=1e-9
        )

    def test_room_temperature(self):
        rx = ReceiverConfig(equivalent_temperature_k=290.0)
        assert noise_power_dbm(rx) == pytest.approx(-121.42, abs=0.05)

    def test_bandwidth_doubling(self):
        wide = ReceiverConfig(prb_bandwidth_hz=360e3)
        assert noise_power_dbm(wide) - noise_power_dbm(RX) == pytest.approx(
            3.0103, abs=1e-3
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            ReceiverConfig(equivalent_temperature_k=0.0)
        with pytest.raises(ValueError):
            ReceiverConfig(prb_bandwidth_hz=-1.0)


class TestRxPower:
    def test_worked_beam_center(self):
        solution, loss = _beam_center_inputs()
        power = rx_power_dbm(solution, loss, 1.2, RADIO, PATTERN, RX)
        assert power == pytest.approx(-109.60, abs=0.05)

    def test_zero_channel_gain_shift(self):
        solution, loss = _beam_center_inputs()
        with_gain = rx_power_dbm(solution, loss, 1.2, RADIO, PATTERN, RX)
        without = rx_power_dbm(solution, loss, 0.0, RADIO, PATTERN, RX)
        assert with_gain - without == pytest.approx(1.2, abs=1e-12)

    def test_pattern_null_floor(self):
        from ntncoex.geometry import GeometrySolution

        solution, loss = _beam_center_inputs()
        theta_null = math.degrees(math.asin(3.8317059702 / PATTERN.ka))
        nulled = GeometrySolution(
            gamma_b_rad=solution.gamma_b_rad,
            gamma_bu_rad=solution.gamma_bu_rad,
            gamma_u_rad=solution.gamma_u_rad,
            d_u_km=solution.d_u_km,
            elevation_deg=solution.elevation_deg,
            theta_deg=theta_null,
        )
        power = rx_power_dbm(nulled, loss, 1.2, RADIO, PATTERN, RX)
        assert power <= -169.0


class TestInr:
    def test_worked_example(self):
        solution, loss = _beam_center_inputs()
        power = rx_power_dbm(solution, loss, 1.2, RADIO, PATTERN, RX)
        assert inr_db(power, noise_power_dbm(RX)) == pytest.approx(2.82, abs=0.1)

    def test_equal_powers(self):
        assert inr_db(-112.42, -112.42) == 0.0

    def test_thirty_db_below(self):
        assert inr_db(-142.42, -112.42) == pytest.approx(-30.0, abs=1e-12)


class TestBreakdown:
    def test_reconstruction_exact(self):
        solution, loss = _beam_center_inputs()
        budget = compose_link_budget(solution, loss, 1.2, RADIO, PATTERN, RX)
        rebuilt = (
            budget.eirp_dbw
            + 30.0
            + budget.normalized_gain_db
            - budget.path_loss.total_db
            + budget.channel_gain_db
            + budget.rx_gain_dbi
        )
        assert rebuilt == budget.rx_power_dbm
        assert budget.inr_db == budget.rx_power_dbm - budget.noise_dbm

    def test_monotonic_in_loss_and_gain(self):
        solution, loss = _beam_center_inputs()
        base = compose_link_budget(solution, loss, 1.2, RADIO, PATTERN, RX)
        farther = solve_geometry(
            SatelliteGeometryConfig(slant_range_km=882.38),
            UePlacement(200.0, 180.0),
            EarthModel(),
        )
        lossier = total_path_loss(farther, PropagationConfig(latitude_deg=10.0))
        assert lossier.total_db > loss.total_db
        worse = compose_link_budget(farther, lossier, 1.2, RADIO, PATTERN, RX)
        assert worse.inr_db < base.inr_db
        richer = compose_link_budget(solution, loss, 2.4, RADIO, PATTERN, RX)
        assert richer.inr_db > base.inr_db
