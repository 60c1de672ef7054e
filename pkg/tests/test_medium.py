"""
Tests for the medium: coefficients, level tables, drives, Rabi frequencies
and the prepared two-level state.
"""
import math

import numpy as np
import pytest

from raman_beat.core import SidebandSet, TimeGrid, convert_frequency
from raman_beat.exceptions import (
    DegenerateStateError,
    DomainError,
    SingularityError,
    ValidationError,
)
from raman_beat.medium import (
    DriveConfig,
    DriveLine,
    LevelTable,
    MediumParameters,
    RabiFrequencies,
    TwoLevelState,
    adiabatic_state,
    evolve_state,
    kappa_of,
    mixing_angle,
    peak_field_from_intensity,
    polarizability,
    prepared_coherence,
    rabi_and_stark,
    rabi_quadrature,
    solid_hydrogen,
)

from .conftest import THETA


@pytest.fixture
def levels(omega_m):
    """One UV level coupling both Raman states, ω_j − ω_b = ω_j − ω_a − ω_m."""
    detuning_a = convert_frequency(90000.0, "cm-1").value
    return LevelTable.from_entries([(detuning_a, detuning_a - omega_m, 1e-30, 1.2e-30)])


@pytest.fixture
def drive_lines(omega_m):
    lower = convert_frequency(416.33, "nm").value
    return (
        DriveLine(lower, 1e8, 10e-9),
        DriveLine(lower + omega_m, 1e8, 10e-9),
    )


class TestMediumParameters:
    """Solid hydrogen coefficients and their Taylor extension."""

    def test_solid_hydrogen_reference(self, hydrogen):
        assert hydrogen.reference == pytest.approx(convert_frequency(800.0, "nm").value)
        assert hydrogen.omega_m == pytest.approx(7.81659e14, rel=1e-5)
        assert hydrogen.density == pytest.approx(2.6e28)

    def test_coefficients_at_reference(self, hydrogen):
        values = hydrogen.coefficients_at(hydrogen.reference)
        assert values.a == pytest.approx(hydrogen.a0)
        assert values.d1 == pytest.approx(hydrogen.d1)

    def test_shifted_reference_keeps_values(self, hydrogen):
        omega = convert_frequency(400.0, "nm").value
        shifted = solid_hydrogen(convert_frequency(400.0, "nm"))
        assert shifted.reference == pytest.approx(omega)
        assert shifted.a0 == pytest.approx(hydrogen.coefficients_at(omega).a, rel=1e-12)
        assert shifted.a2 == pytest.approx(hydrogen.a2)

    def test_evaluate_matches_pointwise(self, hydrogen):
        omegas = np.array([2.0e15, 2.35e15, 3.0e15])
        evaluated = hydrogen.evaluate(omegas)
        for i, omega in enumerate(omegas):
            assert evaluated["b"][i] == pytest.approx(hydrogen.coefficients_at(omega).b)

    def test_dispersionless(self, hydrogen):
        flat = hydrogen.dispersionless()
        assert flat.is_dispersionless
        assert flat.a0 == hydrogen.a0
        assert flat.check_ordering() == []

    def test_second_order_ordering_flagged(self, hydrogen):
        violations = hydrogen.check_ordering()
        assert any(v.startswith("ω₀a′") for v in violations)
        assert not any(v.startswith("a0/") for v in violations)

    def test_with_density(self, hydrogen):
        assert hydrogen.with_density(1e27).coupling_constant == pytest.approx(
            hydrogen.coupling_constant / 26.0
        )

    @pytest.mark.parametrize("field", ["density", "omega_m", "reference"])
    def test_non_positive_rejected(self, field):
        values = {"density": 1e28, "omega_m": 1e14, "reference": 2e15, "a0": 1.0, "b0": 1.0, "d0": 1.0}
        values[field] = 0.0
        with pytest.raises(ValidationError, match="must be positive"):
            MediumParameters(**values)

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError, match="finite"):
            MediumParameters(1e28, 1e14, 2e15, float("nan"), 1.0, 1.0)


class TestLevelTable:
    """Level sums and their derivatives."""

    def test_a_and_b_even_in_frequency(self, levels):
        omega = convert_frequency(600.0, "nm").value
        assert polarizability(levels, omega).a == pytest.approx(polarizability(levels, -omega).a)
        assert polarizability(levels, omega).b == pytest.approx(polarizability(levels, -omega).b)

    def test_derivatives_match_finite_differences(self, levels):
        omega = convert_frequency(600.0, "nm").value
        h = omega * 1e-5
        centre = polarizability(levels, omega)
        above, below = polarizability(levels, omega + h), polarizability(levels, omega - h)
        assert centre.d1 == pytest.approx((above.d - below.d) / (2 * h), rel=1e-6)
        assert centre.a2 == pytest.approx((above.a1 - below.a1) / (2 * h), rel=1e-6)

    def test_from_levels_uses_exact_sums(self, levels, omega_m):
        reference = convert_frequency(800.0, "nm").value
        params = MediumParameters.from_levels(levels, 2.6e28, omega_m, reference)
        omega = convert_frequency(500.0, "nm").value
        assert params.coefficients_at(omega).a == pytest.approx(polarizability(levels, omega).a)

    def test_resonance_raises(self, levels):
        with pytest.raises(SingularityError, match="resonant with level 0"):
            polarizability(levels, float(levels.detuning_a[0]))

    def test_csv_round_trip(self, tmp_path, levels):
        path = tmp_path / "levels.csv"
        levels.to_frame().to_csv(path, index=False)
        loaded = LevelTable.from_csv(path)
        assert np.allclose(loaded.detuning_b, levels.detuning_b, rtol=1e-12)
        assert np.allclose(loaded.mu_b, levels.mu_b)

    def test_csv_missing_column(self, tmp_path):
        path = tmp_path / "levels.csv"
        path.write_text("detuning_a_cm-1,mu_a_Cm\n90000,1e-30\n")
        with pytest.raises(ValidationError, match="missing level-table columns"):
            LevelTable.from_csv(path)

    def test_ragged_columns_rejected(self):
        with pytest.raises(ValidationError, match="equal length"):
            LevelTable(np.array([1e16, 2e16]), np.array([1e16]), np.array([1e-30]), np.array([1e-30]))


class TestDrive:
    """Drive lines and the two-line configuration."""

    def test_peak_field_from_intensity(self):
        assert peak_field_from_intensity(1e9) == pytest.approx(8.6802e7, rel=1e-4)

    def test_negative_intensity(self):
        with pytest.raises(DomainError):
            peak_field_from_intensity(-1.0)

    def test_lines_sorted_by_frequency(self, drive_lines):
        config = DriveConfig((drive_lines[1], drive_lines[0]))
        assert config.lines[0] is drive_lines[0]
        assert config.omega0 == drive_lines[0].frequency

    def test_hydrogen_line_pair_matches_modulation(self, omega_m):
        lines = (
            DriveLine.from_intensity(convert_frequency(416.33, "nm").value, 1e9, 10e-9),
            DriveLine.from_intensity(convert_frequency(355.0, "nm").value, 1e9, 10e-9),
        )
        config = DriveConfig(lines, delta=-2 * math.pi * 50e6)
        config.check_modulation(omega_m)
        assert config.raman_frequency == pytest.approx(config.omega_m + config.delta)

    def test_mismatched_separation(self, omega_m):
        lines = (
            DriveLine(convert_frequency(400.0, "nm").value, 1e8, 10e-9),
            DriveLine(convert_frequency(355.0, "nm").value, 1e8, 10e-9),
        )
        with pytest.raises(ValidationError, match="does not match"):
            DriveConfig(lines).check_modulation(omega_m)

    def test_equal_frequencies_rejected(self, drive_lines):
        with pytest.raises(ValidationError, match="different frequencies"):
            DriveConfig((drive_lines[0], drive_lines[0]))

    def test_negative_decay_rejected(self, drive_lines):
        with pytest.raises(ValidationError, match="non-negative"):
            DriveConfig(drive_lines, gamma1=-1.0)

    def test_sampled_sidebands(self, drive_lines):
        grid = TimeGrid.centered(64, 1e-9)
        comb = DriveConfig(drive_lines).sidebands(grid, -1, 2)
        assert comb.env.shape == (4, 64)
        assert np.allclose(comb.envelope(1), drive_lines[1].envelope(grid.tau))
        assert not np.any(comb.envelope(-1))

    def test_sidebands_need_both_orders(self, drive_lines):
        with pytest.raises(DomainError):
            DriveConfig(drive_lines).sidebands(TimeGrid.centered(64, 1e-9), 1, 2)


class TestRabiFrequencies:
    """Stationary Stark shifts and two-photon Rabi frequencies."""

    def test_level_table_and_coefficients_agree(self, levels, drive_lines, omega_m):
        comb = SidebandSet(drive_lines[0].frequency, omega_m, 0, 1, np.array([1e8, 0.6e8]))
        params = MediumParameters.from_levels(levels, 2.6e28, omega_m, drive_lines[0].frequency)
        exact = rabi_and_stark(comb, levels)
        expanded = rabi_and_stark(comb, params)
        assert expanded.omega_aa == pytest.approx(exact.omega_aa, rel=1e-9)
        assert expanded.omega_bb == pytest.approx(exact.omega_bb, rel=1e-9)
        assert expanded.omega_ab == pytest.approx(exact.omega_ab, rel=1e-9)

    def test_quadrature_reduces_to_stationary_sum(self, levels, drive_lines, omega_m):
        comb = SidebandSet(
            drive_lines[0].frequency,
            omega_m,
            0,
            1,
            np.array([line.envelope(0.0) for line in drive_lines]),
        )
        stationary = rabi_and_stark(comb, levels)
        continuous = rabi_quadrature(levels, drive_lines, 0.0, omega_m)
        assert continuous.omega_aa == pytest.approx(stationary.omega_aa, rel=1e-6)
        assert continuous.omega_bb == pytest.approx(stationary.omega_bb, rel=1e-6)
        assert abs(continuous.omega_ab - stationary.omega_ab) < 1e-6 * abs(stationary.omega_ab)

    def test_sampled_comb_gives_arrays(self, hydrogen, drive_lines, omega_m):
        grid = TimeGrid.centered(32, 2e-9)
        rabi = rabi_and_stark(DriveConfig(drive_lines).sidebands(grid, omega_m=omega_m), hydrogen)
        assert rabi.omega_aa.shape == (32,)
        assert np.allclose(rabi.omega_ba, np.conj(rabi.omega_ab))
        assert rabi.at(16).omega_aa == pytest.approx(float(rabi.omega_aa[16]))


class TestTwoLevelState:
    """Density-matrix validation, preparation and adiabatic following."""

    def test_prepared_populations(self, prepared):
        coherence, state = prepared
        assert state.rho_aa == pytest.approx(math.cos(THETA) ** 2)
        assert state.rho_bb == pytest.approx(0.151647, rel=1e-5)
        assert state.coherence_magnitude == pytest.approx(0.358678, rel=1e-5)
        assert coherence.rho0 == pytest.approx(state.coherence_magnitude)

    def test_kappa(self, hydrogen, prepared_state):
        assert kappa_of(hydrogen, prepared_state) == pytest.approx(1.9797e5, rel=1e-3)

    def test_coherence_phase_advances(self, prepared):
        coherence, _ = prepared
        later = coherence.state_at(1e-5)
        advance = np.angle(later.rho_ab / coherence.state_at(0.0).rho_ab)
        assert advance == pytest.approx(-coherence.kappa * 1e-5)
        assert later.coherence_magnitude == pytest.approx(coherence.rho0)

    def test_populations_must_sum_to_one(self):
        with pytest.raises(DomainError, match="sum to one"):
            TwoLevelState(0.7, 0.2)

    def test_coherence_bounded(self):
        with pytest.raises(DomainError, match="exceeds"):
            TwoLevelState(0.5, 0.5, 0.6)

    def test_mixing_angle_out_of_range(self):
        with pytest.raises(DomainError):
            prepared_coherence(2.0)

    def test_adiabatic_state_reproduces_mixing_angle(self, hydrogen):
        delta = -1e9
        magnitude = 0.5 * math.tan(-2 * THETA) * abs(delta)
        omega_ab = magnitude * np.exp(0.3j)
        rabi = RabiFrequencies(0.0, 0.0, omega_ab, np.conj(omega_ab))
        coherence, state = adiabatic_state(rabi, delta, hydrogen)
        assert coherence.theta == pytest.approx(THETA)
        assert coherence.phi0 == pytest.approx(0.3)
        assert state.rho_aa == pytest.approx(0.85, abs=0.01)
        assert state.coherence_magnitude == pytest.approx(0.36, abs=0.01)
        assert coherence.kappa > 0

    def test_degenerate_mixing_angle(self):
        with pytest.raises(DegenerateStateError):
            mixing_angle(RabiFrequencies.zero(), 0.0)


class TestDynamics:
    """Density-matrix integration."""

    def test_free_decay(self):
        lines = (DriveLine(3e15, 0.0, 1e-8), DriveLine(4e15, 0.0, 1e-8))
        drive = DriveConfig(lines, gamma1=1e6, gamma2=2e6)
        grid = TimeGrid(0.0, 1e-8, 101)
        trajectory = evolve_state(
            TwoLevelState(0.5, 0.5, 0.5), drive, lambda tau: RabiFrequencies.zero(), grid
        )
        final = trajectory.state(grid.n - 1)
        assert final.rho_bb == pytest.approx(0.5 * math.exp(-1.0), rel=1e-6)
        assert final.coherence_magnitude == pytest.approx(0.5 * math.exp(-2.0), rel=1e-6)
        assert trajectory.trace_error() < 1e-9
        assert trajectory.at_time(0.0).rho_aa == pytest.approx(0.5)
