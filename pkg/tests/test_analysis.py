"""
Tests for pulse metrics, sideband binning and run comparison.
"""
import numpy as np
import pytest
from scipy.constants import hbar

from raman_beat.analysis import (
    compare_runs,
    count_oscillations,
    mean_frequency,
    measure_pulse,
    measure_spectrum,
    phase_advance,
    photon_number,
)
from raman_beat.analytic import propagate_dispersionless
from raman_beat.core import Frequency, SampledField, Spectrum, TimeGrid, gaussian_pulse, spectrum_of
from raman_beat.exceptions import DomainError, EmptyFieldError


@pytest.fixture
def probe_grid(period):
    return TimeGrid.commensurate(4096, period, 16)


@pytest.fixture
def short_pulse(probe_grid, carrier_800nm):
    return gaussian_pulse(probe_grid, carrier_800nm, 10e-15)


@pytest.fixture
def pulse_train(probe_grid, omega_m, period):
    """Five 0.1 T_m sub-pulses, one per modulation period, strongest at τ = 0."""
    carrier = Frequency(20.0 * omega_m)
    total = np.zeros(probe_grid.n)
    for n, amplitude in zip(range(-2, 3), (0.8, 0.9, 1.0, 0.9, 0.8)):
        pulse = gaussian_pulse(probe_grid, carrier, 0.1 * period, n * period, amplitude)
        total += pulse.e_real
    return SampledField(probe_grid, total)


class TestPulseMetrics:
    """Width, peak and train diagnostics of |ℰ|²."""

    def test_gaussian(self, short_pulse):
        metrics = measure_pulse(short_pulse)
        assert metrics.intensity_fwhm == pytest.approx(10e-15, rel=1e-3)
        assert metrics.peak_amplitude == pytest.approx(1.0, rel=1e-3)
        assert metrics.peak_time == pytest.approx(0.0, abs=1e-17)
        assert metrics.subpulse_count == 1
        assert metrics.train_period is None
        assert metrics.compression_factor is None

    def test_compression_factor(self, probe_grid, carrier_800nm, short_pulse):
        wide = gaussian_pulse(probe_grid, carrier_800nm, 15e-15)
        metrics = measure_pulse(short_pulse, reference=wide)
        assert metrics.compression_factor == pytest.approx(1.5, rel=1e-3)

    def test_pulse_train(self, pulse_train, period):
        metrics = measure_pulse(pulse_train)
        assert metrics.subpulse_count == 5
        assert metrics.train_period == pytest.approx(period, rel=1e-6)
        assert metrics.intensity_fwhm == pytest.approx(0.1 * period, rel=1e-2)
        assert metrics.peak_time == pytest.approx(0.0, abs=1e-3 * period)

    def test_zero_field(self, probe_grid):
        with pytest.raises(EmptyFieldError, match="all-zero"):
            measure_pulse(SampledField(probe_grid, np.zeros(probe_grid.n)))

    def test_mean_frequency(self, short_pulse, carrier_800nm):
        assert mean_frequency(short_pulse) == pytest.approx(carrier_800nm.value, rel=1e-3)


class TestPhotonNumber:
    """Photon number per unit area."""

    def test_matches_energy_over_photon_energy(self, short_pulse, carrier_800nm):
        omega0 = carrier_800nm.value
        energy = measure_pulse(short_pulse).energy
        assert photon_number(short_pulse, omega0) == pytest.approx(energy / (2 * hbar * omega0))

    def test_local_frequency_override(self, short_pulse, carrier_800nm):
        omega = np.full(short_pulse.grid.n, carrier_800nm.value)
        constant = photon_number(short_pulse, carrier_800nm.value)
        assert photon_number(short_pulse, omega_osc=omega) == pytest.approx(constant)
        assert photon_number(short_pulse.scaled(2.0), carrier_800nm.value) == pytest.approx(4 * constant)

    def test_needs_a_frequency(self, short_pulse):
        with pytest.raises(DomainError, match="omega0 or omega_osc"):
            photon_number(short_pulse)


class TestOscillations:
    def test_half_crossings(self, probe_grid):
        values = np.sin(np.linspace(0.1, 6 * np.pi - 0.1, probe_grid.n))
        assert count_oscillations(SampledField(probe_grid, values)) == 2.5

    def test_interval(self, probe_grid):
        values = np.sin(np.linspace(0.1, 6 * np.pi - 0.1, probe_grid.n))
        quarter = (probe_grid.tau[0], probe_grid.tau[probe_grid.n // 4])
        assert count_oscillations(SampledField(probe_grid, values), interval=quarter) == 0.5

    def test_ripple_below_threshold_ignored(self, probe_grid):
        values = np.sin(np.linspace(0.1, 6 * np.pi - 0.1, probe_grid.n))
        values[: probe_grid.n // 8] = 1e-9 * (-1.0) ** np.arange(probe_grid.n // 8)
        assert count_oscillations(SampledField(probe_grid, values)) == 2.5

    def test_zero_field(self, probe_grid):
        assert count_oscillations(SampledField(probe_grid, np.zeros(probe_grid.n))) == 0.0

    def test_phase_advance_of_unchirped_pulse(self, short_pulse, carrier_800nm):
        advance = phase_advance(short_pulse, -10e-15, 10e-15)
        assert advance == pytest.approx(carrier_800nm.value * 20e-15, rel=1e-6)


class TestSpectralReport:
    """Sideband windows of input and beat spectra."""

    def test_probe_occupies_one_window(self, fig2_probe, omega_m):
        report = measure_spectrum(spectrum_of(fig2_probe), 5.2 * omega_m, omega_m)
        assert report.q_as == report.q_s == 0
        assert not report.continuous
        assert report.stokes_fraction < 1e-12
        assert report.anti_stokes_fraction < 1e-12
        assert report.binned_power == pytest.approx(report.total_power, rel=1e-12)

    def test_beat_generates_sidebands(self, fig2_probe, fig2_params, omega_m):
        output = propagate_dispersionless(fig2_probe, fig2_params)
        report = measure_spectrum(spectrum_of(output), Frequency(5.2 * omega_m), omega_m)
        assert report.q_as >= 4
        assert report.q_s <= -2
        assert report.anti_stokes_fraction > report.stokes_fraction
        assert report.power(report.q_as) > 0.0
        assert report.power(1000) == 0.0
        assert report.binned_power == pytest.approx(report.total_power, rel=1e-12)
        assert set(report.significant_orders()) >= set(range(-2, 5))
        assert report.to_dict()["sidebands"][0] == pytest.approx(report.power(0))

    def test_empty_spectrum(self):
        omega = np.linspace(-1e15, 1e15, 11)
        with pytest.raises(EmptyFieldError, match="no positive-frequency content"):
            measure_spectrum(Spectrum(omega, np.zeros(11)), 5e14, 1e14)


class TestCompareRuns:
    """Cross-validation metrics."""

    def test_identical_runs(self, short_pulse):
        comparison = compare_runs(short_pulse, short_pulse)
        assert comparison.l2_error == 0.0
        assert comparison.peak_ratio == pytest.approx(1.0)
        assert comparison.fwhm_ratio == pytest.approx(1.0)

    def test_scaled_run(self, short_pulse):
        comparison = compare_runs(short_pulse, short_pulse.scaled(2.0))
        assert comparison.l2_error == pytest.approx(0.5)
        assert comparison.peak_ratio == pytest.approx(0.25)
        assert comparison.fwhm_ratio == pytest.approx(1.0)

    def test_different_grids(self, short_pulse, fig2_probe):
        with pytest.raises(DomainError, match="different grids"):
            compare_runs(short_pulse, fig2_probe)
