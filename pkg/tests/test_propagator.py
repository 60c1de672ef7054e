"""
Tests for the dispersive propagators, their coefficients and step control,
the GVD optimum and the self-consistent drive cascade.
"""
import math

import numpy as np
import pytest

from raman_beat.analysis import compare_runs
from raman_beat.analytic import BeatParameters
from raman_beat.cli.scenario import load_scenario
from raman_beat.config import SimulationSettings
from raman_beat.core import SidebandSet, TimeGrid, convert_frequency, gaussian_pulse, spectrum_of
from raman_beat.exceptions import (
    AlignmentError,
    CombOverflowError,
    DomainError,
    GridResolutionError,
    StepSizeError,
    ValidationError,
)
from raman_beat.medium import DriveConfig, DriveLine
from raman_beat.propagator import (
    PropagationConfig,
    Scheme,
    assemble_coefficients,
    cascade_selfconsistent,
    check_comb_edges,
    check_resolution,
    create_propagator,
    grid_orders,
    gvd_analysis,
    modulation_bins,
    plan_steps,
    sideband_coefficients,
)
from raman_beat.propagator.time_domain import linear_operator
from raman_beat.service import SimulationService


@pytest.fixture
def probe_grid(period):
    """16 modulation periods on 4096 points."""
    return TimeGrid.commensurate(4096, period, 16)


@pytest.fixture
def probe_800nm(probe_grid, carrier_800nm):
    return gaussian_pulse(probe_grid, carrier_800nm, 10e-15)


class TestCoefficients:
    """Frequency, sideband and time-domain coefficient tables."""

    def test_dispersionless_constants_coincide(self, hydrogen, carrier_800nm):
        tables = assemble_coefficients(hydrogen.dispersionless(), omega0=carrier_800nm.value)
        differences = tables.constants(reduced=False).relative_difference(tables.constants())
        assert max(differences.values()) < 1e-12

    def test_coupling_constants_give_alpha(self, hydrogen, prepared_state, carrier_800nm):
        tables = assemble_coefficients(hydrogen, omega0=carrier_800nm.value)
        alpha = BeatParameters.from_state(hydrogen, prepared_state).alpha
        reduced = tables.constants()
        assert 2.0 * reduced.K * prepared_state.coherence_magnitude == pytest.approx(alpha)
        assert reduced.Q == pytest.approx(-reduced.K)

    def test_ablation(self, hydrogen, carrier_800nm):
        constants = assemble_coefficients(hydrogen, omega0=carrier_800nm.value).constants()
        ablated = constants.ablated(include_group_velocity=False, include_gvd=False)
        assert ablated.K1 == ablated.Q1 == ablated.A2 == ablated.B2 == 0.0
        assert ablated.K2 == constants.K2
        assert set(constants.to_dict()) >= {"A", "K2", "reduced"}

    def test_sideband_derivatives(self, hydrogen):
        omega = np.array([2.0e15, 3.0e15])
        h = 1e9
        c = sideband_coefficients(hydrogen, omega)
        above = sideband_coefficients(hydrogen, omega + h)
        below = sideband_coefficients(hydrogen, omega - h)
        assert np.allclose(c.alpha1, (above.alpha - below.alpha) / (2 * h), rtol=1e-6)
        assert np.allclose(c.g1, (above.g - below.g) / (2 * h), rtol=1e-6)

    def test_on_axis_reuses_tables(self, hydrogen):
        omega = np.linspace(1e15, 3e15, 5)
        tables = assemble_coefficients(hydrogen, omega)
        assert tables.on_axis(omega)["h"] is tables.h_w
        assert np.allclose(tables.on_axis(omega + 1.0)["h"], tables.h_w, rtol=1e-9)


class TestStepControl:
    """Stability guard, resolution and grid alignment."""

    def test_plan_picks_guarded_step(self):
        plan = plan_steps(1e-5, 1e6, PropagationConfig(z_end=1e-5))
        assert plan.dz * 1e6 <= 0.1
        assert plan.z_end == pytest.approx(1e-5)

    def test_configured_step_too_large(self):
        with pytest.raises(StepSizeError, match="stability guard"):
            plan_steps(1e-5, 1e6, PropagationConfig(z_end=1e-5, dz=1e-6))

    def test_zero_length(self):
        assert plan_steps(0.0, 1e6, PropagationConfig(z_end=0.0)).steps == 0

    def test_resolution(self, carrier_800nm):
        check_resolution(3e-17, carrier_800nm.value, 3e4, 50e-6)
        with pytest.raises(GridResolutionError, match="Use dt ≤"):
            check_resolution(3e-16, carrier_800nm.value, 3e4, 50e-6)

    def test_incommensurate_grid(self, omega_m, carrier_800nm):
        grid = TimeGrid.centered(4096, 0.03e-15)
        spectrum = spectrum_of(gaussian_pulse(grid, carrier_800nm, 10e-15))
        with pytest.raises(AlignmentError, match="does not divide"):
            modulation_bins(spectrum, omega_m)

    def test_commensurate_grid(self, probe_800nm, omega_m):
        assert modulation_bins(spectrum_of(probe_800nm), omega_m) == 16

    def test_grid_orders(self, probe_grid, carrier_800nm, omega_m):
        q_min, q_max = grid_orders(probe_grid, carrier_800nm.value, omega_m)
        assert q_min == -3
        assert carrier_800nm.value + q_min * omega_m > 0
        assert carrier_800nm.value + (q_max + 0.5) * omega_m <= np.max(probe_grid.omega())


class TestTimeDomainOperator:
    """Fourier symbol of the constant part of the time-domain equation."""

    def test_nyquist_bin_has_no_group_delay(self, probe_grid):
        symbol = linear_operator(0.0, 2.5e-10, 0.0, probe_grid)
        nu = probe_grid.omega()
        nyquist = probe_grid.n // 2
        others = np.arange(probe_grid.n) != nyquist
        assert symbol[nyquist] == 0
        assert np.allclose(symbol[others], -2.5e-10 * 1j * nu[others])

    def test_dispersion_keeps_nyquist(self, probe_grid):
        symbol = linear_operator(0.0, 0.0, 1e-26, probe_grid)
        nu = probe_grid.omega()[probe_grid.n // 2]
        assert symbol[probe_grid.n // 2] == pytest.approx(0.5j * 1e-26 * nu**2)


class TestPropagationConfig:
    """Validation of run settings and the scheme registry."""

    def test_scheme_parsed(self):
        assert PropagationConfig(z_end=1e-6, scheme="freq-domain").scheme is Scheme.FREQ_DOMAIN

    def test_unknown_scheme(self):
        with pytest.raises(ValidationError, match="Unknown scheme"):
            create_propagator("split-step")

    @pytest.mark.parametrize(
        "options, message",
        [
            ({"z_end": -1.0}, "z_end"),
            ({"z_end": 1e-6, "dz": 0.0}, "dz"),
            ({"z_end": 1e-6, "stability_limit": 0.0}, "stability_limit"),
            ({"z_end": 1e-6, "cascade_orders": (1, 4)}, "cascade_orders"),
            ({"z_end": 1e-6, "medium_step": 0.0}, "medium_step"),
        ],
    )
    def test_invalid_settings(self, options, message):
        with pytest.raises(ValidationError, match=message):
            PropagationConfig(**options)

    def test_with_helpers(self):
        cfg = PropagationConfig(z_end=1e-6).with_z(2e-6).with_scheme("sideband-full")
        assert cfg.z_end == 2e-6
        assert cfg.scheme is Scheme.SIDEBAND_FULL


class TestGvd:
    """Optimal length of GVD-assisted compression."""

    def test_hydrogen_optimum(self, hydrogen, prepared_state, carrier_800nm):
        alpha = BeatParameters.from_state(hydrogen, prepared_state).alpha
        report = gvd_analysis(hydrogen, prepared_state, carrier_800nm, alpha)
        assert report.has_optimum
        assert report.L_opt == pytest.approx(51.5e-6, rel=1e-2)
        assert report.D == pytest.approx(3.09, rel=1e-2)
        assert report.gamma0 == pytest.approx(math.exp(alpha * report.L_opt))

    def test_no_optimum_without_dispersion(self, hydrogen, prepared_state, carrier_800nm):
        report = gvd_analysis(hydrogen.dispersionless(), prepared_state, carrier_800nm, 3e4)
        assert not report.has_optimum
        assert report.to_dict()["D"] is None

    def test_alpha_must_be_positive(self, hydrogen, prepared_state, carrier_800nm):
        with pytest.raises(DomainError, match="must be positive"):
            gvd_analysis(hydrogen, prepared_state, carrier_800nm, 0.0)

    def test_delay_spread_at_optimum(self, hydrogen, prepared_state, carrier_800nm):
        alpha = BeatParameters.from_state(hydrogen, prepared_state).alpha
        optimum = gvd_analysis(hydrogen, prepared_state, carrier_800nm, alpha).L_opt
        report = gvd_analysis(hydrogen, prepared_state, carrier_800nm, alpha, run_length=optimum)
        x = alpha * optimum
        expected = (math.cosh(x) - 1.0) / (x * math.sinh(x))
        assert report.half_period == pytest.approx(math.pi / hydrogen.omega_m)
        assert report.delay_spread / report.half_period == pytest.approx(expected, rel=1e-6)
        assert report.delay_spread < 0.5 * report.half_period

    def test_delay_spread_omitted_without_length(self, hydrogen, prepared_state, carrier_800nm):
        report = gvd_analysis(hydrogen, prepared_state, carrier_800nm, 3e4)
        assert report.delay_spread is None
        assert report.to_dict()["run_length"] is None


@pytest.mark.slow
class TestSchemeAgreement:
    """Every scheme reduces to the exact beat in a dispersionless medium."""

    @pytest.fixture
    def flat(self, hydrogen):
        return hydrogen.dispersionless()

    @pytest.fixture
    def reference(self, flat, probe_800nm, prepared_state, carrier_800nm):
        tables = assemble_coefficients(flat, omega0=carrier_800nm.value)
        cfg = PropagationConfig(z_end=30e-6, scheme=Scheme.DISPERSIONLESS)
        return create_propagator(Scheme.DISPERSIONLESS).propagate(
            probe_800nm, prepared_state, tables, cfg
        )

    @pytest.mark.parametrize(
        "scheme", [Scheme.FREQ_DOMAIN, Scheme.SIDEBAND_FULL, Scheme.TIME_DOMAIN_OFFRES]
    )
    def test_matches_exact_beat(
        self, scheme, flat, probe_800nm, prepared_state, carrier_800nm, reference
    ):
        tables = assemble_coefficients(flat, omega0=carrier_800nm.value)
        cfg = PropagationConfig(z_end=30e-6, scheme=scheme)
        output = create_propagator(scheme).propagate(probe_800nm, prepared_state, tables, cfg)
        assert np.max(np.abs(output.e_real - reference.e_real)) < 2e-2 * reference.peak
        assert compare_runs(output, reference).l2_error < 1e-2
        assert reference.peak > probe_800nm.peak

    @pytest.mark.parametrize(
        "scheme", [Scheme.FREQ_DOMAIN, Scheme.SIDEBAND_FULL, Scheme.TIME_DOMAIN_OFFRES]
    )
    def test_fourth_order_in_dz(self, scheme, flat, probe_800nm, prepared_state, carrier_800nm):
        tables = assemble_coefficients(flat, omega0=carrier_800nm.value)
        runs = [
            create_propagator(scheme)
            .propagate(
                probe_800nm,
                prepared_state,
                tables,
                PropagationConfig(z_end=30e-6, scheme=scheme, stability_limit=limit),
            )
            .e_real
            for limit in (1.0, 0.5, 0.25)
        ]
        coarse = np.linalg.norm(runs[0] - runs[1])
        fine = np.linalg.norm(runs[1] - runs[2])
        assert coarse / fine >= 8


@pytest.mark.slow
class TestDispersiveCompression:
    """GVD on the fig4 preset sharpens the beat beyond the dispersionless output."""

    @pytest.fixture(scope="class")
    def runs(self):
        service = SimulationService(SimulationSettings())
        scenario = load_scenario(preset="fig4")
        return {
            scheme: service.propagate(scenario, scheme=scheme)
            for scheme in ("time-domain-offres", "time-domain-full")
        }

    def test_peak_exceeds_dispersionless(self, runs):
        offres = runs["time-domain-offres"].metrics["versus_dispersionless"]["peak_ratio"]
        full = runs["time-domain-full"].metrics["versus_dispersionless"]["peak_ratio"]
        assert offres > 1.0
        assert full > 1.3
        assert full > offres

    def test_improvement_estimate(self, runs):
        gvd = runs["time-domain-offres"].metrics["gvd"]
        assert gvd["D"] == pytest.approx(3.0, rel=0.3)
        assert gvd["L_opt"] == pytest.approx(51.5e-6, rel=1e-2)
        assert gvd["delay_spread"] < gvd["half_period"]

    def test_reports_constants_of_the_scheme(self, runs):
        offres = runs["time-domain-offres"].metrics["coefficients"]
        full = runs["time-domain-full"].metrics["coefficients"]
        assert offres["A2"] != full["A2"]

    def test_ordering_warning(self, runs):
        assert any("ω₀a′/(ω₀²a″)" in warning for warning in runs["time-domain-full"].warnings)

@pytest.mark.slow
class TestCascadeScenario:
    """The fig6 drive pair prepares a coherence strong enough to beat a probe."""

    @pytest.fixture
    def service(self):
        return SimulationService(SimulationSettings())

    def test_coherence_and_drive_comb(self, service):
        result = service.cascade(load_scenario(preset="fig6"))
        cascade = result.metrics["cascade"]
        assert cascade["rho_ab_at_peak"] >= 0.3
        assert cascade["drive_sidebands"] >= 5
        spectrum = result.metrics["spectrum"]
        assert spectrum["q_as"] - spectrum["q_s"] >= 3

    def test_photon_flux_without_decay(self, service):
        scenario = load_scenario(
            preset="fig6",
            overrides=(
                "preparation.adiabatic.gamma1_per_s=0",
                "preparation.adiabatic.gamma2_per_s=0",
                "probe=null",
            ),
        )
        result = service.cascade(scenario)
        assert abs(result.metrics["cascade"]["photon_flux_change"]) < 1e-6
        assert "pulse" not in result.metrics


class TestCascade:
    """Drive comb and medium evolved together."""

    @pytest.fixture
    def drive(self, omega_m):
        lower = convert_frequency(416.33, "nm").value
        lines = (
            DriveLine.from_intensity(lower, 1e9, 10e-9),
            DriveLine.from_intensity(lower + omega_m, 1e9, 10e-9),
        )
        return DriveConfig(lines, delta=-2 * math.pi * 50e6, gamma1=25e3, gamma2=1e7)

    @pytest.fixture
    def cfg(self):
        return PropagationConfig(
            z_end=1e-6,
            grid=TimeGrid.centered(128, 40e-9 / 128),
            cascade_orders=(-5, 8),
            medium_step=0.5e-6,
        )

    def test_photon_flux_conserved(self, drive, hydrogen, cfg):
        result = cascade_selfconsistent(drive, hydrogen, cfg)
        flux = result.photon_flux()
        assert len(result.combs) == 3
        assert np.allclose(flux, flux[0], rtol=1e-5)
        assert result.state_at_peak().coherence_magnitude > 0.01
        assert result.coherence_map().shape == (3, 128)

    def test_needs_grid(self, drive, hydrogen):
        with pytest.raises(ValidationError, match="τ grid"):
            cascade_selfconsistent(drive, hydrogen, PropagationConfig(z_end=1e-6))

    def test_comb_overflow(self, omega_m):
        env = np.array([0.1, 1.0, 0.1])
        comb = SidebandSet(5 * omega_m, omega_m, 0, 2, env)
        with pytest.raises(CombOverflowError, match="q=2"):
            check_comb_edges(comb, 1e-3)
        check_comb_edges(comb, 0.2)
