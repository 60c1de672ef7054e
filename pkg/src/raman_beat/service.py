import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd

from .analysis import (
    compare_runs,
    count_oscillations,
    mean_frequency,
    measure_pulse,
    measure_spectrum,
    photon_number,
)
from .analytic import (
    BeatParameters,
    bessel_spectrum,
    conservation_report,
    gain_profile,
    propagate_dispersionless,
    sideband_orders,
)
from .cli.scenario import AdiabaticPreparation, GridSpec, MediumSpec, Scenario
from .config import SimulationSettings
from .core import (
    Frequency,
    SampledField,
    SidebandSet,
    TimeGrid,
    convert_frequency,
    delay_field,
    gaussian_pulse,
    spectrum_of,
)
from .data_loader import FieldDataLoader
from .exceptions import EmptyFieldError, ValidationError
from .medium import (
    DriveConfig,
    DriveLine,
    LevelTable,
    MediumParameters,
    PreparedCoherence,
    StateTrajectory,
    TwoLevelState,
    adiabatic_state,
    kappa_of,
    prepared_coherence,
    rabi_and_stark,
    solid_hydrogen,
)
from .propagator import (
    PropagationConfig,
    Scheme,
    assemble_coefficients,
    cascade_selfconsistent,
    create_propagator,
    evolve_medium,
    gvd_analysis,
)
from .schemas import ActionResult
from .utils.hardware import HardwareDetector
from .validators import InputValidator

logger = logging.getLogger(__name__)

FS = 1e-15
NS = 1e-9
UM = 1e-6

ACTIONS = ("prepare", "beat", "propagate", "cascade", "spectrum")


@dataclass(frozen=True, eq=False)
class Preparation:
    """Medium state a probe meets, with how it was obtained."""
    state: TwoLevelState
    prepared: Optional[PreparedCoherence] = None
    drive: Optional[DriveConfig] = None
    trajectory: Optional[StateTrajectory] = None
    peak_index: Optional[int] = None


@dataclass(frozen=True, eq=False)
class ProbeRun:
    """Input probe on the co-moving grid with the beat parameters of the run."""
    field: SampledField
    omega0: float
    beat: BeatParameters


class SimulationService:
    """
    Facade over the physics packages.
    One method per CLI action; each turns a validated Scenario into an ActionResult.
    """

    def __init__(self, settings: SimulationSettings):
        self.settings = settings

        if self.settings.log_hardware_info:
            HardwareDetector.log_hardware_info(
                HardwareDetector.detect_all(settings.worker_threads)
            )

    # ------------------------------------------------------------------ scenario pieces

    def build_medium(self, spec: MediumSpec) -> MediumParameters:
        if spec.preset == "solid-hydrogen":
            reference = (
                convert_frequency(spec.reference_nm, "nm") if spec.reference_nm is not None else None
            )
            params = solid_hydrogen(reference)
            if spec.density_cm3 is not None:
                params = params.with_density(spec.density_cm3 * 1e6)
            if spec.omega_m_cm is not None:
                params = replace(params, omega_m=convert_frequency(spec.omega_m_cm, "cm-1").value)
        else:
            density = spec.density_cm3 * 1e6
            omega_m = convert_frequency(spec.omega_m_cm, "cm-1").value
            reference = convert_frequency(spec.reference_nm, "nm").value
            if spec.level_table is not None:
                levels = LevelTable.from_csv(spec.level_table)
                params = MediumParameters.from_levels(levels, density, omega_m, reference)
            else:
                params = MediumParameters(
                    density=density,
                    omega_m=omega_m,
                    reference=reference,
                    **spec.coefficients.model_dump(),
                )
        if spec.dispersionless:
            params = params.dispersionless()
        return params

    @staticmethod
    def build_grid(spec: GridSpec, period: float) -> TimeGrid:
        if spec.periods is not None:
            return TimeGrid.commensurate(spec.n, period, spec.periods)
        if spec.dt_fs is not None:
            return TimeGrid.centered(spec.n, spec.dt_fs * FS)
        return TimeGrid.centered(spec.n, spec.window_ns * NS / spec.n)

    @staticmethod
    def build_drive(spec: AdiabaticPreparation) -> DriveConfig:
        lines = tuple(
            DriveLine.from_intensity(
                convert_frequency(line.wavelength_nm, "nm").value,
                line.intensity_w_cm2,
                line.width_ns * NS,
                line.peak_time_ns * NS,
                line.phase,
            )
            for line in spec.lines
        )
        return DriveConfig(
            lines=lines,
            delta=2.0 * math.pi * spec.detuning_mhz * 1e6,
            gamma1=spec.gamma1_per_s,
            gamma2=spec.gamma2_per_s,
        )

    def prepare_medium(self, scenario: Scenario, params: MediumParameters) -> Preparation:
        """
        Direct preparation, or adiabatic preparation by two drive lines.

        With a drive grid the density matrix is evolved over τ and the state at
        the drive intensity peak is used; otherwise the dressed state under the
        peak drive fields.
        """
        spec = scenario.preparation
        if spec.direct is not None:
            prepared, state = prepared_coherence(spec.direct.theta, spec.direct.phi0, params)
            return Preparation(state=state, prepared=prepared)

        adiabatic = spec.adiabatic
        drive = self.build_drive(adiabatic)
        drive.check_modulation(params.omega_m)
        medium = params.levels if params.levels is not None else params
        if adiabatic.drive_grid is None:
            peaks = np.array([line.peak_field * np.exp(1j * line.phase) for line in drive.lines])
            comb = SidebandSet(drive.omega0, params.omega_m, 0, 1, peaks)
            prepared, state = adiabatic_state(rabi_and_stark(comb, medium), drive.delta, params)
            return Preparation(state=state, prepared=prepared, drive=drive)

        grid = self.build_grid(adiabatic.drive_grid, params.modulation_period)
        comb = drive.sidebands(grid, 0, 1, params.omega_m)
        trajectory = evolve_medium(
            comb, params, drive, self.settings.ode_rtol, self.settings.ode_atol
        )
        peak = int(np.argmax(np.sum(np.abs(comb.env) ** 2, axis=0)))
        return Preparation(
            state=trajectory.state(peak), drive=drive, trajectory=trajectory, peak_index=peak
        )

    @staticmethod
    def carrier(scenario: Scenario, params: MediumParameters) -> float:
        probe = scenario.probe
        if probe.carrier_nm is not None:
            return convert_frequency(probe.carrier_nm, "nm").value
        return probe.carrier_over_omega_m * params.omega_m

    @staticmethod
    def beat_parameters(
        scenario: Scenario, params: MediumParameters, state: TwoLevelState
    ) -> BeatParameters:
        """
        :raises ValidationError: If αz is prescribed for a medium without coherence
        """
        p = BeatParameters.from_state(params, state)
        run = scenario.run
        if run.alpha_z is None:
            return p.at(run.z_um * UM)
        if p.alpha == 0:
            raise ValidationError(
                "run.alpha_z needs a prepared coherence: the medium has |ρ_ab| = 0"
            )
        return p.at(run.alpha_z / p.alpha)

    def build_probe(
        self, scenario: Scenario, params: MediumParameters, state: TwoLevelState
    ) -> ProbeRun:
        """
        Input probe on the co-moving grid ξ, which coincides with τ at the entrance.

        ``eta_p_over_Tm`` places the peak relative to the gain profile, at
        ξ = η_p − φ/ω_m.

        :raises ValidationError: If the scenario has no probe
        """
        spec = scenario.probe
        if spec is None:
            raise ValidationError("probe: this action needs a probe section")
        omega0 = self.carrier(scenario, params)
        p = self.beat_parameters(scenario, params, state)
        if spec.csv_path is not None:
            field = FieldDataLoader(spec.csv_path).load_field()
            return ProbeRun(field.scaled(spec.amplitude_v_per_m), omega0, p)

        period = params.modulation_period
        grid = self.build_grid(scenario.grid, period)
        width = spec.width_fs * FS if spec.width_fs is not None else spec.width_over_Tm * period
        if spec.eta_p_over_Tm is not None:
            peak_time = spec.eta_p_over_Tm * period - p.phi / p.omega_m
        else:
            peak_time = (spec.peak_time_fs or 0.0) * FS
        field = gaussian_pulse(
            grid,
            Frequency(omega0),
            width,
            peak_time=peak_time,
            amplitude=spec.amplitude_v_per_m,
            width_kind=spec.width_kind,
            phase=spec.phase,
        )
        return ProbeRun(field, omega0, p)

    def propagation_config(
        self, scenario: Scenario, z_end: float, scheme: Optional[Scheme] = None,
        grid: Optional[TimeGrid] = None,
    ) -> PropagationConfig:
        run = scenario.run
        return PropagationConfig(
            z_end=z_end,
            scheme=scheme or run.scheme,
            dz=run.dz_um * UM if run.dz_um is not None else None,
            grid=grid,
            adaptive=run.adaptive,
            rtol=run.rtol,
            atol=run.atol,
            stability_limit=self.settings.stability_limit,
            include_group_velocity=run.include_group_velocity,
            include_gvd=run.include_gvd,
            include_coupling_gvd=run.include_coupling_gvd,
            cascade_orders=tuple(run.cascade_orders),
            medium_step=run.medium_step_um * UM,
            overflow_threshold=run.overflow_threshold,
            ode_rtol=self.settings.ode_rtol,
            ode_atol=self.settings.ode_atol,
        )

    # ------------------------------------------------------------------ shared reporting

    @staticmethod
    def _beat_summary(p: BeatParameters) -> Dict[str, float]:
        return {
            "alpha_per_m": p.alpha,
            "z_m": p.z,
            "alpha_z": p.alpha_z,
            "compression_factor": math.exp(p.alpha_z),
            "phi_rad": p.phi,
            "kappa_per_m": p.kappa,
            "velocity_m_per_s": p.v,
        }

    @staticmethod
    def _pulse_report(
        input_field: SampledField, output_field: SampledField, omega0: float
    ) -> Dict[str, object]:
        if input_field.is_zero() or output_field.is_zero():
            return {"empty": True}
        metrics_in = measure_pulse(input_field)
        metrics_out = measure_pulse(output_field, reference=input_field)
        f_in, f_out = mean_frequency(input_field), mean_frequency(output_field)
        return {
            "empty": False,
            "input": metrics_in.to_dict(),
            "output": metrics_out.to_dict(),
            "mean_frequency_in": f_in,
            "mean_frequency_out": f_out,
            "frequency_ratio": f_out / f_in,
            "peak_intensity_ratio": metrics_out.peak_intensity / metrics_in.peak_intensity,
            "oscillations_in": count_oscillations(input_field),
            "oscillations_out": count_oscillations(output_field),
            "photon_number_in": photon_number(input_field, omega0=omega0),
        }

    @staticmethod
    def _field_frame(
        input_field: SampledField,
        output_field: SampledField,
        p: BeatParameters,
        reference: Optional[SampledField] = None,
    ) -> pd.DataFrame:
        tau = input_field.tau
        eta = tau + p.phi / p.omega_m
        scale = input_field.peak or 1.0
        columns = {
            "tau_fs": tau / FS,
            "eta_over_Tm": eta / p.period,
            "input_V_per_m": input_field.e_real,
            "output_V_per_m": output_field.e_real,
            "input_norm": input_field.e_real / scale,
            "output_norm": output_field.e_real / scale,
            "gain": gain_profile(eta, p),
        }
        if reference is not None:
            columns["dispersionless_norm"] = reference.e_real / scale
        return pd.DataFrame(columns)

    @staticmethod
    def _spectrum_frame(
        input_field: SampledField, output_field: SampledField, omega0: float, omega_m: float
    ) -> pd.DataFrame:
        spec_in, spec_out = spectrum_of(input_field), spectrum_of(output_field)
        positive = spec_in.omega > 0
        omega = spec_in.omega[positive]
        scale = spec_in.power[positive].max() or 1.0
        return pd.DataFrame(
            {
                "omega_over_omega_m": omega / omega_m,
                "order": (omega - omega0) / omega_m,
                "input_power_norm": spec_in.power[positive] / scale,
                "output_power_norm": spec_out.power[positive] / scale,
            }
        )

    def _sideband_report(
        self, scenario: Scenario, field: SampledField, omega0: float, p: BeatParameters,
        result: ActionResult,
    ) -> None:
        """Sideband binning of ``field`` with the Bessel prediction for a long probe."""
        if field.is_zero():
            return
        report = measure_spectrum(
            spectrum_of(field), omega0, p.omega_m, threshold=scenario.run.sideband_threshold
        )
        predicted = sideband_orders(p, omega0)
        result.metrics["spectrum"] = report.to_dict()
        result.metrics["predicted_orders"] = {
            "q_as": predicted.q_as, "q_s": predicted.q_s, "gamma_per_m": predicted.gamma
        }
        if not scenario.wants("sidebands"):
            return
        q_low = max(report.q_s - 2, int(math.ceil(-omega0 / p.omega_m)) + 1)
        bessel = bessel_spectrum(
            p, omega0, (q_low, report.q_as + 2), mode=scenario.run.bessel_mode
        )
        if bessel.validity and not bessel.is_valid():
            result.warnings.append(f"Bessel {bessel.mode.value} outside validity: {bessel.validity}")
        measured = np.array([report.power(int(q)) for q in bessel.orders])
        predicted_power = bessel.powers
        result.series["sidebands"] = pd.DataFrame(
            {
                "q": bessel.orders,
                "measured_fraction": measured / (measured.sum() or 1.0),
                "bessel_fraction": predicted_power / (predicted_power.sum() or 1.0),
            }
        )

    # ------------------------------------------------------------------ actions

    def prepare(self, scenario: Scenario) -> ActionResult:
        """Resolve the medium and its prepared state, without a probe."""
        params = self.build_medium(scenario.medium)
        preparation = self.prepare_medium(scenario, params)
        state = preparation.state
        result = ActionResult(action="prepare")
        result.warnings.extend(params.check_ordering())
        result.metrics["state"] = state.to_dict()
        result.metrics["kappa_per_m"] = kappa_of(params, state)
        p = self.beat_parameters(scenario, params, state)
        result.metrics["beat"] = self._beat_summary(p)
        if preparation.prepared is not None:
            result.metrics["theta_rad"] = preparation.prepared.theta
            result.metrics["rho0"] = preparation.prepared.rho0
        if preparation.drive is not None:
            result.metrics["drive_omega_m"] = preparation.drive.omega_m
        if scenario.probe is not None and p.alpha > 0:
            omega0 = self.carrier(scenario, params)
            result.metrics["gvd"] = gvd_analysis(params, state, omega0, p.alpha).to_dict()
        trajectory = preparation.trajectory
        if trajectory is not None:
            result.metrics["trace_error"] = trajectory.trace_error()
            if scenario.wants("coherence"):
                result.series["coherence"] = pd.DataFrame(
                    {
                        "tau_ns": trajectory.grid.tau / NS,
                        "rho_aa": trajectory.rho_aa,
                        "rho_bb": trajectory.rho_bb,
                        "rho_ab_abs": np.abs(trajectory.rho_ab),
                        "rho_ab_phase": np.angle(trajectory.rho_ab),
                    }
                )
        result.parameters = {"omega_m": params.omega_m, "density_m3": params.density}
        logger.info(f"Prepared medium: |ρ_ab| = {state.coherence_magnitude:.4f}")
        return result

    def beat(self, scenario: Scenario) -> ActionResult:
        """Exact dispersionless beat of the probe with the prepared coherence."""
        params = self.build_medium(scenario.medium)
        preparation = self.prepare_medium(scenario, params)
        run = self.build_probe(scenario, params, preparation.state)
        p = run.beat
        InputValidator.validate_probe_window(run.field)
        InputValidator.validate_sampling(run.field.grid, run.omega0, p.alpha_z)

        # the analytic solution lives on η = ξ + φ/ω_m
        offset = p.phi / p.omega_m
        grid = run.field.grid
        eta_grid = TimeGrid(grid.origin + offset, grid.dt, grid.n)
        input_eta = SampledField(eta_grid, run.field.e_real)
        output_eta = propagate_dispersionless(input_eta, p)
        output = SampledField(grid, output_eta.e_real)

        result = ActionResult(action="beat")
        result.metrics["beat"] = self._beat_summary(p)
        result.metrics["pulse"] = self._pulse_report(run.field, output, run.omega0)
        if not run.field.is_zero():
            result.metrics["conservation"] = conservation_report(
                input_eta, output_eta, run.omega0, p
            ).to_dict()
        self._sideband_report(scenario, output, run.omega0, p, result)
        self._write_series(scenario, result, run, output, p)
        result.parameters = {"omega0": run.omega0, "omega_m": p.omega_m}
        return result

    def propagate(self, scenario: Scenario, scheme: Optional[Union[str, Scheme]] = None) -> ActionResult:
        """
        Dispersive propagation through the frozen prepared medium with the chosen
        scheme, compared against the dispersionless solution.
        """
        scheme = Scheme.parse(scheme) if scheme is not None else scenario.run.scheme
        params = self.build_medium(scenario.medium)
        preparation = self.prepare_medium(scenario, params)
        state = preparation.state
        run = self.build_probe(scenario, params, state)
        p = run.beat
        InputValidator.validate_probe_window(run.field)
        InputValidator.validate_sampling(run.field.grid, run.omega0, p.alpha_z)

        result = ActionResult(action="propagate")
        result.warnings.extend(params.check_ordering())
        tables = assemble_coefficients(params, omega0=run.omega0)
        cfg = self.propagation_config(scenario, p.z, scheme)
        logger.info(f"Propagating with scheme {scheme.value} to z = {p.z / UM:.2f} μm")
        output = create_propagator(scheme).propagate(run.field, state, tables, cfg)

        reference = None
        if scheme is not Scheme.DISPERSIONLESS:
            reference = create_propagator(Scheme.DISPERSIONLESS).propagate(
                run.field, state, tables, cfg
            )

        result.metrics["scheme"] = scheme.value
        result.metrics["beat"] = self._beat_summary(p)
        result.metrics["coefficients"] = tables.constants(
            reduced=scheme is not Scheme.TIME_DOMAIN_FULL
        ).to_dict()
        result.metrics["pulse"] = self._pulse_report(run.field, output, run.omega0)
        if reference is not None and not output.is_zero():
            result.metrics["versus_dispersionless"] = compare_runs(output, reference).to_dict()
        if p.alpha > 0:
            result.metrics["gvd"] = gvd_analysis(
                params, state, run.omega0, p.alpha, run_length=p.z
            ).to_dict()
        self._sideband_report(scenario, output, run.omega0, p, result)
        self._write_series(scenario, result, run, output, p, reference)
        result.parameters = {"omega0": run.omega0, "omega_m": p.omega_m, "scheme": scheme.value}
        return result

    def cascade(self, scenario: Scenario) -> ActionResult:
        """
        Self-consistent drive cascade; a probe, when present, then crosses the
        medium plane by plane, meeting the coherence at the drive peak.

        :raises ValidationError: Without adiabatic preparation on a drive grid
        """
        spec = scenario.preparation.adiabatic
        if spec is None or spec.drive_grid is None:
            raise ValidationError(
                "preparation.adiabatic.drive_grid: the cascade needs drive lines and a τ grid"
            )
        params = self.build_medium(scenario.medium)
        drive = self.build_drive(spec)
        grid = self.build_grid(spec.drive_grid, params.modulation_period)
        z_end = scenario.run.z_um * UM
        cfg = self.propagation_config(scenario, z_end, grid=grid)
        cascade = cascade_selfconsistent(drive, params, cfg)

        result = ActionResult(action="cascade")
        peak = cascade.peak_index()
        states = [cascade.state_at_peak(i) for i in range(len(cascade.trajectories))]
        flux = cascade.photon_flux()
        final = cascade.final_comb.integrated_powers()
        significant = int(np.count_nonzero(final > scenario.run.sideband_threshold * final.max()))
        result.metrics["cascade"] = {
            "planes": len(cascade.trajectories),
            "rho_ab_at_peak": abs(states[0].rho_ab),
            "rho_ab_at_peak_exit": abs(states[-1].rho_ab),
            "drive_sidebands": significant,
            "photon_flux_change": float(flux[-1] / flux[0] - 1.0) if flux[0] else 0.0,
        }
        if scenario.wants("sidebands"):
            initial = cascade.combs[0].integrated_powers()
            result.series["drive_sidebands"] = pd.DataFrame(
                {
                    "q": cascade.final_comb.orders,
                    "omega_over_omega_m": cascade.final_comb.frequencies / params.omega_m,
                    "entrance_norm": initial / (initial.max() or 1.0),
                    "exit_norm": final / (final.max() or 1.0),
                }
            )
        if scenario.wants("coherence"):
            result.series["coherence"] = pd.DataFrame(
                {
                    "z_um": cascade.z / UM,
                    "rho_aa": [s.rho_aa for s in states],
                    "rho_bb": [s.rho_bb for s in states],
                    "rho_ab_abs": [abs(s.rho_ab) for s in states],
                    "rho_ab_phase": [float(np.angle(s.rho_ab)) for s in states],
                }
            )
        result.parameters = {"omega_m": params.omega_m, "peak_index": peak}

        if scenario.probe is not None:
            self._probe_through_planes(scenario, params, cascade.z, states, result)
        return result

    def _probe_through_planes(
        self, scenario: Scenario, params: MediumParameters, z: np.ndarray,
        states: List[TwoLevelState], result: ActionResult,
    ) -> None:
        run = self.build_probe(scenario, params, states[0])
        InputValidator.validate_probe_window(run.field)
        tables = assemble_coefficients(params, omega0=run.omega0)
        propagator = create_propagator(scenario.run.scheme)
        field = run.field
        for plane in range(len(z) - 1):
            dz = float(z[plane + 1] - z[plane])
            state = states[plane]
            cfg = self.propagation_config(scenario, dz)
            output = propagator.propagate(field, state, tables, cfg)
            # back from the co-moving frame of this segment to local time τ
            field = delay_field(output, dz * kappa_of(params, state) / params.omega_m)
        p = BeatParameters.from_state(params, states[0], float(z[-1]))
        result.metrics["pulse"] = self._pulse_report(run.field, field, run.omega0)
        self._sideband_report(scenario, field, run.omega0, p, result)
        self._write_series(scenario, result, ProbeRun(run.field, run.omega0, p), field, p)

    def spectrum(self, scenario: Scenario, field_path: Optional[str] = None) -> ActionResult:
        """
        Sideband analysis of a stored field, or of the dispersionless beat output.
        """
        if field_path is None:
            beat = self.beat(scenario)
            beat.action = "spectrum"
            return beat
        params = self.build_medium(scenario.medium)
        preparation = self.prepare_medium(scenario, params)
        p = self.beat_parameters(scenario, params, preparation.state)
        omega0 = self.carrier(scenario, params)
        field = FieldDataLoader(field_path).load_field()
        result = ActionResult(action="spectrum")
        if field.is_zero():
            raise EmptyFieldError(f"Field in {field_path} is identically zero")
        self._sideband_report(scenario, field, omega0, p, result)
        if scenario.wants("spectrum"):
            spectrum = spectrum_of(field)
            positive = spectrum.omega > 0
            power = spectrum.power[positive]
            result.series["spectrum"] = pd.DataFrame(
                {
                    "omega_over_omega_m": spectrum.omega[positive] / p.omega_m,
                    "order": (spectrum.omega[positive] - omega0) / p.omega_m,
                    "power_norm": power / (power.max() or 1.0),
                }
            )
        result.parameters = {"omega0": omega0, "omega_m": p.omega_m, "field_path": field_path}
        return result

    def run(self, scenario: Scenario, action: str, **options) -> ActionResult:
        """
        :raises ValidationError: For an unknown action
        """
        if action not in ACTIONS:
            raise ValidationError(f"Unknown action '{action}'. Expected one of: {', '.join(ACTIONS)}")
        return getattr(self, action)(scenario, **options)

    def _write_series(
        self, scenario: Scenario, result: ActionResult, run: ProbeRun, output: SampledField,
        p: BeatParameters, reference: Optional[SampledField] = None,
    ) -> None:
        if scenario.wants("field"):
            result.series["field"] = self._field_frame(run.field, output, p, reference)
        if scenario.wants("spectrum"):
            result.series["spectrum"] = self._spectrum_frame(
                run.field, output, run.omega0, p.omega_m
            )
