"""
Tests for scenario documents: presets, overrides and validation messages.
"""
import copy
import json

import pytest

from raman_beat.cli.scenario import (
    apply_overrides,
    list_presets,
    load_scenario,
    read_preset,
    validate_scenario,
)
from raman_beat.exceptions import ValidationError
from raman_beat.propagator import Scheme


@pytest.fixture
def fig2_data():
    return read_preset("fig2")


class TestPresets:
    """Bundled scenarios."""

    def test_listed(self):
        presets = list_presets()
        assert {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig4", "fig5", "fig6"} <= set(presets)
        assert presets == sorted(presets)

    @pytest.mark.parametrize("name", ["fig2", "fig3a", "fig3c", "fig4", "fig5", "fig6"])
    def test_presets_validate(self, name):
        scenario = load_scenario(preset=name)
        assert scenario.name == name
        assert scenario.grid.n & (scenario.grid.n - 1) == 0

    def test_fig2_settings(self):
        scenario = load_scenario(preset="fig2")
        assert scenario.run.alpha_z == 0.6
        assert scenario.run.scheme is Scheme.DISPERSIONLESS
        assert scenario.probe.carrier_over_omega_m == 5.2
        assert scenario.preparation.direct.theta == -0.4

    def test_unknown_preset(self):
        with pytest.raises(ValidationError, match="Unknown preset 'fig9'"):
            read_preset("fig9")


class TestOverrides:
    """Dotted ``key=value`` assignments."""

    def test_values_parsed_as_json(self, fig2_data):
        data = apply_overrides(fig2_data, ["run.alpha_z=1.4", "run.scheme=freq-domain", "name=strong"])
        assert data["run"]["alpha_z"] == 1.4
        assert data["run"]["scheme"] == "freq-domain"
        assert data["name"] == "strong"

    def test_missing_sections_created(self):
        assert apply_overrides({}, ["run.z_um=40"]) == {"run": {"z_um": 40}}

    def test_needs_equals_sign(self, fig2_data):
        with pytest.raises(ValidationError, match="key.path=value"):
            apply_overrides(fig2_data, ["run.alpha_z"])

    def test_cannot_descend_into_value(self, fig2_data):
        with pytest.raises(ValidationError, match="not a section"):
            apply_overrides(fig2_data, ["name.first=1"])

    def test_load_applies_overrides_last(self):
        scenario = load_scenario(preset="fig2", overrides=["run.alpha_z=1.4"])
        assert scenario.run.alpha_z == 1.4


class TestValidation:
    """Field-level checks with path-qualified messages."""

    def test_grid_must_be_power_of_two(self, fig2_data):
        fig2_data["grid"]["n"] = 1000
        with pytest.raises(ValidationError, match="grid.n"):
            validate_scenario(fig2_data)

    def test_grid_needs_one_size(self, fig2_data):
        fig2_data["grid"]["dt_fs"] = 0.1
        with pytest.raises(ValidationError, match="exactly one of periods, dt_fs, window_ns"):
            validate_scenario(fig2_data)

    def test_probe_needs_one_carrier(self, fig2_data):
        fig2_data["probe"]["carrier_nm"] = 800.0
        with pytest.raises(ValidationError, match="carrier_nm, carrier_over_omega_m"):
            validate_scenario(fig2_data)

    def test_mixing_angle_range(self, fig2_data):
        fig2_data["preparation"]["direct"]["theta"] = 2.0
        with pytest.raises(ValidationError, match="preparation.direct.theta"):
            validate_scenario(fig2_data)

    def test_unknown_field_rejected(self, fig2_data):
        fig2_data["run"]["speed"] = 1.0
        with pytest.raises(ValidationError, match="run.speed"):
            validate_scenario(fig2_data)

    def test_unknown_scheme(self, fig2_data):
        fig2_data["run"]["scheme"] = "split-step"
        with pytest.raises(ValidationError, match="Unknown scheme"):
            validate_scenario(fig2_data)

    def test_cascade_orders_hold_drive(self, fig2_data):
        fig2_data["run"]["cascade_orders"] = [1, 5]
        with pytest.raises(ValidationError, match="orders 0 and 1"):
            validate_scenario(fig2_data)

    def test_custom_medium_needs_inputs(self, fig2_data):
        fig2_data["medium"] = {"preset": "custom", "density_cm3": 2.6e22}
        with pytest.raises(ValidationError, match="custom medium needs omega_m_cm, reference_nm"):
            validate_scenario(fig2_data)

    def test_missing_level_table(self, fig2_data, tmp_path):
        fig2_data["medium"] = {
            "preset": "custom",
            "density_cm3": 2.6e22,
            "omega_m_cm": 4149.7,
            "reference_nm": 800.0,
            "level_table": str(tmp_path / "levels.csv"),
        }
        with pytest.raises(ValidationError, match="level table not found"):
            validate_scenario(fig2_data)

    def test_preparation_mode_required(self, fig2_data):
        fig2_data["preparation"] = {}
        with pytest.raises(ValidationError, match="exactly one of direct, adiabatic"):
            validate_scenario(fig2_data)


class TestDigest:
    def test_stable_and_sensitive(self, fig2_data):
        first = validate_scenario(copy.deepcopy(fig2_data))
        second = validate_scenario(copy.deepcopy(fig2_data))
        assert first.digest() == second.digest()
        changed = validate_scenario(apply_overrides(fig2_data, ["run.alpha_z=1.4"]))
        assert changed.digest() != first.digest()


class TestLoadScenario:
    """Presets, files and their combination."""

    def test_needs_a_source(self):
        with pytest.raises(ValidationError, match="--config or --preset"):
            load_scenario()

    def test_file_sections_replace_preset(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"name": "mine", "run": {"alpha_z": 1.0}}), encoding="utf-8")
        scenario = load_scenario(path, preset="fig2")
        assert scenario.name == "mine"
        assert scenario.run.alpha_z == 1.0
        assert scenario.run.scheme is Scheme.TIME_DOMAIN_OFFRES
        assert scenario.probe.carrier_over_omega_m == 5.2

    def test_file_alone(self, tmp_path, fig2_data):
        path = tmp_path / "fig2.json"
        path.write_text(json.dumps(fig2_data), encoding="utf-8")
        assert load_scenario(path).digest() == load_scenario(preset="fig2").digest()

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="not found"):
            load_scenario(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValidationError, match="not valid JSON"):
            load_scenario(path)

    def test_document_must_be_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ValidationError, match="JSON object"):
            load_scenario(path)
