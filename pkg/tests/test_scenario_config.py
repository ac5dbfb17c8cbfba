"""
Tests for scenario documents

Verifies parsing, validation errors with line and key context,
serialization round trips and the config hash.
"""

import pytest
from pathlib import Path
from pydantic import ValidationError

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from model.economy import EconomyParams
from model.errors import ConfigError
from model.mac import MacCurve
from services.scenario_config import (
    OutputKind,
    PathwayChoice,
    ScenarioConfig,
    config_hash,
    load_config,
    parse_config,
    serialize_config,
)


class TestParseConfig:
    """Test cases for parse_config."""
    
    def test_empty_document_gives_defaults(self):
        """Test that an empty document gives defaults."""
        assert parse_config("") == ScenarioConfig()
    
    def test_sections_and_values(self):
        """Test parsing sections and values."""
        text = (
            "# median economy\n"
            "economy.r = 0.036\n"
            "economy.delta = 0.03\n"
            "mac.nu = 2.0\n"
            "grid.horizon = 50\n"
            "scenario.goals_pgc = [300, 600]\n"
            "scenario.pathway_kind = both\n"
            "scenario.outputs = pathway, burden\n"
        )
        config = parse_config(text)
        assert config.economy.r == 0.036
        assert config.economy.delta == 0.03
        assert config.curve.nu == 2.0
        assert config.grid.horizon == 50.0
        assert config.goals_pgc == (300.0, 600.0)
        assert config.pathway_kind == PathwayChoice.BOTH
        assert config.outputs == (OutputKind.PATHWAY, OutputKind.BURDEN)
    
    def test_scalar_and_comma_lists(self):
        """Test scalar and comma-separated lists."""
        config = parse_config("scenario.goals_pgc = 450\nscenario.growth_rates = 0.012, 0.024\n")
        assert config.goals_pgc == (450.0,)
        assert config.growth_rates == (0.012, 0.024)
    
    def test_curve_shares_economy_intensity(self):
        """Test that the MAC curve takes economy.mu0."""
        config = parse_config("economy.mu0 = 0.5\n")
        assert config.curve.mu0 == 0.5
    
    def test_quoted_and_commented_values(self):
        """Test quoted values with trailing comments."""
        config = parse_config('scenario.pathway_kind = "constant_rate"  # steady\n')
        assert config.pathway_kind == PathwayChoice.CONSTANT_RATE
    
    def test_parameter_lists(self):
        """Test parsing discount-rate and MAC-exponent lists."""
        config = parse_config("scenario.discount_rates = 0, 0.03\nscenario.mac_exponents = [1.8, 3.0]\n")
        assert config.discount_rates == (0.0, 0.03)
        assert config.mac_exponents == (1.8, 3.0)
    
    def test_default_step_fills_missing_grid_step(self):
        """Test that the default step fills a missing grid.step."""
        config = parse_config("grid.horizon = 100\n", default_step=0.5)
        assert config.grid.step == 0.5
    
    def test_document_step_wins_over_default(self):
        """Test that grid.step in the document wins over the default."""
        config = parse_config("grid.step = 0.1\n", default_step=0.5)
        assert config.grid.step == 0.1
    
    def test_load_config_passes_default_step(self, tmp_path):
        """Test that load_config passes the default step on."""
        path = tmp_path / "scenario.cfg"
        path.write_text("economy.r = 0.036\n", encoding="utf-8")
        assert load_config(path, default_step=0.25).grid.step == 0.25


class TestConfigErrors:
    """Invalid documents raise ConfigError with context."""
    
    def test_out_of_range_value(self):
        """Test an out-of-range value with line and key."""
        with pytest.raises(ConfigError) as info:
            parse_config("economy.r = 0.024\neconomy.theta = 1.2\n")
        assert info.value.key == "economy.theta"
        assert info.value.line == 2
        assert "line 2" in str(info.value)
    
    @pytest.mark.parametrize("text, key", [
        ("economy.foo = 1\n", "economy.foo"),
        ("mac.mu0 = 0.5\n", "mac.mu0"),
        ("stuff = 1\n", "stuff"),
    ])
    def test_unknown_key(self, text, key):
        """Test unknown keys."""
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == key
        assert "unknown key" in str(info.value)
    
    def test_duplicate_key(self):
        """Test duplicate keys."""
        with pytest.raises(ConfigError) as info:
            parse_config("mac.nu = 2.0\nmac.nu = 2.4\n")
        assert info.value.line == 2
        assert "duplicate" in str(info.value)
    
    def test_malformed_line(self):
        """Test a malformed line."""
        with pytest.raises(ConfigError) as info:
            parse_config("economy.r = 0.024\nthis is not valid\n")
        assert info.value.line == 2
    
    def test_missing_value(self):
        """Test a key without a value."""
        with pytest.raises(ConfigError) as info:
            parse_config("economy.r\n")
        assert info.value.key == "economy.r"
    
    def test_bad_enum_word(self):
        """Test an unknown pathway kind."""
        with pytest.raises(ConfigError) as info:
            parse_config("scenario.pathway_kind = sideways\n")
        assert info.value.key == "scenario.pathway_kind"
        assert info.value.line == 1
    
    def test_negative_goal(self):
        """Test a negative goal."""
        with pytest.raises(ConfigError) as info:
            parse_config("scenario.goals_pgc = [300, -5]\n")
        assert info.value.key == "scenario.goals_pgc"
    
    @pytest.mark.parametrize("text, key", [
        ("scenario.discount_rates = [0.03, -0.01]\n", "scenario.discount_rates"),
        ("scenario.mac_exponents = [2.4, 0]\n", "scenario.mac_exponents"),
    ])
    def test_bad_parameter_lists(self, text, key):
        """Test invalid discount rates and MAC exponents."""
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == key
        assert info.value.line == 1
    
    def test_grid_step_mismatch(self):
        """Test a step that does not divide the horizon."""
        with pytest.raises(ConfigError) as info:
            parse_config("grid.step = 0.3\n")
        assert info.value.key == "grid"
    
    def test_unreadable_file(self, tmp_path):
        """Test loading a missing file."""
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.cfg")


class TestSerialization:
    """Test cases for serialize_config and config_hash."""
    
    @pytest.fixture
    def config(self):
        return ScenarioConfig(
            economy=EconomyParams(r=0.036, delta=0.03, theta=0.5),
            curve=MacCurve(alpha=12.0, nu=2.2),
            goals_pgc=(300.0, 750.0),
            growth_rates=(0.024,),
            pathway_kind=PathwayChoice.BOTH,
            outputs=(OutputKind.PATHWAY, OutputKind.DELAY),
            tcre=1.8,
        )
    
    def test_round_trip(self, config):
        """Test that serialize then parse gives the same config."""
        assert parse_config(serialize_config(config)) == config
    
    def test_defaults_round_trip(self):
        """Test the round trip of the defaults."""
        assert parse_config(serialize_config(ScenarioConfig())) == ScenarioConfig()
    
    def test_fixed_layout(self, config):
        """Test the serialized layout."""
        lines = serialize_config(config).splitlines()
        assert lines[0].startswith("#")
        assert lines[1] == "economy.g0 = 77.8"
        assert "scenario.pathway_kind = both" in lines
        assert 'scenario.outputs = ["pathway", "delay"]' in lines
    
    def test_load_from_file(self, tmp_path, config):
        """Test loading a serialized config from disk."""
        path = tmp_path / "scenario.cfg"
        path.write_text(serialize_config(config), encoding="utf-8")
        assert load_config(path) == config
    
    @pytest.mark.parametrize("name", ["median.cfg", "high_discount.cfg", "mac_exponents.cfg"])
    def test_bundled_scenarios_parse(self, name):
        """Test that bundled scenarios parse."""
        config = load_config(Path(__file__).parent.parent / "scenarios" / name)
        assert config.economy.r == 0.024
    
    def test_hash(self, config):
        """Test the config hash."""
        assert len(config_hash(config)) == 16
        assert config_hash(config) == config_hash(parse_config(serialize_config(config)))
        assert config_hash(config) != config_hash(ScenarioConfig())


class TestScenarioConfig:
    """Direct construction of ScenarioConfig."""
    
    def test_mismatched_intensity_rejected(self):
        """Test that mismatched reference intensities are rejected."""
        with pytest.raises(ValidationError):
            ScenarioConfig(curve=MacCurve(mu0=0.5))
    
    def test_frozen(self):
        """Test that configs are immutable."""
        config = ScenarioConfig()
        with pytest.raises(ValidationError):
            config.tcre = 2.0
    
    def test_economy_for(self):
        """Test the economy of one growth rate."""
        economy = ScenarioConfig().economy_for(0.036)
        assert economy.r == 0.036
        assert economy.theta == 0.75
    
    def test_economy_for_with_discount_rate(self):
        """Test the economy of one growth and discount rate."""
        economy = ScenarioConfig().economy_for(0.012, 0.03)
        assert economy.r == 0.012
        assert economy.delta == 0.03
    
    def test_parameter_grid_defaults_to_single_values(self):
        """Test the parameter grid with empty lists."""
        config = ScenarioConfig(economy=EconomyParams(delta=0.03), curve=MacCurve(nu=2.2))
        assert config.parameter_grid() == [(0.012, 0.03, 2.2), (0.024, 0.03, 2.2), (0.036, 0.03, 2.2)]
    
    def test_parameter_grid_cross_product(self):
        """Test the parameter grid cross product and its order."""
        config = ScenarioConfig(
            growth_rates=(0.012, 0.024),
            discount_rates=(0.0, 0.03),
            mac_exponents=(1.8, 2.4, 3.0),
        )
        cells = config.parameter_grid()
        assert len(cells) == 12
        assert cells[0] == (0.012, 0.0, 1.8)
        assert cells[1] == (0.012, 0.0, 2.4)
        assert cells[-1] == (0.024, 0.03, 3.0)
        assert config.curve_for(3.0).nu == 3.0
        assert config.curve_for(3.0).alpha == config.curve.alpha


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
