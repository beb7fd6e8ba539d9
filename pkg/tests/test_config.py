"""Tests for configuration loading and validation."""

from __future__ import annotations

from pathlib import Path

import pytest
import voluptuous as vol

from lemniscate_ruler.config import (
    ConfigError,
    get_options_schema,
    get_svg_schema,
    load_config,
    precision_from_env,
    resolve_options,
    validate_input,
)
from lemniscate_ruler.const import (
    CONF_CURVE_SAMPLES,
    CONF_OUTPUT_FORMAT,
    CONF_PRECISION,
    CONF_SHOW_CONSTRUCTION,
    CONF_SVG,
    CONF_SVG_SIZE,
    DEFAULT_CURVE_SAMPLES,
    DEFAULT_PRECISION,
    DEFAULT_SVG_SIZE,
    ENV_PRECISION,
    FORMAT_JSON,
    FORMAT_SVG,
)


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    """Write a configuration file with a precision of 40."""
    path = tmp_path / "lemniscate.yaml"
    path.write_text("precision: 40\noutput_format: json\nsvg:\n  size: 600\n", encoding="utf-8")
    return path


class TestValidateInput:
    """Test validate_input function."""

    def test_valid(self) -> None:
        """Test validation with valid input."""
        options = {CONF_PRECISION: 30, CONF_OUTPUT_FORMAT: FORMAT_SVG, CONF_SVG: {CONF_SVG_SIZE: 800}}
        assert validate_input(options) == {}

    def test_empty(self) -> None:
        """Test that missing keys are fine."""
        assert validate_input({}) == {}

    @pytest.mark.parametrize(
        ("precision", "code"),
        [
            ("thirty", "invalid_precision"),
            (True, "invalid_precision"),
            (10, "precision_too_low"),
            (5000, "precision_too_high"),
        ],
    )
    def test_precision(self, precision: object, code: str) -> None:
        """Test validation of the precision."""
        assert validate_input({CONF_PRECISION: precision}) == {CONF_PRECISION: code}

    def test_format(self) -> None:
        """Test validation of the output format."""
        assert validate_input({CONF_OUTPUT_FORMAT: "png"}) == {CONF_OUTPUT_FORMAT: "invalid_format"}

    def test_svg_section(self) -> None:
        """Test that the svg section must be a mapping."""
        assert validate_input({CONF_SVG: [800]}) == {CONF_SVG: "invalid_svg_section"}

    def test_svg_values(self) -> None:
        """Test validation inside the svg section."""
        errors = validate_input(
            {CONF_SVG: {CONF_SVG_SIZE: 10, CONF_CURVE_SAMPLES: 4, CONF_SHOW_CONSTRUCTION: "yes"}}
        )
        assert errors == {
            CONF_SVG_SIZE: "invalid_svg_size",
            CONF_CURVE_SAMPLES: "too_few_samples",
            CONF_SHOW_CONSTRUCTION: "invalid_flag",
        }


class TestSchemas:
    """Test the voluptuous schemas."""

    def test_defaults(self) -> None:
        """Test that an empty config is filled in."""
        options = get_options_schema()({})
        assert options[CONF_PRECISION] == DEFAULT_PRECISION
        assert options[CONF_OUTPUT_FORMAT] == FORMAT_SVG
        assert options[CONF_SVG][CONF_SVG_SIZE] == DEFAULT_SVG_SIZE
        assert options[CONF_SVG][CONF_CURVE_SAMPLES] == DEFAULT_CURVE_SAMPLES
        assert options[CONF_SVG][CONF_SHOW_CONSTRUCTION] is True

    def test_custom_defaults(self) -> None:
        """Test schema defaults taken from a mapping."""
        schema = get_svg_schema({CONF_SVG_SIZE: 500})
        assert schema({})[CONF_SVG_SIZE] == 500

    def test_coercion(self) -> None:
        """Test that numeric strings are coerced."""
        assert get_options_schema()({CONF_PRECISION: "40"})[CONF_PRECISION] == 40

    def test_unknown_key(self) -> None:
        """Test that unknown keys are refused."""
        with pytest.raises(vol.Invalid):
            get_options_schema()({"colour": "red"})


class TestLoadConfig:
    """Test reading YAML files."""

    def test_load(self, config_file: Path) -> None:
        """Test reading a configuration file."""
        assert load_config(config_file)[CONF_PRECISION] == 40

    def test_empty_file(self, tmp_path: Path) -> None:
        """Test that an empty file is an empty config."""
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config(path) == {}

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that an explicit missing file is an error."""
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.yaml")

    def test_not_a_mapping(self, tmp_path: Path) -> None:
        """Test that a YAML list is refused."""
        path = tmp_path / "list.yaml"
        path.write_text("- 30\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_bad_yaml(self, tmp_path: Path) -> None:
        """Test that unparsable YAML is refused."""
        path = tmp_path / "bad.yaml"
        path.write_text("precision: [30\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_default_path_absent(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a missing default file is an empty config."""
        monkeypatch.chdir(tmp_path)
        assert load_config() == {}


class TestResolveOptions:
    """Test precedence of the configuration sources."""

    def test_env(self) -> None:
        """Test reading the precision from the environment."""
        assert precision_from_env({ENV_PRECISION: "50"}) == 50
        assert precision_from_env({ENV_PRECISION: " "}) is None
        assert precision_from_env({}) is None

    def test_env_not_integer(self) -> None:
        """Test that a non-integer variable is an error."""
        with pytest.raises(ConfigError):
            precision_from_env({ENV_PRECISION: "many"})

    def test_file_only(self, config_file: Path) -> None:
        """Test values from the file."""
        options = resolve_options(config_file, environ={})
        assert options[CONF_PRECISION] == 40
        assert options[CONF_OUTPUT_FORMAT] == FORMAT_JSON
        assert options[CONF_SVG][CONF_SVG_SIZE] == 600

    def test_env_over_file(self, config_file: Path) -> None:
        """Test that the environment beats the file."""
        options = resolve_options(config_file, environ={ENV_PRECISION: "50"})
        assert options[CONF_PRECISION] == 50

    def test_flag_over_env(self, config_file: Path) -> None:
        """Test that flags beat everything."""
        options = resolve_options(
            config_file, precision=60, output_format=FORMAT_SVG, environ={ENV_PRECISION: "50"}
        )
        assert options[CONF_PRECISION] == 60
        assert options[CONF_OUTPUT_FORMAT] == FORMAT_SVG

    def test_invalid(self, config_file: Path) -> None:
        """Test that invalid merged options raise ConfigError."""
        with pytest.raises(ConfigError, match="precision_too_low"):
            resolve_options(config_file, precision=3, environ={})
