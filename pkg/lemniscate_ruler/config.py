"""Run configuration: YAML file, environment override and validation."""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import voluptuous as vol
import yaml

from .const import (
    CONF_CURVE_SAMPLES,
    CONF_OUTPUT_FORMAT,
    CONF_PRECISION,
    CONF_SHOW_CONSTRUCTION,
    CONF_SVG,
    CONF_SVG_SIZE,
    DEFAULT_CONFIG_PATH,
    DEFAULT_CURVE_SAMPLES,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_PRECISION,
    DEFAULT_SVG_SIZE,
    ENV_PRECISION,
    MAX_PRECISION,
    MAX_SVG_SIZE,
    MIN_CURVE_SAMPLES,
    MIN_PRECISION,
    MIN_SVG_SIZE,
    OUTPUT_FORMATS,
)
from .numerics import LemniscateError

_LOGGER = logging.getLogger(__name__)


class ConfigError(LemniscateError, ValueError):
    """Exception raised for an unreadable or invalid configuration."""


def validate_input(options: Mapping[str, Any]) -> dict[str, str]:
    """Validate raw options and return errors dict.

    Args:
        options: Dictionary of configuration values before coercion.

    Returns:
        Dictionary of field names to error codes. Empty if all valid.
    """
    errors: dict[str, str] = {}

    # Validate precision
    precision = options.get(CONF_PRECISION)
    if precision is not None:
        if isinstance(precision, bool) or not isinstance(precision, int):
            errors[CONF_PRECISION] = "invalid_precision"
        elif precision < MIN_PRECISION:
            errors[CONF_PRECISION] = "precision_too_low"
        elif precision > MAX_PRECISION:
            errors[CONF_PRECISION] = "precision_too_high"

    # Validate output format
    output_format = options.get(CONF_OUTPUT_FORMAT)
    if output_format is not None and output_format not in OUTPUT_FORMATS:
        errors[CONF_OUTPUT_FORMAT] = "invalid_format"

    svg = options.get(CONF_SVG)
    if svg is None:
        return errors
    if not isinstance(svg, Mapping):
        errors[CONF_SVG] = "invalid_svg_section"
        return errors

    size = svg.get(CONF_SVG_SIZE)
    if size is not None and (
        not isinstance(size, int) or not MIN_SVG_SIZE <= size <= MAX_SVG_SIZE
    ):
        errors[CONF_SVG_SIZE] = "invalid_svg_size"

    samples = svg.get(CONF_CURVE_SAMPLES)
    if samples is not None and (not isinstance(samples, int) or samples < MIN_CURVE_SAMPLES):
        errors[CONF_CURVE_SAMPLES] = "too_few_samples"

    show = svg.get(CONF_SHOW_CONSTRUCTION)
    if show is not None and not isinstance(show, bool):
        errors[CONF_SHOW_CONSTRUCTION] = "invalid_flag"

    return errors


def get_svg_schema(defaults: Mapping[str, Any] | None = None) -> vol.Schema:
    """Build the schema of the svg section."""
    defaults = defaults or {}

    return vol.Schema(
        {
            vol.Optional(
                CONF_SVG_SIZE,
                default=defaults.get(CONF_SVG_SIZE, DEFAULT_SVG_SIZE),
            ): vol.All(vol.Coerce(int), vol.Range(min=MIN_SVG_SIZE, max=MAX_SVG_SIZE)),
            vol.Optional(
                CONF_CURVE_SAMPLES,
                default=defaults.get(CONF_CURVE_SAMPLES, DEFAULT_CURVE_SAMPLES),
            ): vol.All(vol.Coerce(int), vol.Range(min=MIN_CURVE_SAMPLES)),
            vol.Optional(
                CONF_SHOW_CONSTRUCTION,
                default=defaults.get(CONF_SHOW_CONSTRUCTION, True),
            ): vol.Boolean(),
        }
    )


def get_options_schema(defaults: Mapping[str, Any] | None = None) -> vol.Schema:
    """Build the schema of a run configuration.

    Args:
        defaults: Optional dictionary of default values.

    Returns:
        Voluptuous schema filling every missing key.
    """
    defaults = defaults or {}

    return vol.Schema(
        {
            vol.Optional(
                CONF_PRECISION,
                default=defaults.get(CONF_PRECISION, DEFAULT_PRECISION),
            ): vol.All(vol.Coerce(int), vol.Range(min=MIN_PRECISION, max=MAX_PRECISION)),
            vol.Optional(
                CONF_OUTPUT_FORMAT,
                default=defaults.get(CONF_OUTPUT_FORMAT, DEFAULT_OUTPUT_FORMAT),
            ): vol.In(OUTPUT_FORMATS),
            vol.Optional(CONF_SVG, default=dict): get_svg_schema(defaults.get(CONF_SVG)),
        }
    )


def load_config(path: str | Path | None = None) -> dict[str, Any]:
    """Read a YAML configuration file.

    Without a path the default file is read when it exists.

    Raises:
        ConfigError: If the file is missing, unparsable or not a mapping.
    """
    if path is None:
        path = Path(DEFAULT_CONFIG_PATH)
        if not path.is_file():
            return {}
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as handle:
            data = yaml.safe_load(handle)
    except OSError as ex:
        raise ConfigError(f"Cannot read configuration {path}: {ex}") from ex
    except yaml.YAMLError as ex:
        raise ConfigError(f"Cannot parse configuration {path}: {ex}") from ex
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Configuration {path} must be a mapping")
    _LOGGER.debug("Loaded configuration from %s", path)
    return data


def precision_from_env(environ: Mapping[str, str] | None = None) -> int | None:
    """Return the precision override from the environment, if any.

    Raises:
        ConfigError: If the variable is set but not an integer.
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_PRECISION)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError as ex:
        raise ConfigError(f"{ENV_PRECISION} must be an integer, got {raw!r}") from ex


def resolve_options(
    path: str | Path | None = None,
    precision: int | None = None,
    output_format: str | None = None,
    environ: Mapping[str, str] | None = None,
) -> dict[str, Any]:
    """Merge the configuration sources: CLI flag > env var > YAML file > defaults.

    Raises:
        ConfigError: If the merged options do not validate.
    """
    options = dict(load_config(path))
    env_precision = precision_from_env(environ)
    if env_precision is not None:
        options[CONF_PRECISION] = env_precision
    if precision is not None:
        options[CONF_PRECISION] = precision
    if output_format is not None:
        options[CONF_OUTPUT_FORMAT] = output_format

    errors = validate_input(options)
    if errors:
        detail = ", ".join(f"{key}: {code}" for key, code in sorted(errors.items()))
        raise ConfigError(f"Invalid configuration ({detail})")
    try:
        return get_options_schema()(options)
    except vol.Invalid as ex:
        raise ConfigError(f"Invalid configuration: {ex}") from ex
