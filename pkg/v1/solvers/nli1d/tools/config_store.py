"""Loading, overriding and dumping run configurations."""

import json
import os
import re
from typing import Any, Dict, Mapping, Optional

from pydantic import ValidationError as PydanticValidationError

from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_handling import ConfigurationError
from nli1d.shared_libraries.logging_config import get_logger
from nli1d.shared_libraries.types import RunConfig
from nli1d.discretization.geometry import check_commensurate

logger = get_logger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), "config", "nli_config.json")


def config_path() -> str:
    """Defaults file; NLI1D_CONFIG (environment or .env) overrides the packaged one."""
    return os.getenv(constants.ENV_CONFIG_PATH, DEFAULT_CONFIG_PATH)

_DYADIC = re.compile(r"^\s*(?:([+-]?\d+(?:\.\d*)?)\s*\*\s*)?2\s*\^\s*([+-]?\d+)\s*$")


def parse_length(text: str) -> float:
    """Decimal float or dyadic shorthand: '0.03125', '2^-5', '3*2^-4'."""
    match = _DYADIC.match(text)
    if match:
        mantissa = float(match.group(1)) if match.group(1) else 1.0
        return mantissa * 2.0 ** int(match.group(2))
    try:
        return float(text)
    except ValueError:
        raise ConfigurationError(f"cannot parse length {text!r}", user_message=f"Invalid number: {text!r}.")


def _read_json(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r") as file:
            data = json.load(file)
    except FileNotFoundError as e:
        raise ConfigurationError(f"config file not found: {path}", user_message=f"Config file {path} does not exist.") from e
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"config file {path} must hold a JSON object")
    return data


def load_run_config(path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None,
                    check_mesh: bool = True) -> RunConfig:
    """
    Packaged defaults < config file < overrides (None values are ignored).

    With check_mesh, the domain and horizons must be commensurate with h and h_fine.
    """
    data = _read_json(config_path())
    if path:
        data.update(_read_json(path))
        logger.debug(f"Loaded config file {path}")
    if overrides:
        data.update({key: value for key, value in overrides.items() if value is not None})

    try:
        config = RunConfig.model_validate(data)
    except PydanticValidationError as e:
        raise ConfigurationError(f"invalid run configuration: {e}") from e

    if check_mesh:
        layout = config.layout()
        check_commensurate(layout, config.h)
        check_commensurate(layout, config.h_fine)
    return config


def config_snapshot(config: RunConfig) -> Dict[str, Any]:
    return config.model_dump(mode="json")


def dump_run_config(config: RunConfig) -> str:
    """JSON text that load_run_config reads back to an equal RunConfig."""
    return json.dumps(config_snapshot(config), indent=2) + "\n"
