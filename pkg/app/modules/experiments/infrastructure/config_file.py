"""Parameter override files (TOML or JSON)."""

import json
import tomllib
from pathlib import Path

from pydantic import ValidationError

from app.core.exceptions import ConfigurationError
from app.modules.experiments.domain.entities import ParameterOverrides


def load_overrides(path: Path) -> ParameterOverrides:
    """Read a flat table of parameter overrides; unknown keys are rejected."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"cannot read config file {path}: {e}") from e
    try:
        if path.suffix == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigurationError(f"cannot parse config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"config file {path} must hold a table of parameters")
    try:
        return ParameterOverrides.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"config file {path}: {e}") from e
