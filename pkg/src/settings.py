"""
Settings resolution: CLI flags > COAMOEBA_* environment variables >
config/engine.yaml > model defaults.
"""
from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Mapping

import yaml
from pydantic import BaseModel, ValidationError, field_validator

from src.errors import ConfigError

LOGGER = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/engine.yaml"

ENV_VARS = {
    "max_n": "COAMOEBA_MAX_N",
    "window_radius": "COAMOEBA_WINDOW_RADIUS",
    "output_dir": "COAMOEBA_OUTPUT_DIR",
}
CONFIG_ENV_VAR = "COAMOEBA_CONFIG"


class Settings(BaseModel):
    max_n: int = 5
    # None means "use n", the smallest radius that fits the cones
    window_radius: int | None = None
    verify_min_n: int = 2
    output_dir: str = "out"
    heartbeat_interval_sec: float = 15
    schema_version: str = "1"
    sample_count: int = 100_000
    sample_seed: int = 0

    @field_validator("max_n", "verify_min_n")
    @classmethod
    def _at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be at least 1, got {v}")
        return v

    @field_validator("sample_count")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError(f"must be non-negative, got {v}")
        return v

    @field_validator("heartbeat_interval_sec")
    @classmethod
    def _positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    def radius_for(self, n: int) -> int:
        """Window radius for n; raises ConfigError when it cannot hold the cones."""
        if n < 1:
            raise ConfigError(f"n must be at least 1, got {n}")
        radius = n if self.window_radius is None else self.window_radius
        if radius < n:
            raise ConfigError(f"Window radius {radius} is smaller than n={n}; the cones do not fit")
        return radius

    def verify_range(self, n: int | None = None, max_n: int | None = None) -> range:
        if n is not None:
            self.radius_for(n)
            return range(n, n + 1)
        top = self.max_n if max_n is None else max_n
        if top < self.verify_min_n:
            raise ConfigError(f"max_n={top} is below verify_min_n={self.verify_min_n}")
        for k in (self.verify_min_n, top):
            self.radius_for(k)
        return range(self.verify_min_n, top + 1)


def _resolve(config_path: str | Path) -> Path | None:
    path = Path(config_path)
    if path.is_absolute():
        return path if path.exists() else None
    for root in [Path.cwd(), Path(__file__).resolve().parent.parent]:
        candidate = root / path
        if candidate.exists():
            return candidate
    return None


def load_config(config_path: str | Path | None = None) -> dict[str, Any]:
    """Load the engine YAML; a missing default file is not an error, a missing explicit one is."""
    explicit = config_path or os.getenv(CONFIG_ENV_VAR)
    path = _resolve(explicit or DEFAULT_CONFIG_PATH)
    if path is None:
        if explicit:
            raise ConfigError(f"Config file not found: {explicit}")
        return {}
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping, got {type(data).__name__}")
    LOGGER.debug("Loaded config from %s", path)
    return data.get("engine", data)


def _from_env(environ: Mapping[str, str]) -> dict[str, str]:
    return {field: environ[var] for field, var in ENV_VARS.items() if environ.get(var)}


def load_settings(
    overrides: Mapping[str, Any] | None = None,
    config_path: str | Path | None = None,
    environ: Mapping[str, str] | None = None,
) -> Settings:
    values: dict[str, Any] = {}
    values.update(load_config(config_path))
    values.update(_from_env(os.environ if environ is None else environ))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigError(f"Invalid settings: {e}") from e
