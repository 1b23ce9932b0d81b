"""
Settings service - build the engine configuration from files and environment.

Sources, lowest priority first: built-in defaults, ~/.fglaw/config.yaml,
the file named by FGLAW_CONFIG, then FGLAW_* environment variables.
"""

import logging
from dataclasses import fields, replace
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional

from src.core.config import DEFAULT_CONFIG, EngineConfig
from src.core.errors import ConfigError
from src.platform.environment import ENV_PREFIX, get_config_files, get_env

try:
    import yaml
    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False


logger = logging.getLogger(__name__)

# environment variable suffix -> EngineConfig field
ENV_KEYS = {
    "MAX_PRIME": "max_prime",
    "MAX_FIELD_ORDER": "max_field_order",
    "ENUMERATION_BOUND": "enumeration_bound",
    "MAX_PRECISION": "max_precision",
    "MAX_SOLVE_DEGREE": "max_solve_degree",
    "SOLUTION_BUDGET": "solution_budget",
    "SEED": "default_seed",
    "THREADS": "threads",
    "CROSS_CHECK": "cross_check",
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _field_types() -> dict[str, type]:
    return {f.name: type(getattr(DEFAULT_CONFIG, f.name)) for f in fields(EngineConfig)}


def _coerce(key: str, value: Any, source: str) -> Any:
    kind = _field_types()[key]
    if kind is bool:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in _TRUE:
            return True
        if text in _FALSE:
            return False
        raise ConfigError(f"{source}: {key} must be a boolean, got {value!r}")
    if isinstance(value, bool):
        raise ConfigError(f"{source}: {key} must be an integer, got {value!r}")
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{source}: {key} must be an integer, got {value!r}") from None
    if number < 1:
        raise ConfigError(f"{source}: {key} must be positive, got {number}")
    return number


def apply_overrides(config: EngineConfig, values: Mapping[str, Any], source: str) -> EngineConfig:
    """Return config with the known keys of values applied; unknown keys are logged and skipped."""
    known = _field_types()
    updates = {}
    for key, value in values.items():
        if key not in known:
            logger.warning(f"{source}: ignoring unknown setting '{key}'")
            continue
        updates[key] = _coerce(key, value, source)
    return replace(config, **updates) if updates else config


def load_file(path: Path) -> dict[str, Any]:
    """Parse a YAML settings file; a missing file is an empty mapping."""
    if not path.exists():
        return {}
    if not YAML_AVAILABLE:
        logger.warning(f"pyyaml is not installed; skipping {path}")
        return {}
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must contain a mapping")
    return data


def env_values() -> dict[str, str]:
    values = {}
    for suffix, key in ENV_KEYS.items():
        raw = get_env(f"{ENV_PREFIX}{suffix}")
        if raw is not None and raw != "":
            values[key] = raw
    return values


def load_config(
    files: Optional[Iterable[Path]] = None,
    use_env: bool = True,
    base: Optional[EngineConfig] = None,
) -> EngineConfig:
    """Layer defaults, config files and environment into an EngineConfig."""
    config = base or DEFAULT_CONFIG
    for path in (get_config_files() if files is None else files):
        config = apply_overrides(config, load_file(Path(path)), str(path))
    if use_env:
        config = apply_overrides(config, env_values(), "environment")
    logger.debug(f"Engine configuration: {config}")
    return config
