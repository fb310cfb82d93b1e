"""File contains utility functions for project."""
import os
import uuid
from datetime import datetime, timezone
from functools import lru_cache
from pathlib import Path

import yaml

CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"
PARAMETERS_PATH = CONFIG_DIR / "parameters.yml"
CONSTANTS_PATH = CONFIG_DIR / "constants.yml"


@lru_cache(maxsize=8)
def load_config(config_path: str | Path) -> dict:
    """Load a YAML config file (cached)."""
    path = Path(config_path)
    if not path.exists():
        error = f"Config file not found at: {path}"
        raise FileNotFoundError(error)
    with path.open("r", encoding="utf-8") as f:
        return yaml.safe_load(f)

def get_param_info(section: str, param_name: str, config_path: str | Path = PARAMETERS_PATH) -> dict:
    """Get parameter info (value, min, max) from YAML config."""
    cfg = load_config(config_path)
    if section not in cfg:
        error = f"Section '{section}' not found in {config_path}."
        raise KeyError(error)
    if param_name not in cfg[section]:
        error = f"Parameter '{param_name}' not found in section '{section}' of {config_path}."
        raise KeyError(error)
    return dict(cfg[section][param_name])

def get_param(section: str, param_name: str, config_path: str | Path = PARAMETERS_PATH) -> int | float | str | list:
    """Get the configured default value of a parameter."""
    return get_param_info(section, param_name, config_path)["value"]

def check_param(section: str, param_name: str, value: int, config_path: str | Path = PARAMETERS_PATH) -> int:
    """Validate an override against the parameter limits and return it."""
    info = get_param_info(section, param_name, config_path)
    low, high = info.get("min"), info.get("max")
    if (low is not None and value < low) or (high is not None and value > high):
        error = f"Parameter '{section}.{param_name}'={value} outside the allowed range [{low}, {high}]."
        raise ValueError(error)
    return value

def resolve_param(section: str, param_name: str, override: int | None, env_var: str | None = None) -> int:
    """Resolve a parameter: CLI override, then environment variable, then YAML default."""
    if override is not None:
        return check_param(section, param_name, override)
    if env_var is not None and os.getenv(env_var):
        try:
            value = int(os.environ[env_var])
        except ValueError as exc:
            error = f"Environment variable {env_var} must be an integer, got {os.environ[env_var]!r}."
            raise ValueError(error) from exc
        return check_param(section, param_name, value)
    return get_param(section, param_name)

def get_constant(section: str, name: str, config_path: str | Path = CONSTANTS_PATH) -> str | int | list:
    """Get constant value from YAML."""
    cfg = load_config(config_path)
    if name not in cfg.get(section, {}):
        error = f"Constant '{name}' not found in section '{section}' of {config_path}."
        raise KeyError(error)
    return cfg[section][name]["value"]

def job_id(timestamp: str|None=None) -> str:
    """Generate a unique job ID based on the current timestamp."""
    if timestamp is None:
        timestamp = time_now()
    return f"{timestamp}_{uuid.uuid4().hex[:8]}"

def time_now() -> str:
    """Generate a unique timestamp."""
    return datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
