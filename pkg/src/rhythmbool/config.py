from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from .errors import ParseError

RHYTHMBOOL_HOME = Path.home() / ".rhythmbool"
DEFAULT_CONFIG_PATH = RHYTHMBOOL_HOME / "config.yaml"
ENV_PREFIX = "RHYTHMBOOL_"


@dataclass(frozen=True, slots=True)
class Settings:
    """Exhaustive bounds and worker count.

    Each bound is the largest N a check is allowed to sweep over 2^N inputs
    (or over all of R_N for the structural sweeps).
    """

    enumerate_bound: int = 16
    balanced_bound: int = 24
    sweep_bound: int = 10
    ancestor_bound: int = 16
    dnf_bound: int = 10
    jobs: int = 1

    def as_record(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _coerce(key: str, value: Any) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ParseError(f"Setting '{key}' must be an integer, got {value!r}") from None
    if number < 1:
        raise ParseError(f"Setting '{key}' must be positive, got {number}")
    return number


def _config_path(env: Mapping[str, str]) -> Path:
    override = env.get(f"{ENV_PREFIX}CONFIG")
    return Path(override).expanduser() if override else DEFAULT_CONFIG_PATH


def _read_file(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise ParseError(f"{path} must contain a mapping")
    return data


def load_settings(env: Optional[Mapping[str, str]] = None, **overrides: Optional[int]) -> Settings:
    """Resolve settings: defaults, then the YAML file, then RHYTHMBOOL_* variables, then overrides."""

    env = os.environ if env is None else env
    known = {f.name for f in fields(Settings)}
    values: Dict[str, int] = {}

    for key, value in _read_file(_config_path(env)).items():
        if key in known:
            values[key] = _coerce(key, value)
    for key in known:
        raw = env.get(f"{ENV_PREFIX}{key.upper()}")
        if raw:
            values[key] = _coerce(key, raw)
    for key, value in overrides.items():
        if value is not None:
            if key not in known:
                raise ParseError(f"Unknown setting '{key}'")
            values[key] = _coerce(key, value)
    return replace(Settings(), **values)
