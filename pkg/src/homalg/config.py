"""Run configuration with env-var override.

A ``RunConfig`` bundles the resource caps and the seed used by the
randomized suites.  The active configuration is the dataclass defaults,
optionally overridden by a JSON file named in the ``HOMALG_CONFIG``
environment variable.
"""

from __future__ import annotations

import dataclasses
import json
import os

from .errors import ParameterError

ENV_VAR = "HOMALG_CONFIG"


@dataclasses.dataclass(frozen=True)
class RunConfig:
    oracle_cap: int = 100_000_000  # max candidate maps for hom_bruteforce
    power_cap: int = 1_000_000     # max vertices materialized by power()
    iso_cap: int = 16              # max order for canonical forms
    enum_cap: int = 10             # max order for regular-graph enumeration
    parallelism: int = 1           # accepted; execution is currently serial
    seed: int = 0                  # seed for the randomized property suites

    def __post_init__(self):
        for name in ("oracle_cap", "power_cap", "iso_cap", "enum_cap", "parallelism"):
            v = getattr(self, name)
            if not isinstance(v, int) or v <= 0:
                raise ParameterError(f"config field {name} must be a positive integer, got {v!r}")
        if not isinstance(self.seed, int):
            raise ParameterError(f"config field seed must be an integer, got {self.seed!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        unknown = set(data) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ParameterError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json_file(cls, path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="ascii") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ParameterError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParameterError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ParameterError(f"config file {path} must hold a JSON object")
        return cls.from_dict(data)


_active: RunConfig | None = None


def active_config() -> RunConfig:
    """The process-wide configuration (env override read once)."""
    global _active
    if _active is None:
        path = os.environ.get(ENV_VAR)
        _active = RunConfig.from_json_file(path) if path else RunConfig()
    return _active


def set_active(config: RunConfig | None) -> None:
    """Replace the active configuration (None resets to env/defaults)."""
    global _active
    _active = config
