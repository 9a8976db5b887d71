"""Run configuration: one JSON document per experiment.

Precedence is defaults < JSON document < ``CONIC_HEAT_<FIELD>`` environment
variables < command-line flags (applied by the CLI with ``dataclasses.replace``).
"""

from __future__ import annotations

import json
import os
from collections.abc import Mapping
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, get_type_hints

from conic_heat.coefficients import CONVENTIONS
from conic_heat.core.errors import ConfigError, ProfileError
from conic_heat.profiles import DEFAULT_FAMILY_KEY, build_profile
from conic_heat.regularization import READINGS
from conic_heat.trace import parse_basis

ENV_PREFIX = "CONIC_HEAT_"
_STRUCTURED = frozenset({"params", "basis", "window"})


@dataclass(frozen=True)
class RunConfig:
    profile: str = DEFAULT_FAMILY_KEY
    params: Mapping[str, Any] = field(default_factory=dict)
    lambda_max: float = 2000.0
    tol: float = 1e-9
    max_count: int = 20000
    max_points: int = 1600
    t_min: float = 0.005
    t_max: float = 0.5
    points_per_decade: int = 40
    epsilon: float = 1e-10
    basis: tuple[str, ...] = ()
    window: tuple[float, float] | None = None
    max_condition: float = 1e12
    max_residual: float = 1e-5
    d: int = 2
    out_dir: str = "out"
    cache_dir: str = ""
    threads: int = 1
    convention: str = "sin"
    reading: str = "published"

    @staticmethod
    def _coerce(expected_type: type[Any] | str, raw: Any) -> Any:
        name = (
            expected_type
            if isinstance(expected_type, str)
            else getattr(expected_type, "__name__", "")
        )
        if expected_type is int or name == "int":
            return int(raw)
        if expected_type is float or name == "float":
            return float(raw)
        if expected_type is bool or name == "bool":
            if isinstance(raw, str):
                return raw.strip().lower() in {"1", "true", "yes", "on"}
            return bool(raw)
        if expected_type is str or name == "str":
            return str(raw)
        return raw

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {f.name: getattr(self, f.name) for f in fields(self)}
        data["params"] = dict(self.params)
        data["basis"] = list(self.basis)
        data["window"] = list(self.window) if self.window is not None else None
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        hints = get_type_hints(cls)
        values: dict[str, Any] = {}
        try:
            for name, raw in data.items():
                if name == "params":
                    if not isinstance(raw, Mapping):
                        raise ConfigError("params must be a JSON object")
                    values[name] = dict(raw)
                elif name == "basis":
                    values[name] = tuple(str(label) for label in raw)
                elif name == "window":
                    values[name] = None if raw is None else _pair(raw)
                else:
                    values[name] = cls._coerce(hints[name], raw)
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed configuration value: {exc}") from None
        return cls(**values)

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"configuration is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def with_environment(self, environ: Mapping[str, str] | None = None) -> RunConfig:
        env = os.environ if environ is None else environ
        hints = get_type_hints(type(self))
        overrides: dict[str, Any] = {}
        for f in fields(self):
            if f.name in _STRUCTURED:
                continue
            raw = env.get(f"{ENV_PREFIX}{f.name.upper()}")
            if raw not in (None, ""):
                try:
                    overrides[f.name] = self._coerce(hints[f.name], raw)
                except ValueError:
                    raise ConfigError(
                        f"{ENV_PREFIX}{f.name.upper()}={raw!r} is not a valid {f.name}"
                    ) from None
        return replace(self, **overrides)

    def validate(self) -> RunConfig:
        try:
            build_profile(self.profile, self.params)
        except ProfileError as exc:
            raise ConfigError(str(exc)) from None
        if not self.tol > 0.0:
            raise ConfigError(f"tol must be positive, got {self.tol!r}")
        if not self.epsilon > 0.0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon!r}")
        if not self.lambda_max >= 0.0:
            raise ConfigError(f"lambda_max must be nonnegative, got {self.lambda_max!r}")
        if not 0.0 < self.t_min < self.t_max:
            raise ConfigError(f"need 0 < t_min < t_max, got ({self.t_min}, {self.t_max})")
        if self.window is not None:
            lo, hi = self.window
            if not self.t_min <= lo < hi <= self.t_max:
                raise ConfigError(
                    f"window {self.window} must lie inside [{self.t_min}, {self.t_max}]"
                )
        if self.points_per_decade < 1:
            raise ConfigError("points_per_decade must be >= 1")
        if self.max_count < 1 or self.max_points < 16:
            raise ConfigError("max_count must be >= 1 and max_points >= 16")
        if not (self.max_condition > 1.0 and self.max_residual > 0.0):
            raise ConfigError("max_condition must exceed 1 and max_residual must be positive")
        if self.d < 2:
            raise ConfigError(f"resolvent power d must be >= 2, got {self.d}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"unknown convention {self.convention!r}")
        if self.reading not in READINGS:
            raise ConfigError(f"unknown reading {self.reading!r}")
        try:
            parse_basis(self.basis)
        except ValueError as exc:
            raise ConfigError(f"bad basis: {exc}") from None
        return self


def _pair(raw: Any) -> tuple[float, float]:
    values = tuple(float(x) for x in raw)
    if len(values) != 2:
        raise ConfigError(f"window needs two bounds, got {list(raw)!r}")
    return values[0], values[1]


def load_config(
    path: str | Path | None = None, environ: Mapping[str, str] | None = None
) -> RunConfig:
    """Defaults, then the JSON document at ``path`` (if any), then the environment."""
    config = RunConfig()
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read configuration {path}: {exc}") from None
        config = RunConfig.from_json(text)
    return config.with_environment(environ)
