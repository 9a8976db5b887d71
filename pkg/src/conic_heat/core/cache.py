"""Content-addressed eigenvalue cache.

One JSON file per key, ``{"checksum": ..., "payload": {...}}``. A corrupted
entry is never fatal: it is logged, removed, and reported as a miss so the
caller recomputes.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from conic_heat import SOLVER_VERSION
from conic_heat.core.base import APP_AUTHOR, APP_NAME, LOGGER
from conic_heat.core.errors import CacheCorruptionError


def _canonical(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _checksum(payload: Mapping[str, Any]) -> str:
    return hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest()


def cache_key(
    family: str,
    params: Mapping[str, Any],
    lambda_max: float,
    tol: float,
    max_points: int,
    solver_version: str = SOLVER_VERSION,
) -> str:
    identity = {
        "family": family,
        "params": dict(params),
        "lambda_max": lambda_max,
        "tol": tol,
        "max_points": max_points,
        "solver_version": solver_version,
    }
    return hashlib.sha256(_canonical(identity).encode("utf-8")).hexdigest()


def default_cache_dir() -> Path:
    try:
        from platformdirs import user_cache_dir
    except ImportError:  # pragma: no cover - platformdirs is optional for runtime
        return Path.cwd() / ".cache" / APP_NAME
    return Path(user_cache_dir(APP_NAME, APP_AUTHOR))


class SpectrumCache:
    def __init__(self, directory: str | Path | None = None) -> None:
        self.directory = Path(directory) if directory else default_cache_dir()

    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _read(self, key: str) -> dict[str, Any]:
        try:
            entry = json.loads(self.path(key).read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise CacheCorruptionError(f"unreadable cache entry {key}: {exc}") from None
        if not isinstance(entry, dict) or not isinstance(entry.get("payload"), dict):
            raise CacheCorruptionError(f"cache entry {key} has no payload")
        payload: dict[str, Any] = entry["payload"]
        if entry.get("checksum") != _checksum(payload):
            raise CacheCorruptionError(f"checksum mismatch in cache entry {key}")
        return payload

    def load(self, key: str) -> dict[str, Any] | None:
        if not self.path(key).is_file():
            return None
        try:
            payload = self._read(key)
        except CacheCorruptionError as exc:
            LOGGER.warning("%s; discarding it and recomputing", exc)
            self.path(key).unlink(missing_ok=True)
            return None
        LOGGER.info("cache hit %s", key[:12])
        return payload

    def store(self, key: str, payload: Mapping[str, Any]) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {"checksum": _checksum(payload), "payload": dict(payload)}
        target = self.path(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=f".{key[:12]}-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(_canonical(entry))
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        LOGGER.info("cached spectrum %s", key[:12])
        return target
