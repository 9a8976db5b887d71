"""Self-check registry and result types.

Every analytic identity the workbench relies on is registered here as a
named check, so ``conic-heat verify`` can run the whole set and the test
suite can parametrize over it.

Key components:
- CheckInfo: metadata describing a check (group, what it asserts)
- CheckResult: outcome of one run, with the worst error seen and its tolerance
- REGISTRY / INFO: check name -> implementation / metadata
- @register decorator: declares a check next to its implementation

Example:
    >>> @register(CheckInfo(
    ...     name="zeta values",
    ...     group="regularization",
    ...     description="ζ(−1) = −1/12",
    ... ))
    ... def zeta_values() -> CheckResult:
    ...     ...
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from importlib import import_module
from typing import Any, TypeAlias

from conic_heat.core.base import LOGGER
from conic_heat.core.errors import NumericalError

Check: TypeAlias = Callable[[], "CheckResult"]
Decorator: TypeAlias = Callable[[Check], Check]


@dataclass(frozen=True)
class CheckInfo:
    name: str
    group: str
    description: str = ""


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check.

    ``worst_error`` is measured in the same units as ``tolerance`` (relative
    or absolute, as the check's description says); ``passed`` is
    ``worst_error <= tolerance``.
    """

    name: str
    passed: bool
    worst_error: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_error": self.worst_error if math.isfinite(self.worst_error) else None,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


def outcome(name: str, worst: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(worst <= tolerance),
        worst_error=float(worst),
        tolerance=tolerance,
        detail=detail,
    )


def relative_error(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


REGISTRY: dict[str, Check] = {}
INFO: dict[str, CheckInfo] = {}

# Add new check modules here to include them in ``conic-heat verify``
_CHECK_MODULES: tuple[str, ...] = (
    "conic_heat.checks.model_checks",
    "conic_heat.checks.regularization_checks",
    "conic_heat.checks.geometry_checks",
)


def register(info: CheckInfo) -> Decorator:
    def deco(fn: Check) -> Check:
        REGISTRY[info.name] = fn
        INFO[info.name] = info
        return fn

    return deco


def load_all_checks() -> None:
    for module in _CHECK_MODULES:
        import_module(module)


def run_check(name: str) -> CheckResult:
    """Run one registered check; numerical failures count as a failed check."""
    check = REGISTRY[name]
    try:
        result = check()
    except (NumericalError, ValueError) as exc:
        LOGGER.warning("check %r raised %s: %s", name, type(exc).__name__, exc)
        return CheckResult(
            name=name,
            passed=False,
            worst_error=math.inf,
            tolerance=0.0,
            detail=f"{type(exc).__name__}: {exc}",
        )
    level = "passed" if result.passed else "FAILED"
    LOGGER.info(
        "check %s %s (worst %.3g, tolerance %.3g)",
        name,
        level,
        result.worst_error,
        result.tolerance,
    )
    return result


def run_all_checks() -> list[CheckResult]:
    load_all_checks()
    return [run_check(name) for name in REGISTRY]
