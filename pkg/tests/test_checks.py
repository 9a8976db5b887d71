from __future__ import annotations

import math

import pytest

from conic_heat.checks import INFO, REGISTRY, CheckInfo, CheckResult, load_all_checks, run_check
from conic_heat.checks.registry import outcome, relative_error
from conic_heat.core.errors import QuadratureError

load_all_checks()

EXPECTED_GROUPS = {"model", "regularization", "geometry"}


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_registered_check_passes(name: str) -> None:
    result = run_check(name)
    assert result.name == name
    detail = f"{name}: worst {result.worst_error} > {result.tolerance} ({result.detail})"
    assert result.passed, detail


def test_every_check_has_metadata() -> None:
    assert set(REGISTRY) == set(INFO)
    assert {info.group for info in INFO.values()} == EXPECTED_GROUPS
    for name, info in INFO.items():
        assert info.name == name
        assert info.description, f"{name} has no description"


def test_numerical_failure_is_reported_not_raised(monkeypatch: pytest.MonkeyPatch) -> None:
    def broken() -> CheckResult:
        raise QuadratureError("did not converge")

    monkeypatch.setitem(REGISTRY, "broken", broken)
    monkeypatch.setitem(INFO, "broken", CheckInfo(name="broken", group="model"))
    result = run_check("broken")
    assert not result.passed
    assert math.isinf(result.worst_error)
    assert "QuadratureError" in result.detail
    assert result.to_dict()["worst_error"] is None


def test_outcome_compares_with_tolerance() -> None:
    assert outcome("x", 1e-9, 1e-8).passed
    assert not outcome("x", 1e-7, 1e-8).passed
    assert relative_error(1.1, 1.0) == pytest.approx(0.1)
    assert relative_error(0.0, 0.0) == 0.0
