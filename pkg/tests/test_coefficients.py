from __future__ import annotations

import json
import math

import pytest

from conic_heat.coefficients import (
    b0_tip,
    bhalf_tip,
    boundary_bhalf,
    boundary_half,
    predict,
)
from conic_heat.profiles import build_profile
from conic_heat.regularization import Reading


def test_b0_conventions() -> None:
    assert b0_tip(0.5, "sin") == pytest.approx(0.125, rel=1e-14)
    assert b0_tip(0.5, "tan") == pytest.approx(0.1490712, rel=1e-6)
    assert b0_tip(1.0, "sin") == 0.0
    with pytest.raises(ValueError):
        b0_tip(0.5, "cos")  # type: ignore[arg-type]
    with pytest.raises(ValueError):
        b0_tip(0.0)
    with pytest.raises(ValueError):
        b0_tip(2.0, "tan")


@pytest.mark.parametrize("c", [0.2, 0.5, 0.9])
def test_tan_convention_exceeds_sin(c: float) -> None:
    assert b0_tip(c, "tan") > b0_tip(c, "sin")


@pytest.mark.parametrize("c", [0.2, 0.5, 0.8])
def test_b0_antisymmetric_under_inverse_slope(c: float) -> None:
    assert b0_tip(1.0 / c) == pytest.approx(-b0_tip(c), rel=1e-14)


@pytest.mark.parametrize("reading", ["published", "continued"])
@pytest.mark.parametrize(("kappa_a", "kappa_b"), [(0.4, -0.1), (1.0, 0.25)])
def test_bhalf_linear_in_kappa(reading: Reading, kappa_a: float, kappa_b: float) -> None:
    total = bhalf_tip(0.6, kappa_a + kappa_b, reading)
    parts = bhalf_tip(0.6, kappa_a, reading) + bhalf_tip(0.6, kappa_b, reading)
    assert total == pytest.approx(parts, rel=1e-9)


def test_bhalf_readings() -> None:
    assert bhalf_tip(0.6, 0.4) == pytest.approx(5 * 0.4 / (96 * math.sqrt(math.pi) * 0.6))
    assert bhalf_tip(0.6, 0.0, "continued") == 0.0
    assert bhalf_tip(0.5, 1.0, "continued") == pytest.approx(-math.sqrt(math.pi) / 8.0, rel=1e-7)


def test_curved_spindle_prediction() -> None:
    profile = build_profile("curved_spindle", {"c": 0.6, "kappa": 0.4})
    prediction = predict(profile)
    assert len(prediction.b0_per_tip) == 2
    assert prediction.b0_total == pytest.approx(2 * b0_tip(0.6), rel=1e-12)
    assert prediction.bhalf_total == pytest.approx(0.0391797, rel=1e-5)
    assert prediction.alternatives["bhalf_continued"] == pytest.approx(
        (-0.1003883 / 2, -0.1003883 / 2), rel=1e-5
    )
    assert prediction.boundary_half == 0.0
    assert prediction.boundary_bhalf == 0.0
    area = 4.0 * math.pi * 0.6 + math.pi**2 * 0.4 / 2.0
    assert prediction.area_coefficient == pytest.approx(area / (4.0 * math.pi), rel=1e-10)


def test_prediction_follows_convention_and_reading() -> None:
    profile = build_profile("curved_spindle", {"c": 0.6, "kappa": 0.4})
    prediction = predict(profile, convention="tan", reading="continued")
    assert prediction.b0_per_tip == prediction.alternatives["b0_tan"]
    assert prediction.bhalf_per_tip == prediction.alternatives["bhalf_continued"]
    assert prediction.t0_total == pytest.approx(
        prediction.interior_t0 + prediction.boundary_t0 + 2 * b0_tip(0.6, "tan")
    )


def test_sphere_tips_are_smooth() -> None:
    prediction = predict(build_profile("sphere"))
    assert len(prediction.tips) == 2
    assert all(tip.c == pytest.approx(1.0, abs=1e-14) for tip in prediction.tips)
    assert prediction.b0_per_tip == pytest.approx((0.0, 0.0), abs=1e-14)
    assert prediction.bhalf_per_tip == pytest.approx((0.0, 0.0), abs=1e-14)
    assert prediction.t0_total == pytest.approx(1.0 / 3.0, rel=1e-10)
    assert prediction.area_coefficient == pytest.approx(1.0, rel=1e-12)


def test_flat_cone_rim_terms() -> None:
    profile = build_profile("flat_cone", {"c": 0.5})
    assert boundary_half(profile) == pytest.approx(-math.sqrt(math.pi) / 8.0, rel=1e-12)
    assert boundary_bhalf(profile) == pytest.approx(math.sqrt(math.pi) / 256.0, rel=1e-12)
    prediction = predict(profile)
    assert prediction.area_coefficient == pytest.approx(0.125, rel=1e-12)
    assert prediction.t0_total == pytest.approx(1.0 / 12.0 + 0.125, rel=1e-10)
    assert prediction.half_total == pytest.approx(math.sqrt(math.pi) / 256.0, rel=1e-12)


def test_prediction_serialises() -> None:
    prediction = predict(build_profile("curved_spindle", {"c": 0.6, "kappa": 0.4}))
    data = json.loads(json.dumps(prediction.to_dict(), allow_nan=False))
    assert data["convention"] == "sin"
    assert data["reading"] == "published"
    assert set(data["totals"]) == {"b0", "bhalf", "t_half", "t0"}
    assert len(data["tips"]) == 2
