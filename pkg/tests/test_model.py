from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from conic_heat.checks.model_checks import mellin_grid
from conic_heat.core.errors import BesselOverflowError
from conic_heat.model import (
    ModelKernel,
    bessel_i,
    bessel_j_zeros,
    bessel_k,
    bessel_sum_rules,
    flat_cone_eigenvalue,
    heat_kernel_diag,
    mellin_diag_closed,
    mellin_diag_quadrature,
    resolvent_diag,
    resolvent_diag_from_heat,
    spindle_eigenvalue,
    wronskian,
)


def test_bessel_reference_values() -> None:
    assert bessel_i(0.0, 1.0) == pytest.approx(1.2660658778, rel=1e-10)
    assert bessel_k(0.5, 1.0) == pytest.approx(math.sqrt(math.pi / 2.0) * math.exp(-1.0), rel=1e-12)
    assert bessel_k(0.5, 1.0) == pytest.approx(0.4610685044, rel=1e-9)


def test_wronskian_spot_value() -> None:
    assert wronskian(2.5, 3.0) == pytest.approx(1.0 / 3.0, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=0.0, max_value=20.0),
    st.floats(min_value=0.1, max_value=50.0),
)
def test_wronskian_identity(nu: float, x: float) -> None:
    assert float(wronskian(nu, x)) * x == pytest.approx(1.0, abs=1e-11), f"nu={nu}, x={x}"


def test_bessel_overflow_detected() -> None:
    with pytest.raises(BesselOverflowError):
        bessel_i(0.0, 800.0)


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_bessel_domain(x: float) -> None:
    with pytest.raises(ValueError):
        bessel_k(1.0, x)


def test_resolvent_half_integer_closed_form() -> None:
    value = resolvent_diag(ModelKernel(0.5, 1), 1.0, 1.0)
    assert value == pytest.approx((1.0 - math.exp(-2.0)) / 2.0, rel=1e-12)


def test_scaling_spot_value() -> None:
    kernel = ModelKernel(1.0, 2)
    lhs = resolvent_diag(kernel, 0.7, 3.0)
    rhs = 3.0 ** (-3) * resolvent_diag(kernel, 2.1, 1.0)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    st.floats(min_value=0.0, max_value=10.0),
    st.integers(min_value=1, max_value=4),
    st.floats(min_value=0.05, max_value=5.0),
    st.floats(min_value=0.1, max_value=5.0),
)
def test_scaling_identity(nu: float, d: int, r: float, z: float) -> None:
    kernel = ModelKernel(nu, d)
    lhs = resolvent_diag(kernel, r, z)
    rhs = z ** (1 - 2 * d) * resolvent_diag(kernel, z * r, 1.0)
    assert lhs == pytest.approx(rhs, rel=1e-12), f"nu={nu}, d={d}, r={r}, z={z}"


def test_second_power_matches_finite_difference() -> None:
    first = ModelKernel(0.0, 1)
    h = 1e-4
    upper = resolvent_diag(first, 1.0, 1.0 + h)
    lower = resolvent_diag(first, 1.0, 1.0 - h)
    derivative = (upper - lower) / (2 * h)
    expected = -0.5 * derivative
    assert resolvent_diag(ModelKernel(0.0, 2), 1.0, 1.0) == pytest.approx(expected, rel=1e-7)


@pytest.mark.parametrize(("nu", "d"), [(0.0, 1), (1.0, 2), (2.5, 3)])
def test_resolvent_decreases_in_z(nu: float, d: int) -> None:
    z = np.linspace(0.6, 6.0, 40)
    values = np.asarray(resolvent_diag(ModelKernel(nu, d), 0.8, z))
    assert np.all(values > 0.0)
    assert np.all(np.diff(values) < 0.0), f"nu={nu}, d={d}"


@pytest.mark.parametrize(("nu", "d", "r"), [(0.0, 1, 1.0), (1.5, 2, 0.5), (3.0, 3, 2.0)])
def test_heat_kernel_laplace_transform(nu: float, d: int, r: float) -> None:
    kernel = ModelKernel(nu, d)
    assert resolvent_diag_from_heat(kernel, r) == pytest.approx(
        resolvent_diag(kernel, r, 1.0), rel=1e-8
    )


def test_heat_kernel_flat_limit() -> None:
    # far from the tip the diagonal approaches the free kernel 1/√(4πt)
    t = 1e-3
    free = 1.0 / math.sqrt(4 * math.pi * t)
    assert heat_kernel_diag(2.0, t, 5.0) == pytest.approx(free, rel=1e-3)


@pytest.mark.parametrize("y", [0.5, 5.0, 100.0])
def test_bessel_sum_rules(y: float) -> None:
    plain, second = bessel_sum_rules(y)
    assert plain == pytest.approx(1.0, abs=1e-12)
    assert second == pytest.approx(1.0, abs=1e-12)


def test_mellin_closed_form_spot_value() -> None:
    expected = (
        special.gamma(2.25)
        * special.gamma(0.25)
        * special.gamma(1.25)
        / (8.0 * math.sqrt(math.pi) * special.gamma(1.75))
    )
    assert mellin_diag_closed(1.0, 2, -1.5) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(("nu", "d", "s"), mellin_grid())
def test_mellin_identity_grid(nu: float, d: int, s: float) -> None:
    assert mellin_diag_quadrature(nu, d, s) == pytest.approx(
        mellin_diag_closed(nu, d, s), rel=1e-6
    ), f"nu={nu}, d={d}, s={s}"


def test_mellin_pole_approach_grows() -> None:
    values = [abs(mellin_diag_closed(1.0, 2, -1.0 - 10.0**-m)) for m in range(1, 7)]
    assert all(b > a for a, b in zip(values, values[1:])), f"{values}"


def test_mellin_rejects_points_outside_strip() -> None:
    with pytest.raises(ValueError, match="strip"):
        mellin_diag_closed(0.0, 1, -2.5)


def test_flat_cone_eigenvalue_reference_values() -> None:
    assert flat_cone_eigenvalue(1.0, 0, 1) == pytest.approx(5.7831859629, rel=1e-10)
    assert flat_cone_eigenvalue(0.5, 1, 1) == pytest.approx(26.3746164, rel=1e-8)


@pytest.mark.parametrize("nu", [0.0, 0.5, 2.0, 13.3])
def test_bessel_zeros_are_zeros_and_increasing(nu: float) -> None:
    zeros = bessel_j_zeros(nu, 12)
    assert len(zeros) == 12
    assert all(b - a > 2.4 for a, b in zip(zeros, zeros[1:]))
    for j in zeros:
        assert abs(special.jv(nu, j)) < 1e-12, f"nu={nu}, j={j}"


def test_spindle_eigenvalues_reduce_to_sphere() -> None:
    for k in range(4):
        for n in range(1, 4):
            degree = k + n - 1
            assert spindle_eigenvalue(1.0, k, n) == degree * (degree + 1)
    assert spindle_eigenvalue(0.5, 1, 1) == pytest.approx(6.0)
