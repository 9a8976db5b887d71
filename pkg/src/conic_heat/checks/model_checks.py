"""Identities of the flat-cone model kernel."""

from __future__ import annotations

import itertools

import numpy as np

from conic_heat.checks.registry import CheckInfo, CheckResult, outcome, register, relative_error
from conic_heat.model import (
    ModelKernel,
    bessel_sum_rules,
    mellin_diag_closed,
    mellin_diag_quadrature,
    mellin_strip,
    resolvent_diag,
    resolvent_diag_from_heat,
    wronskian,
)

MELLIN_NU = (0.0, 0.5, 1.0, 2.0, 5.0)
MELLIN_D = (1, 2, 3)
MELLIN_S = (-1.2, -1.5, -1.9)
SCALING_SAMPLES = 50
SEED = 20240611


def mellin_grid() -> list[tuple[float, int, float]]:
    grid = []
    for nu, d, s in itertools.product(MELLIN_NU, MELLIN_D, MELLIN_S):
        lo, hi = mellin_strip(nu, d)
        if lo < s < hi:
            grid.append((nu, d, s))
    return grid


@register(
    CheckInfo(
        name="mellin identity",
        group="model",
        description="Mellin quadrature of the resolvent diagonal vs Gamma closed form (relative)",
    )
)
def mellin_identity() -> CheckResult:
    worst = 0.0
    where = ""
    for nu, d, s in mellin_grid():
        err = relative_error(mellin_diag_quadrature(nu, d, s), mellin_diag_closed(nu, d, s))
        if err >= worst:
            worst, where = err, f"nu={nu}, d={d}, s={s}"
    return outcome("mellin identity", worst, 1e-6, f"worst at {where}")


@register(
    CheckInfo(
        name="scaling identity",
        group="model",
        description="resolvent(r, z) = z^(1-2d) resolvent(zr, 1) on seeded samples (relative)",
    )
)
def scaling_identity() -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(SCALING_SAMPLES):
        kernel = ModelKernel(float(rng.uniform(0.0, 10.0)), int(rng.integers(1, 5)))
        r = float(rng.uniform(0.05, 5.0))
        z = float(rng.uniform(0.1, 5.0))
        lhs = float(resolvent_diag(kernel, r, z))
        rhs = z ** (1 - 2 * kernel.d) * float(resolvent_diag(kernel, z * r, 1.0))
        worst = max(worst, relative_error(lhs, rhs))
    return outcome("scaling identity", worst, 1e-12, f"{SCALING_SAMPLES} samples")


@register(
    CheckInfo(
        name="wronskian",
        group="model",
        description="I'K - IK' = 1/x on seeded samples (relative)",
    )
)
def wronskian_identity() -> CheckResult:
    rng = np.random.default_rng(SEED + 1)
    nu = rng.uniform(0.0, 20.0, size=200)
    x = np.exp(rng.uniform(np.log(0.1), np.log(50.0), size=200))
    values = np.asarray(wronskian(nu, x)) * x
    return outcome("wronskian", float(np.max(np.abs(values - 1.0))), 1e-11, "200 samples")


LAPLACE_CASES = tuple(itertools.product((0.0, 0.5, 1.5, 3.0), (1, 2, 3), (0.5, 1.0, 2.0)))


@register(
    CheckInfo(
        name="laplace duality",
        group="model",
        description="resolvent diagonal vs Laplace transform of the heat kernel (relative)",
    )
)
def laplace_duality() -> CheckResult:
    worst = 0.0
    where = ""
    for nu, d, r in LAPLACE_CASES:
        kernel = ModelKernel(nu, d)
        exact = float(resolvent_diag(kernel, r, 1.0))
        err = relative_error(resolvent_diag_from_heat(kernel, r), exact)
        if err >= worst:
            worst, where = err, f"nu={nu}, d={d}, r={r}"
    return outcome("laplace duality", worst, 1e-8, f"worst at {where}")


@register(
    CheckInfo(
        name="bessel sum rules",
        group="model",
        description="sum_k I_k(y) = e^y and sum_k k^2 I_k(y) = y e^y (relative)",
    )
)
def sum_rules() -> CheckResult:
    worst = 0.0
    for y in (0.5, 1.0, 5.0, 20.0, 100.0):
        plain, second = bessel_sum_rules(y)
        worst = max(worst, abs(plain - 1.0), abs(second - 1.0))
    return outcome("bessel sum rules", worst, 1e-12)
