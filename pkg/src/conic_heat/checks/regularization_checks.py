"""Regularized-sum chain, continued-reading references and coefficient conversion."""

from __future__ import annotations

import math

import numpy as np

from conic_heat.checks.registry import CheckInfo, CheckResult, outcome, register, relative_error
from conic_heat.coefficients import bhalf_tip
from conic_heat.regularization import (
    CoefficientSet,
    b_factor,
    b_rho_1,
    gamma_ratio_sum,
    heat_from_resolvent,
    published_closed_form,
    resolvent_from_heat,
)

CHAIN_D = (2, 3, 4)
CHAIN_C = (0.3, 0.5, 1.0)
CHAIN_KAPPA = 0.3

# continued b_{1/2} per tip and unit κ
CONTINUED_REFERENCE: tuple[tuple[float, float, float], ...] = (
    (0.5, -math.sqrt(math.pi) / 8.0, 1e-7),
    (0.6, -0.1254853709, 1e-6),
    (0.8, -0.0377072087, 1e-6),
)


@register(
    CheckInfo(
        name="published chain",
        group="regularization",
        description="gamma-ratio collapse, b^rho_1 closed form, d-free heat value (relative)",
    )
)
def published_chain() -> CheckResult:
    worst = 0.0
    where = ""
    for c in CHAIN_C:
        collapse = gamma_ratio_sum(c, 2, -1.0).regular_part
        err = relative_error(collapse, -5.0 / 24.0)
        if err >= worst:
            worst, where = err, f"sum at c={c}"
        heat_target = 5.0 * CHAIN_KAPPA / (96.0 * math.sqrt(math.pi) * c)
        for d in CHAIN_D:
            value = b_rho_1(c, CHAIN_KAPPA, d)
            for label, err in (
                ("b_rho_1", relative_error(value, published_closed_form(c, CHAIN_KAPPA, d))),
                ("b_1/2", relative_error(b_factor(d, 1) * value, heat_target)),
            ):
                if err >= worst:
                    worst, where = err, f"{label} at c={c}, d={d}"
    return outcome("published chain", worst, 1e-10, f"worst {where}")


@register(
    CheckInfo(
        name="continued references",
        group="regularization",
        description="continued-reading b_1/2 per unit kappa against reference values (relative)",
    )
)
def continued_references() -> CheckResult:
    smooth = abs(bhalf_tip(1.0, 1.0, "continued"))
    if smooth > 1e-9:
        return outcome("continued references", smooth, 1e-9, "smooth tip c=1 is not zero")
    worst = 0.0
    where = ""
    for c, reference, tolerance in CONTINUED_REFERENCE:
        # scaled so that every case shares a tolerance of one
        err = relative_error(bhalf_tip(c, 1.0, "continued"), reference) / tolerance
        if err >= worst:
            worst, where = err, f"c={c}"
    return outcome("continued references", worst, 1.0, f"worst at {where}, in units of tolerance")


@register(
    CheckInfo(
        name="conversion identities",
        group="regularization",
        description="unit b_0 factor and heat/resolvent round trip (relative)",
    )
)
def conversion_identities() -> CheckResult:
    for d in range(2, 8):
        if b_factor(d, 0) != 1.0:
            return outcome("conversion identities", abs(b_factor(d, 0) - 1.0), 0.0, f"d={d}")
    rng = np.random.default_rng(7)
    worst = 0.0
    for d in (2, 3, 4, 5):
        resolvent = CoefficientSet(
            d=d,
            a_rho=tuple(rng.uniform(-2.0, 2.0, size=3).tolist()),
            b_rho=tuple(rng.uniform(-2.0, 2.0, size=4).tolist()),
            c_rho=tuple(rng.uniform(-2.0, 2.0, size=3).tolist()),
        )
        back = resolvent_from_heat(heat_from_resolvent(resolvent))
        for before, after in (
            (resolvent.a_rho, back.a_rho),
            (resolvent.b_rho, back.b_rho),
            (resolvent.c_rho, back.c_rho),
        ):
            for x, y in zip(before, after, strict=True):
                worst = max(worst, relative_error(y, x))
    return outcome("conversion identities", worst, 1e-14)
