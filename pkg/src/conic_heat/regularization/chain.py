"""The b^ρ₁ coefficient of a curved tip, assembled from the regularised sums.

Near s = −1 the first-order tip correction contributes

    −d (κ/c) / (4√π d!) · Γ(d+1+s/2) Γ(−½−s/2) · Σ(s)

whose finite part at s = −1 is b^ρ₁. Γ(−½−s/2) has a simple pole there, so the
value depends on how the angular sum Σ is read (see :mod:`.sums`).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from conic_heat.core.errors import RegularizationError
from conic_heat.regularization.sums import (
    READINGS,
    Reading,
    RegularizedValue,
    gamma_ratio_sum,
    tip_correction_sum,
)

_S = -1.0


def gamma_prefactor_laurent(d: int) -> RegularizedValue:
    """Laurent data of Γ(d+1+s/2)Γ(−½−s/2) at s = −1.

    With ε = s + 1: Γ(−ε/2) = −2/ε − γ + O(ε) and
    Γ(d+½+ε/2) = Γ(d+½)(1 + ψ(d+½) ε/2 + O(ε²)).
    """
    if d < 2:
        raise ValueError(f"resolvent power d must be >= 2, got {d!r}")
    g = float(special.gamma(d + 0.5))
    residue = -2.0 * g
    constant = -g * (np.euler_gamma + float(special.psi(d + 0.5)))
    return RegularizedValue(regular_part=constant, pole_residue=residue)


def laurent_product(pole: RegularizedValue, value: float, derivative: float) -> RegularizedValue:
    """Product of R/ε + C with an analytic factor g(s₀) + g'(s₀)ε."""
    return RegularizedValue(
        regular_part=pole.pole_residue * derivative + pole.regular_part * value,
        pole_residue=pole.pole_residue * value,
    )


def _prefactor(c: float, kappa: float, d: int) -> float:
    return -d * (kappa / c) / (4.0 * math.sqrt(math.pi) * math.factorial(d))


def b_rho_1(c: float, kappa: float, d: int, *, reading: Reading = "published") -> float:
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if reading == "published":
        angular = gamma_ratio_sum(c, d, _S, reading="published")
        return _prefactor(c, kappa, d) * angular.regular_part * float(special.gamma(d + 0.5))

    value = tip_correction_sum(c, _S)
    slope = tip_correction_sum(c, _S, derivative=True)
    product = laurent_product(gamma_prefactor_laurent(d), value, slope)
    if abs(product.pole_residue) > 1e-9 * max(1.0, abs(product.regular_part)):
        raise RegularizationError(
            f"continued chain left a pole of residue {product.pole_residue:.3e} at s=-1"
        )
    return _prefactor(c, kappa, d) * product.regular_part


def published_closed_form(c: float, kappa: float, d: int) -> float:
    """(κ/c)·5Γ(d+½)/(96√π(d−1)!), the value the published chain collapses to."""
    return (kappa / c) * 5.0 * float(special.gamma(d + 0.5)) / (
        96.0 * math.sqrt(math.pi) * math.factorial(d - 1)
    )
