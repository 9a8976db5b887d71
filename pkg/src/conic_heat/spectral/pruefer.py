"""Prüfer phase counting for −u″ + V_k u = λ u.

With u = ρ sin θ, u′ = ρ cos θ the phase obeys θ′ = cos²θ + (λ − V) sin²θ and
increases through every multiple of π. Friedrichs ends start from the
Frobenius solution u ~ r^{ν+½}(1 + a₁ r); a Dirichlet rim is read off the phase
reached there. Closed spindles integrate from both tips to the midpoint and
add the phases.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray
from scipy import integrate

from conic_heat.core.errors import CertificationError
from conic_heat.spectral.mode import EndData, ModeOperator

_RTOL = 1e-10
_ATOL = 1e-12


def _start_offset(R: float, lam: float) -> float:
    if lam <= 0.0:
        return 1e-3 * R
    return min(1e-3 * R, 1e-2 / math.sqrt(lam))


def _start_phase(end: EndData, delta: float) -> float:
    mu = end.nu + 0.5
    a1 = end.frobenius_slope
    return math.atan2(delta * (1.0 + a1 * delta), mu + (mu + 1.0) * a1 * delta)


def _phase(op: ModeOperator, lam: float, *, from_right: bool, stop: float) -> float:
    delta = _start_offset(op.R, lam)
    end = op.right if from_right else op.left
    theta0 = _start_phase(end, delta)
    R = op.R

    def rhs(x: float, y: NDArray[np.float64]) -> list[float]:
        r = R - x if from_right else x
        s = math.sin(y[0])
        c = math.cos(y[0])
        return [c * c + (lam - op.potential_at(r)) * s * s]

    solution = integrate.solve_ivp(
        rhs,
        (delta, stop),
        [theta0],
        method="DOP853",
        rtol=_RTOL,
        atol=_ATOL,
    )
    if not solution.success:
        raise CertificationError(f"Prüfer integration failed for k={op.k}: {solution.message}")
    return float(solution.y[0, -1])


def count_below(op: ModeOperator, lam: float) -> int:
    """Number of eigenvalues of the Friedrichs mode operator strictly below ``lam``."""
    if op.right.condition == "dirichlet":
        theta = _phase(op, lam, from_right=False, stop=op.R)
        return max(0, math.floor(theta / math.pi))
    mid = 0.5 * op.R
    total = _phase(op, lam, from_right=False, stop=mid) + _phase(op, lam, from_right=True, stop=mid)
    return max(0, math.floor(total / math.pi))
