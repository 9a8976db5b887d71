"""Mellin transform of the model resolvent kernel on the diagonal.

For d ≥ 1 and max(−2−2d, −2−2ν) < s < −1,

    ∫₀^∞ r^s (T_ν+1)^{-d-1}(r,r) dr
        = Γ(d+1+s/2) Γ(−½−s/2) Γ(ν+1+s/2) / (4√π d! Γ(ν−s/2)).

The quadrature side integrates the head [0, r₀] analytically from the
leading small-r power, the body with adaptive quadrature on log-spaced
pieces, and the tail [L, ∞) from the large-r asymptotic series.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from conic_heat.core.base import LOGGER
from conic_heat.core.errors import QuadratureError
from conic_heat.model.kernel import (
    ModelKernel,
    kernel_large_r_coefficients,
    resolvent_diag,
    resolvent_diag_from_heat,
)

HEAD_RADIUS = 1e-5
TAIL_TERMS = 8


def mellin_strip(nu: float, d: int) -> tuple[float, float]:
    return max(-2.0 - 2.0 * d, -2.0 - 2.0 * nu), -1.0


def _check_strip(nu: float, d: int, s: float) -> None:
    if d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    if nu < 0.0:
        raise ValueError(f"nu must be nonnegative, got {nu!r}")
    lo, hi = mellin_strip(nu, d)
    if not lo < s < hi:
        raise ValueError(f"s={s!r} outside the convergence strip ({lo}, {hi})")


def mellin_diag_closed(nu: float, d: int, s: float) -> float:
    _check_strip(nu, d, s)
    numerator = special.gamma(d + 1 + s / 2) * special.gamma(-0.5 - s / 2)
    numerator *= special.gamma(nu + 1 + s / 2)
    denominator = 4.0 * math.sqrt(math.pi) * math.factorial(d) * special.gamma(nu - s / 2)
    return float(numerator / denominator)


def _tail_radius(nu: float) -> float:
    return max(30.0, 4.0 * nu + 10.0)


def mellin_diag_quadrature(nu: float, d: int, s: float) -> float:
    _check_strip(nu, d, s)
    kernel = ModelKernel(nu, d + 1)
    switch = 1.0 + 0.5 * nu

    def near(r: float) -> float:
        return r**s * resolvent_diag_from_heat(kernel, r)

    def far(r: float) -> float:
        return float(r**s * resolvent_diag(kernel, r, 1.0))

    r0 = HEAD_RADIUS
    sigma = 1.0 + 2.0 * min(nu, float(d))
    amplitude = resolvent_diag_from_heat(kernel, r0) / r0**sigma
    head = amplitude * r0 ** (s + 1.0 + sigma) / (s + 1.0 + sigma)

    tail_radius = _tail_radius(nu)
    pieces = [(near, a, b) for a, b in _pairs(np.geomspace(r0, switch, 7))]
    pieces += [(far, a, b) for a, b in _pairs(np.geomspace(switch, tail_radius, 6))]
    body = 0.0
    error = 0.0
    for func, a, b in pieces:
        value, abserr = integrate.quad(func, a, b, epsabs=0.0, epsrel=1e-10, limit=200)
        body += value
        error += abserr

    tail = 0.0
    for j, coef in enumerate(kernel_large_r_coefficients(nu, d + 1, TAIL_TERMS)):
        tail += coef * tail_radius ** (s + 1.0 - 2 * j) / (2 * j - s - 1.0)

    total = head + body + tail
    if error > 1e-8 * abs(total):
        raise QuadratureError(
            f"Mellin quadrature nu={nu}, d={d}, s={s}: error estimate {error:.3g} too large"
        )
    LOGGER.debug("mellin nu=%s d=%s s=%s head=%.3e body=%.6e tail=%.6e", nu, d, s, head, body, tail)
    return total


def _pairs(edges: np.ndarray) -> list[tuple[float, float]]:
    return [(float(a), float(b)) for a, b in zip(edges[:-1], edges[1:])]
