"""Chebyshev–Gauss collocation of a single mode operator.

The eigenfunction is written w = P·g where P carries the Friedrichs behaviour
r^ν at each tip (and the Dirichlet zero R − r for caps). With p = P′/P and
q = f′/f the factor g solves

    −g″ − b g′ + W g = λ g,   b = 2p + q,   W = k²/f² − p′ − p² − q p,

whose solutions selected by polynomials are exactly the Friedrichs ones.
Nodes r_j = R sin²(θ_j/2) with θ_j = (2j−1)π/2N never touch the endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from conic_heat.core.base import LOGGER
from conic_heat.profiles import CLOSED_SPINDLE
from conic_heat.spectral.mode import ModeOperator

_IMAG_TOLERANCE = 1e-8


@dataclass(frozen=True)
class CollocationGrid:
    theta: NDArray[np.float64]
    r: NDArray[np.float64]
    rho: NDArray[np.float64]
    d1: NDArray[np.float64]
    d2: NDArray[np.float64]


def collocation_grid(n: int, R: float) -> CollocationGrid:
    if n < 4:
        raise ValueError(f"need at least 4 collocation points, got {n}")
    j = np.arange(1, n + 1, dtype=float)
    theta = (2.0 * j - 1.0) * np.pi / (2.0 * n)
    half = 0.5 * theta
    r = R * np.sin(half) ** 2
    rho = R * np.cos(half) ** 2

    # x = cos θ; differences via the product formula keep clustered nodes accurate
    ti = theta[:, None]
    tj = theta[None, :]
    dx = -2.0 * np.sin(0.5 * (ti + tj)) * np.sin(0.5 * (ti - tj))
    np.fill_diagonal(dx, 1.0)
    w = (-1.0) ** j * np.sin(theta)
    d1 = (w[None, :] / w[:, None]) / dx
    np.fill_diagonal(d1, 0.0)
    np.fill_diagonal(d1, -d1.sum(axis=1))
    d2 = 2.0 * d1 * (np.diag(d1)[:, None] - 1.0 / dx)
    np.fill_diagonal(d2, 0.0)
    np.fill_diagonal(d2, -d2.sum(axis=1))

    # r = R(1 − x)/2
    scale = -2.0 / R
    return CollocationGrid(theta=theta, r=r, rho=rho, d1=scale * d1, d2=scale * scale * d2)


def factored_coefficients(
    op: ModeOperator, grid: CollocationGrid
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Drift b and potential shift W of the equation for g on the grid."""
    profile = op.profile
    r = grid.r
    f = profile.f(r)
    f1 = profile.f(r, 1)
    f2 = profile.f(r, 2)
    q = f1 / f
    angular = op.k * op.k / (f * f)
    curvature = f2 / f
    alpha = op.nu0
    if profile.topology == CLOSED_SPINDLE:
        beta = op.nuR if op.nuR is not None else 0.0
        mu = alpha + (beta - alpha) * r / op.R
        mu_prime = (beta - alpha) / op.R
        b = (2.0 * mu + 1.0) * q
        shift = angular - mu_prime * q - mu * curvature - mu * mu * q * q
    else:
        inv_rho = 1.0 / grid.rho
        b = (2.0 * alpha + 1.0) * q - 2.0 * inv_rho
        shift = angular - alpha * curvature - alpha * alpha * q * q
        shift = shift + (2.0 * alpha + 1.0) * q * inv_rho
    return b, shift


def collocation_eigenvalues(op: ModeOperator, n: int) -> NDArray[np.float64]:
    """Real parts of the collocation eigenvalues, ascending, spurious values removed."""
    grid = collocation_grid(n, op.R)
    b, shift = factored_coefficients(op, grid)
    matrix = -grid.d2 - b[:, None] * grid.d1
    matrix[np.diag_indices(n)] += shift
    values = linalg.eig(matrix, right=False, check_finite=False)
    bound = _IMAG_TOLERANCE * np.maximum(1.0, np.abs(values.real))
    keep = np.isfinite(values) & (np.abs(values.imag) <= bound)
    dropped = int(values.size - np.count_nonzero(keep))
    if dropped:
        LOGGER.debug("mode k=%d, N=%d: dropped %d complex eigenvalues", op.k, n, dropped)
    return np.sort(values.real[keep])
