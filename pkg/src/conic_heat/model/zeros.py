"""Spectral oracles: Bessel-function zeros and exact spindle eigenvalues."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import optimize, special

from conic_heat.core.errors import RootFindingError

_SCAN_STEP = 0.25


def mcmahon_zero(nu: float, n: int) -> float:
    """McMahon's large-n estimate of the n-th positive zero of J_ν."""
    mu = 4.0 * nu * nu
    beta = (n + 0.5 * nu - 0.25) * math.pi
    eight_beta = 8.0 * beta
    return (
        beta
        - (mu - 1.0) / eight_beta
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * eight_beta**3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * eight_beta**5)
    )


@lru_cache(maxsize=1024)
def bessel_j_zeros(nu: float, count: int) -> tuple[float, ...]:
    """First ``count`` positive zeros of J_ν.

    No zero lies below ν and consecutive zeros are more than 2.4 apart, so a
    sign scan with step 0.25 from ν brackets every zero exactly once.
    """
    if nu < 0.0:
        raise ValueError(f"nu must be nonnegative, got {nu!r}")
    if count < 1:
        return ()

    def j(x: float) -> float:
        return float(special.jv(nu, x))

    zeros: list[float] = []
    start = nu
    end = max(mcmahon_zero(nu, count), nu) + 2.0 * math.pi
    for _ in range(64):
        grid = np.arange(start, end + _SCAN_STEP, _SCAN_STEP)
        values = special.jv(nu, grid)
        for i in np.nonzero(values[:-1] * values[1:] < 0.0)[0]:
            try:
                root = optimize.brentq(
                    j, grid[i], grid[i + 1], xtol=1e-15, rtol=4.5e-16, maxiter=200
                )
            except (RuntimeError, ValueError) as exc:
                raise RootFindingError(f"J_{nu} zero in [{grid[i]}, {grid[i + 1]}]: {exc}") from exc
            zeros.append(float(root))
            if len(zeros) == count:
                return tuple(zeros)
        start = float(grid[-1])
        end = start + math.pi * (count - len(zeros) + 2)
    raise RootFindingError(f"found only {len(zeros)} of {count} zeros of J_{nu}")


def flat_cone_eigenvalue(c: float, k: int, n: int, radius: float = 1.0) -> float:
    """j²_{k/c, n} / radius²: Dirichlet eigenvalue of the flat cone f = c·r."""
    if not 0.0 < c <= 1.0:
        raise ValueError(f"c must lie in (0, 1], got {c!r}")
    if k < 0 or n < 1:
        raise ValueError(f"need k >= 0 and n >= 1, got k={k}, n={n}")
    zero = bessel_j_zeros(k / c, n)[n - 1]
    return zero * zero / (radius * radius)


def spindle_eigenvalue(beta: float, k: int, n: int) -> float:
    """Eigenvalue n of mode k on f = β·sin r: Legendre order m = k/β, λ = l(l+1), l = m+n−1."""
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta!r}")
    if k < 0 or n < 1:
        raise ValueError(f"need k >= 0 and n >= 1, got k={k}, n={n}")
    degree = k / beta + n - 1
    return degree * (degree + 1.0)
