"""Modified Bessel functions with overflow detection.

Thin wrappers over ``scipy.special``; the exponentially scaled variants are
preferred wherever products I_ν K_ν appear because the scalings cancel.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from conic_heat.core.errors import BesselOverflowError

FloatOrArray = float | NDArray[np.float64]


def _check_domain(nu: ArrayLike, x: ArrayLike) -> None:
    if np.any(np.asarray(x) <= 0.0):
        raise ValueError("Bessel argument x must be positive")
    if np.any(np.asarray(nu) < 0.0):
        raise ValueError("Bessel order nu must be nonnegative")


def _finite(values: NDArray[np.float64], name: str, nu: ArrayLike, x: ArrayLike) -> FloatOrArray:
    if not np.all(np.isfinite(values)):
        raise BesselOverflowError(
            f"{name}(nu={nu!r}, x={x!r}) overflows; use the scaled variant"
        )
    return float(values) if values.ndim == 0 else values


def bessel_i(nu: ArrayLike, x: ArrayLike) -> FloatOrArray:
    _check_domain(nu, x)
    return _finite(np.asarray(special.iv(nu, x), dtype=float), "I", nu, x)


def bessel_k(nu: ArrayLike, x: ArrayLike) -> FloatOrArray:
    _check_domain(nu, x)
    return _finite(np.asarray(special.kv(nu, x), dtype=float), "K", nu, x)


def bessel_i_scaled(nu: ArrayLike, x: ArrayLike) -> FloatOrArray:
    """e^{-x} I_ν(x)."""
    _check_domain(nu, x)
    return _finite(np.asarray(special.ive(nu, x), dtype=float), "Ie", nu, x)


def bessel_k_scaled(nu: ArrayLike, x: ArrayLike) -> FloatOrArray:
    """e^{x} K_ν(x)."""
    _check_domain(nu, x)
    return _finite(np.asarray(special.kve(nu, x), dtype=float), "Ke", nu, x)


def wronskian(nu: ArrayLike, x: ArrayLike) -> FloatOrArray:
    """I_ν'(x)K_ν(x) − I_ν(x)K_ν'(x), assembled from the order recurrences; equals 1/x."""
    _check_domain(nu, x)
    nu_arr = np.asarray(nu, dtype=float)
    ie = special.ive
    ke = special.kve
    di = 0.5 * (ie(nu_arr - 1.0, x) + ie(nu_arr + 1.0, x))
    dk = -0.5 * (ke(nu_arr - 1.0, x) + ke(nu_arr + 1.0, x))
    values = np.asarray(di * ke(nu_arr, x) - ie(nu_arr, x) * dk, dtype=float)
    return _finite(values, "W", nu, x)
