"""Diagonal kernels of the flat model operator T_ν = −∂_r² + (ν² − ¼)/r².

The resolvent power (T_ν + z²)^{-p} has diagonal

    (1/(p−1)!) · (−(1/2ζ) ∂_ζ)^{p−1} [ r I_ν(rζ) K_ν(rζ) ]  at ζ = z.

The ζ-derivatives are expanded once per power into a finite sum of terms
c · r^m ζ^{-n} I_{ν+a}(rζ) K_{ν+b}(rζ) with exact rational c, using
I_μ' = (I_{μ−1} + I_{μ+1})/2 and K_μ' = −(K_{μ−1} + K_{μ+1})/2.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from conic_heat.model.bessel import FloatOrArray


@dataclass(frozen=True)
class KernelTerm:
    coefficient: Fraction
    r_power: int
    z_power: int
    i_shift: int
    k_shift: int


@lru_cache(maxsize=32)
def kernel_terms(power: int) -> tuple[KernelTerm, ...]:
    if power < 1:
        raise ValueError(f"resolvent power must be >= 1, got {power}")
    terms: dict[tuple[int, int, int, int], Fraction] = {(1, 0, 0, 0): Fraction(1)}
    quarter = Fraction(1, 4)
    for _ in range(power - 1):
        nxt: defaultdict[tuple[int, int, int, int], Fraction] = defaultdict(Fraction)
        for (m, n, a, b), coef in terms.items():
            if n:
                nxt[(m, n + 2, a, b)] += coef * Fraction(n, 2)
            nxt[(m + 1, n + 1, a - 1, b)] -= coef * quarter
            nxt[(m + 1, n + 1, a + 1, b)] -= coef * quarter
            nxt[(m + 1, n + 1, a, b - 1)] += coef * quarter
            nxt[(m + 1, n + 1, a, b + 1)] += coef * quarter
        terms = {key: value for key, value in nxt.items() if value != 0}
    scale = Fraction(1, math.factorial(power - 1))
    return tuple(
        KernelTerm(coef * scale, m, n, a, b) for (m, n, a, b), coef in sorted(terms.items())
    )


@dataclass(frozen=True)
class ModelKernel:
    """Diagonal of (T_ν + z²)^{-d}; ``d`` is the resolvent power."""

    nu: float
    d: int

    def __post_init__(self) -> None:
        if self.nu < 0.0:
            raise ValueError(f"nu must be nonnegative, got {self.nu!r}")
        if self.d < 1:
            raise ValueError(f"resolvent power must be >= 1, got {self.d!r}")

    @property
    def terms(self) -> tuple[KernelTerm, ...]:
        return kernel_terms(self.d)


def resolvent_diag(kernel: ModelKernel, r: ArrayLike, z: ArrayLike) -> FloatOrArray:
    r_arr = np.asarray(r, dtype=float)
    z_arr = np.asarray(z, dtype=float)
    if np.any(r_arr <= 0.0) or np.any(z_arr <= 0.0):
        raise ValueError("r and z must be positive")
    x = r_arr * z_arr
    total = np.zeros(np.broadcast(r_arr, z_arr).shape)
    for term in kernel.terms:
        # ive·kve = I·K since the exponential scalings cancel
        product = special.ive(kernel.nu + term.i_shift, x)
        product = product * special.kve(kernel.nu + term.k_shift, x)
        total = total + float(term.coefficient) * x**term.r_power * product
    # every term has r_power + z_power = 2d − 1
    total = total * z_arr ** (1 - 2 * kernel.d)
    return float(total) if total.ndim == 0 else total


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_LOG_T_SEGMENT = 0.5


def resolvent_diag_from_heat(kernel: ModelKernel, r: float, z: float = 1.0) -> float:
    """Same diagonal as :func:`resolvent_diag`, from the heat kernel.

    (T_ν + z²)^{-d} = (1/(d−1)!) ∫₀^∞ t^{d−1} e^{-tz²} e^{-tT_ν} dt; the integrand is
    positive, so this stays accurate at small r where the Bessel-product sum cancels.
    Composite Gauss–Legendre in u = log t.
    """
    if r <= 0.0 or z <= 0.0:
        raise ValueError("r and z must be positive")
    p = kernel.d
    u_lo = min(math.log(r * r), 0.0) - 60.0
    u_hi = math.log((p + 60.0) / (z * z))
    edges = np.arange(u_lo, u_hi + _LOG_T_SEGMENT, _LOG_T_SEGMENT)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * _LOG_T_SEGMENT
    u = (mids[:, None] + half * _GL_NODES[None, :]).ravel()
    weights = np.tile(half * _GL_WEIGHTS, mids.size)
    t = np.exp(u)
    # t · t^{d-1} e^{-tz²} · (r/2t) e^{-y} I_ν(y), y = r²/2t
    values = 0.5 * r * t ** (p - 1) * np.exp(-t * z * z) * special.ive(kernel.nu, r * r / (2.0 * t))
    return math.fsum(weights * values) / math.factorial(p - 1)


def kernel_large_r_coefficients(nu: float, power: int, terms: int = 8) -> tuple[float, ...]:
    """C_j with resolvent_diag(ν, power, r, 1) ~ Σ_j C_j r^{-2j} as r → ∞."""
    mu = 4.0 * nu * nu
    d = power - 1
    coefficients: list[float] = []
    g = 1.0
    for j in range(terms):
        if j:
            g *= -((2 * j - 1) / (2 * j)) * (mu - (2 * j - 1) ** 2) / 4.0
        weight = 1.0
        for i in range(d):
            weight *= (2 * j + 1 + 2 * i) / 2.0
        coefficients.append(0.5 * g * weight / math.factorial(d))
    return tuple(coefficients)


def heat_kernel_diag(nu: float, t: ArrayLike, r: ArrayLike) -> FloatOrArray:
    """Diagonal of e^{-tT_ν}: (r/2t) e^{-r²/2t} I_ν(r²/2t)."""
    t_arr = np.asarray(t, dtype=float)
    r_arr = np.asarray(r, dtype=float)
    if np.any(t_arr <= 0.0) or np.any(r_arr <= 0.0):
        raise ValueError("t and r must be positive")
    y = r_arr * r_arr / (2.0 * t_arr)
    values: NDArray[np.float64] = np.asarray(r_arr / (2.0 * t_arr) * special.ive(nu, y))
    return float(values) if values.ndim == 0 else values


def bessel_sum_rules(y: float) -> tuple[float, float]:
    """Normalised Σ_{k∈Z} I_k(y) / e^y and Σ_{k∈Z} k² I_k(y) / (y e^y); both equal 1."""
    if y <= 0.0:
        raise ValueError("y must be positive")
    k_max = int(y + 40.0 * math.sqrt(y) + 40.0)
    k = np.arange(1, k_max + 1, dtype=float)
    scaled = special.ive(k, y)
    zeroth = float(special.ive(0.0, y))
    plain = zeroth + 2.0 * math.fsum(scaled)
    second = 2.0 * math.fsum(k * k * scaled) / y
    return plain, second
