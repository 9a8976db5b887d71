"""Hadamard finite parts of ∫₀^∞ r^s g(r) dr.

The integrand is described by its exact small-r expansion
g(r) ≈ Σ aᵢ r^{pᵢ} + O(r^{order}) and, optionally, a large-r expansion
g(r) ≈ Σ bⱼ r^{qⱼ} valid beyond ``tail_start``. Head terms that make the
integral diverge at 0 are subtracted on [0, split] and integrated
analytically; a term landing exactly on a pole contributes its residue and
a log(split) regular part.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from conic_heat.core.errors import QuadratureError, RegularizationError
from conic_heat.model import (
    ModelKernel,
    kernel_large_r_coefficients,
    resolvent_diag,
    resolvent_diag_from_heat,
)
from conic_heat.model.mellin import TAIL_TERMS
from conic_heat.regularization.sums import RegularizedValue

_POLE_EPS = 1e-12


@dataclass(frozen=True)
class IntegrandDescriptor:
    func: Callable[[float], float]
    head: tuple[tuple[float, float], ...]
    order: float
    tail: tuple[tuple[float, float], ...] = field(default_factory=tuple)
    tail_start: float = math.inf
    split: float = 1.0


def _quad(func: Callable[[float], float], a: float, b: float, **kwargs: object) -> float:
    value, abserr = integrate.quad(func, a, b, epsabs=0.0, epsrel=1e-11, limit=400, **kwargs)
    if abserr > 1e-9 * max(abs(value), 1e-300) and abserr > 1e-15:
        raise QuadratureError(f"finite-part quadrature on [{a}, {b}] error {abserr:.3g}")
    return float(value)


def finite_part_integral(integrand: IntegrandDescriptor, s: float) -> RegularizedValue:
    if s + integrand.order + 1.0 <= 0.0:
        raise RegularizationError(
            f"small-r expansion known to order {integrand.order} is insufficient at s={s}"
        )
    split = integrand.split
    divergent = [(p, a) for p, a in integrand.head if s + p + 1.0 <= _POLE_EPS]
    kept = [p for p, _ in integrand.head if s + p + 1.0 > _POLE_EPS]
    p_star = min([integrand.order, *kept])

    def remainder(r: float) -> float:
        value = integrand.func(r) - sum(a * r**p for p, a in divergent)
        return value / r**p_star

    # algebraic weight r^{s+p*} absorbs the integrable singularity of the remainder
    near = _quad(remainder, 0.0, split, weight="alg", wvar=(s + p_star, 0.0))

    regular = near
    residue = 0.0
    for p, a in divergent:
        exponent = s + p + 1.0
        if abs(exponent) <= _POLE_EPS:
            residue += a
            regular += a * math.log(split)
        else:
            regular += a * split**exponent / exponent

    regular += _far(integrand, s)
    return RegularizedValue(regular_part=regular, pole_residue=residue)


def _far(integrand: IntegrandDescriptor, s: float) -> float:
    split = integrand.split

    def weighted(r: float) -> float:
        return float(r**s * integrand.func(r))

    if not integrand.tail:
        return _quad(weighted, split, np.inf)

    start = max(split, integrand.tail_start)
    total = _quad(weighted, split, start) if start > split else 0.0
    for q, b in integrand.tail:
        exponent = s + q + 1.0
        if exponent >= 0.0:
            raise RegularizationError(f"integral diverges at infinity for s={s} (power {q})")
        total -= b * start**exponent / exponent
    return total


def kernel_descriptor(nu: float, d: int) -> IntegrandDescriptor:
    """(T_ν+1)^{-d-1}(r,r) with its leading small-r order and large-r series."""
    kernel = ModelKernel(nu, d + 1)
    switch = 1.0 + 0.5 * nu

    def func(r: float) -> float:
        if r < switch:
            return resolvent_diag_from_heat(kernel, r)
        return float(resolvent_diag(kernel, r, 1.0))

    coefficients = kernel_large_r_coefficients(nu, d + 1, TAIL_TERMS)
    return IntegrandDescriptor(
        func=func,
        head=(),
        order=1.0 + 2.0 * min(nu, float(d)),
        tail=tuple((-2.0 * j, coef) for j, coef in enumerate(coefficients)),
        tail_start=max(30.0, 4.0 * nu + 10.0),
    )
