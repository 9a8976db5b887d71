"""Resolvent-power coefficients versus heat-trace coefficients.

For the d-th resolvent power the expansions are related term by term:

    a_l     = (d−1)!/Γ(d−1+l) · a^ρ_l
    b_{l/2} = (d−1)!/Γ(d+l/2) · b^ρ_l
    c_l     = (d−1)!/Γ(d+l)   · c^ρ_l
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any


@dataclass(frozen=True)
class CoefficientSet:
    d: int
    a_rho: tuple[float, ...] = ()
    b_rho: tuple[float, ...] = ()
    c_rho: tuple[float, ...] = ()
    a: tuple[float, ...] = ()
    b: tuple[float, ...] = ()
    c: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"resolvent power d must be >= 2, got {self.d!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "a_rho": list(self.a_rho),
            "b_rho": list(self.b_rho),
            "c_rho": list(self.c_rho),
            "a": list(self.a),
            "b": list(self.b),
            "c": list(self.c),
        }


def a_factor(d: int, index: int) -> float:
    return math.factorial(d - 1) / math.gamma(d - 1 + index)


def b_factor(d: int, index: int) -> float:
    return math.factorial(d - 1) / math.gamma(d + 0.5 * index)


def c_factor(d: int, index: int) -> float:
    return math.factorial(d - 1) / math.gamma(d + index)


def heat_from_resolvent(coeffs: CoefficientSet) -> CoefficientSet:
    d = coeffs.d
    return replace(
        coeffs,
        a=tuple(a_factor(d, i) * value for i, value in enumerate(coeffs.a_rho)),
        b=tuple(b_factor(d, i) * value for i, value in enumerate(coeffs.b_rho)),
        c=tuple(c_factor(d, i) * value for i, value in enumerate(coeffs.c_rho)),
    )


def resolvent_from_heat(coeffs: CoefficientSet) -> CoefficientSet:
    d = coeffs.d
    return replace(
        coeffs,
        a_rho=tuple(value / a_factor(d, i) for i, value in enumerate(coeffs.a)),
        b_rho=tuple(value / b_factor(d, i) for i, value in enumerate(coeffs.b)),
        c_rho=tuple(value / c_factor(d, i) for i, value in enumerate(coeffs.c)),
    )


def area_rho(area: float, d: int) -> float:
    """a^ρ₀ for a surface of the given area, normalised so that a₀ = area."""
    return area / a_factor(d, 0)
