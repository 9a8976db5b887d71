"""Predicted small-t heat coefficients of a profile with conic tips.

Everything is expressed through the primitive tip data c = f′(0) and
κ = f″(0). The opening angle α only enters through the display convention:
``"sin"`` reads c = sin α, ``"tan"`` reads c = tan α.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Literal

from conic_heat.profiles import DIRICHLET_CAP, Profile, TipInvariants, volume
from conic_heat.regularization import Reading, b_factor, b_rho_1
from conic_heat.trace.decompose import boundary_t0, interior_t0

Convention = Literal["sin", "tan"]
CONVENTIONS: tuple[Convention, ...] = ("sin", "tan")
_READINGS: tuple[Reading, ...] = ("published", "continued")


def _check_c(c: float) -> None:
    if not 0.0 < c <= 1.0:
        raise ValueError(f"c must lie in (0, 1], got {c!r}")


def b0_tip(c: float, convention: Convention = "sin") -> float:
    """(1/12)(1/sin α − sin α) with sin α = c, or sin α = c/√(1+c²) under ``"tan"``.

    Under ``"sin"`` any c > 0 is accepted: c > 1 is an excess-angle tip and
    b0(1/c) = −b0(c).
    """
    if convention == "sin" and c > 1.0:
        return (1.0 / c - c) / 12.0
    _check_c(c)
    if convention == "sin":
        s = c
    elif convention == "tan":
        s = c / math.sqrt(1.0 + c * c)
    else:
        raise ValueError(f"unknown angle convention {convention!r}")
    return (1.0 / s - s) / 12.0


def bhalf_tip(c: float, kappa: float, reading: Reading = "published", *, d: int = 2) -> float:
    """Heat coefficient b_{1/2} of one tip: the b^ρ₁ chain times (d−1)!/Γ(d+½)."""
    _check_c(c)
    if kappa == 0.0:
        return 0.0
    return b_factor(d, 1) * b_rho_1(c, kappa, d, reading=reading)


def boundary_half(profile: Profile) -> float:
    """t^{-1/2} coefficient −L/(8√π) of a Dirichlet rim of length L = 2πf(R)."""
    if profile.topology != DIRICHLET_CAP:
        return 0.0
    length = 2.0 * math.pi * profile.value(profile.R)
    return -length / (8.0 * math.sqrt(math.pi))


def boundary_bhalf(profile: Profile) -> float:
    """t^{1/2} rim term ∫κ_g² ds/(256√π), κ_g = f′(R)/f(R), for a rim with a flat collar."""
    if profile.topology != DIRICHLET_CAP:
        return 0.0
    slope = profile.value(profile.R, 1)
    integral = 2.0 * math.pi * slope * slope / profile.value(profile.R)
    return integral / (256.0 * math.sqrt(math.pi))


@dataclass(frozen=True)
class PredictedCoefficients:
    a0: float
    interior_t0: float
    boundary_t0: float
    boundary_half: float
    boundary_bhalf: float
    tips: tuple[TipInvariants, ...]
    b0_per_tip: tuple[float, ...]
    bhalf_per_tip: tuple[float, ...]
    convention: Convention = "sin"
    reading: Reading = "published"
    alternatives: dict[str, tuple[float, ...]] = field(default_factory=dict)

    @property
    def b0_total(self) -> float:
        return math.fsum(self.b0_per_tip)

    @property
    def bhalf_total(self) -> float:
        return math.fsum(self.bhalf_per_tip)

    @property
    def half_total(self) -> float:
        """Full t^{1/2} coefficient: tips plus rim."""
        return self.bhalf_total + self.boundary_bhalf

    @property
    def t0_total(self) -> float:
        return self.interior_t0 + self.boundary_t0 + self.b0_total

    @property
    def area_coefficient(self) -> float:
        """The t^{-1} coefficient a₀/4π."""
        return self.a0 / (4.0 * math.pi)

    def to_dict(self) -> dict[str, Any]:
        return {
            "a0": self.a0,
            "area_coefficient": self.area_coefficient,
            "interior_t0": self.interior_t0,
            "boundary_t0": self.boundary_t0,
            "boundary_half": self.boundary_half,
            "boundary_bhalf": self.boundary_bhalf,
            "convention": self.convention,
            "reading": self.reading,
            "tips": [tip.to_dict() for tip in self.tips],
            "b0_per_tip": list(self.b0_per_tip),
            "bhalf_per_tip": list(self.bhalf_per_tip),
            "totals": {
                "b0": self.b0_total,
                "bhalf": self.bhalf_total,
                "t_half": self.half_total,
                "t0": self.t0_total,
            },
            "alternatives": {key: list(values) for key, values in self.alternatives.items()},
        }


def predict(
    profile: Profile,
    *,
    convention: Convention = "sin",
    reading: Reading = "published",
    d: int = 2,
) -> PredictedCoefficients:
    tips = profile.tips
    alternatives: dict[str, tuple[float, ...]] = {}
    for other in CONVENTIONS:
        alternatives[f"b0_{other}"] = tuple(b0_tip(tip.c, other) for tip in tips)
    for reading_name in _READINGS:
        alternatives[f"bhalf_{reading_name}"] = tuple(
            bhalf_tip(tip.c, tip.kappa, reading_name, d=d) for tip in tips
        )
    return PredictedCoefficients(
        a0=volume(profile),
        interior_t0=interior_t0(profile),
        boundary_t0=boundary_t0(profile),
        boundary_half=boundary_half(profile),
        boundary_bhalf=boundary_bhalf(profile),
        tips=tips,
        b0_per_tip=alternatives[f"b0_{convention}"],
        bhalf_per_tip=alternatives[f"bhalf_{reading}"],
        convention=convention,
        reading=reading,
        alternatives=alternatives,
    )
