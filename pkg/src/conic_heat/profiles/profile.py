"""Warped-product profiles g = dr² + f(r)² dθ² with conic tips.

A :class:`Profile` bundles the radial extent, an analytic shape function and a
topology tag. Shapes supply exact derivatives up to third order; numerical
differentiation only appears as a cross-check in :func:`tip_invariants`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Literal, Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate

from conic_heat.core.errors import ProfileError, QuadratureError

Topology = Literal["closed_spindle", "dirichlet_cap"]

CLOSED_SPINDLE: Topology = "closed_spindle"
DIRICHLET_CAP: Topology = "dirichlet_cap"

_FD_STEP = 1e-4
_FD_TOLERANCE = 1e-6
_VALIDATION_GRID = 2001


class Shape(Protocol):
    def derivative(self, r: ArrayLike, order: int = 0) -> NDArray[np.float64]: ...

    def to_dict(self) -> dict[str, Any]: ...


@dataclass(frozen=True)
class LinearShape:
    """f(r) = slope · r, the flat cone."""

    slope: float

    def derivative(self, r: ArrayLike, order: int = 0) -> NDArray[np.float64]:
        x = np.asarray(r, dtype=float)
        if order == 0:
            return self.slope * x
        if order == 1:
            return np.full_like(x, self.slope)
        return np.zeros_like(x)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "linear", "slope": self.slope}


@dataclass(frozen=True)
class SineSeriesShape:
    """f(r) = Σ_j a_j sin^j r, j = 1..J; vanishes at 0 and π for any coefficients."""

    coefficients: tuple[float, ...]

    def derivative(self, r: ArrayLike, order: int = 0) -> NDArray[np.float64]:
        if order not in (0, 1, 2, 3):
            raise ValueError(f"derivative order must be 0..3, got {order}")
        x = np.asarray(r, dtype=float)
        s = np.sin(x)
        co = np.cos(x)
        total = np.zeros_like(x)
        for j, a in enumerate(self.coefficients, start=1):
            if a == 0.0:
                continue
            total = total + a * _sine_power_derivative(s, co, j, order)
        return total

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "sine_series", "coefficients": list(self.coefficients)}


def _power(s: NDArray[np.float64], e: int) -> NDArray[np.float64]:
    if e < 0:
        return np.zeros_like(s)
    return s**e


def _sine_power_derivative(
    s: NDArray[np.float64], co: NDArray[np.float64], j: int, order: int
) -> NDArray[np.float64]:
    # d/dr sin^j = j sin^{j-1} cos, and cos² = 1 - sin² keeps everything polynomial in sin.
    if order == 0:
        return _power(s, j)
    if order == 1:
        return j * _power(s, j - 1) * co
    if order == 2:
        return j * (j - 1) * _power(s, j - 2) - j * j * _power(s, j)
    return co * (j * (j - 1) * (j - 2) * _power(s, j - 3) - j**3 * _power(s, j - 1))


@dataclass(frozen=True)
class TipInvariants:
    end: float
    c: float
    kappa: float
    angle_sin_convention: float
    angle_tan_convention: float

    def to_dict(self) -> dict[str, float]:
        return {
            "end": self.end,
            "c": self.c,
            "kappa": self.kappa,
            "angle_sin_convention": self.angle_sin_convention,
            "angle_tan_convention": self.angle_tan_convention,
        }


@dataclass(frozen=True)
class Profile:
    R: float
    shape: Shape
    topology: Topology
    label: str = ""

    def f(self, r: ArrayLike, order: int = 0) -> NDArray[np.float64]:
        return self.shape.derivative(r, order)

    def value(self, r: float, order: int = 0) -> float:
        return float(self.shape.derivative(r, order))

    def outward(self, end: float, order: int) -> float:
        """order-th derivative of f in the coordinate pointing away from the tip at ``end``."""
        sign = 1.0 if end == 0.0 else (-1.0) ** order
        return sign * self.value(end, order)

    @property
    def tip_ends(self) -> tuple[float, ...]:
        if self.topology == CLOSED_SPINDLE:
            return (0.0, self.R)
        return (0.0,)

    @property
    def tips(self) -> tuple[TipInvariants, ...]:
        return tuple(tip_invariants(self, end) for end in self.tip_ends)

    def to_dict(self) -> dict[str, Any]:
        return {
            "R": self.R,
            "topology": self.topology,
            "label": self.label,
            "shape": self.shape.to_dict(),
        }


def tip_invariants(profile: Profile, end: float) -> TipInvariants:
    if end not in profile.tip_ends:
        raise ProfileError(f"r={end} is not a conic tip of {profile.label or 'the profile'}")
    c = profile.outward(end, 1)
    kappa = profile.outward(end, 2)

    # centred differences straddling the tip; shapes are analytic past the endpoints
    sign = 1.0 if end == 0.0 else -1.0
    h = _FD_STEP
    f_plus = profile.value(end + sign * h)
    f_mid = profile.value(end)
    f_minus = profile.value(end - sign * h)
    c_fd = (f_plus - f_minus) / (2.0 * h)
    kappa_fd = (f_plus - 2.0 * f_mid + f_minus) / (h * h)
    for name, exact, approx in (("slope", c, c_fd), ("curvature", kappa, kappa_fd)):
        if abs(exact - approx) > _FD_TOLERANCE * max(1.0, abs(exact)):
            raise ProfileError(
                f"{name} at r={end}: analytic {exact!r} disagrees with finite difference {approx!r}"
            )
    if not 0.0 < c <= 1.0 + 1e-12:
        raise ProfileError(f"tip slope at r={end} must lie in (0, 1], got {c!r}")
    c = min(c, 1.0)
    return TipInvariants(
        end=end,
        c=c,
        kappa=kappa,
        angle_sin_convention=math.asin(c),
        angle_tan_convention=math.atan(c),
    )


def _quad(func: Any, a: float, b: float) -> float:
    value, abserr = integrate.quad(func, a, b, epsabs=0.0, epsrel=1e-12, limit=200)
    if abserr > 1e-10 * max(abs(value), 1e-300) and abserr > 1e-14:
        raise QuadratureError(f"quadrature on [{a}, {b}] did not converge (error {abserr:.3g})")
    return float(value)


def volume(profile: Profile) -> float:
    return 2.0 * math.pi * _quad(lambda r: profile.value(r), 0.0, profile.R)


def gauss_curvature(profile: Profile, r: float) -> float:
    if not 0.0 < r < profile.R:
        raise ValueError(f"r={r} must lie strictly inside (0, {profile.R})")
    return -profile.value(r, 2) / profile.value(r)


def total_curvature(profile: Profile, r0: float, r1: float) -> float:
    """∫K dA over r0 < r < r1, from the endpoint slopes."""
    if not 0.0 <= r0 < r1 <= profile.R:
        raise ValueError(f"need 0 <= r0 < r1 <= R, got ({r0}, {r1})")
    return 2.0 * math.pi * (profile.value(r0, 1) - profile.value(r1, 1))


def curvature_integral(profile: Profile, r0: float, r1: float) -> float:
    # K·f = -f'', which stays bounded at the tips
    return 2.0 * math.pi * _quad(lambda r: -profile.value(r, 2), r0, r1)


def gauss_bonnet_defect(profile: Profile) -> float:
    """Residual of Gauss–Bonnet with conic defects (and boundary term for caps)."""
    interior = curvature_integral(profile, 0.0, profile.R)
    defects = sum(2.0 * math.pi * (1.0 - profile.outward(end, 1)) for end in profile.tip_ends)
    if profile.topology == CLOSED_SPINDLE:
        return interior + defects - 4.0 * math.pi
    boundary = 2.0 * math.pi * profile.value(profile.R, 1)
    return interior + defects + boundary - 2.0 * math.pi


def validate_profile(profile: Profile) -> Profile:
    if not profile.R > 0.0:
        raise ProfileError(f"radial extent must be positive, got {profile.R!r}")
    scale = max(1.0, float(np.max(np.abs(profile.f(np.linspace(0.0, profile.R, 65))))))
    if abs(profile.value(0.0)) > 1e-12 * scale:
        raise ProfileError("f(0) must vanish")
    if profile.topology == CLOSED_SPINDLE and abs(profile.value(profile.R)) > 1e-12 * scale:
        raise ProfileError("closed spindle requires f(R) = 0")

    grid = np.linspace(0.0, profile.R, _VALIDATION_GRID)[1:-1]
    if np.any(profile.f(grid) <= 0.0):
        raise ProfileError("f must be positive on the open interior")

    slope0 = profile.value(0.0, 1)
    if not 0.0 < slope0 <= 1.0 + 1e-12:
        raise ProfileError(f"f'(0) must lie in (0, 1], got {slope0!r}")
    if profile.topology == CLOSED_SPINDLE:
        slope_r = profile.value(profile.R, 1)
        if not -1.0 - 1e-12 <= slope_r < 0.0:
            raise ProfileError(f"f'(R) must lie in [-1, 0), got {slope_r!r}")

    defect = gauss_bonnet_defect(profile)
    if abs(defect) > 1e-8:
        raise ProfileError(f"Gauss–Bonnet residual {defect:.3e} exceeds tolerance")
    return profile
