"""Angular Fourier modes of the Laplacian on a warped product.

Mode k of Δ acts on w(r) as −(1/f)(f w′)′ + k²/f² w. The Liouville substitution
u = f^{1/2} w turns it into −u″ + V_k u with

    V_k = k²/f² + f″/(2f) − (f′)²/(4f²),

which behaves like (ν² − ¼)/r² at a tip of slope c, ν = k/c.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from conic_heat.profiles import CLOSED_SPINDLE, Profile

EndCondition = Literal["friedrichs", "dirichlet"]


@dataclass(frozen=True)
class EndData:
    """Local data of one end in its outward coordinate."""

    condition: EndCondition
    nu: float
    c: float
    kappa: float

    @property
    def frobenius_slope(self) -> float:
        """a₁ in the Friedrichs solution u ~ r^{ν+½}(1 + a₁ r)."""
        v_minus_1 = -(self.kappa / self.c) * (self.nu * self.nu - 0.25)
        return v_minus_1 / (2.0 * self.nu + 1.0)


@dataclass(frozen=True)
class ModeOperator:
    profile: Profile
    k: int
    nu0: float
    nuR: float | None
    left: EndData
    right: EndData

    @property
    def R(self) -> float:
        return self.profile.R

    @property
    def bc(self) -> tuple[EndCondition, EndCondition]:
        return (self.left.condition, self.right.condition)

    @property
    def multiplicity(self) -> int:
        return 1 if self.k == 0 else 2

    def potential(self, r: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(r, dtype=float)
        f = self.profile.f(x)
        f1 = self.profile.f(x, 1)
        f2 = self.profile.f(x, 2)
        return self.k * self.k / (f * f) + f2 / (2.0 * f) - (f1 * f1) / (4.0 * f * f)

    def potential_at(self, r: float) -> float:
        return float(self.potential(r))


def build_mode_operator(profile: Profile, k: int) -> ModeOperator:
    if k < 0:
        raise ValueError(f"mode number must be nonnegative, got {k}")
    c0 = profile.outward(0.0, 1)
    nu0 = k / c0
    left = EndData("friedrichs", nu0, c0, profile.outward(0.0, 2))
    if profile.topology == CLOSED_SPINDLE:
        c_r = profile.outward(profile.R, 1)
        nu_r: float | None = k / c_r
        right = EndData("friedrichs", k / c_r, c_r, profile.outward(profile.R, 2))
    else:
        nu_r = None
        right = EndData("dirichlet", 0.0, 0.0, 0.0)
    return ModeOperator(profile=profile, k=k, nu0=nu0, nuR=nu_r, left=left, right=right)
