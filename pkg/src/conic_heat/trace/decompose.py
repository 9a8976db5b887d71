"""Split the fitted t⁰ coefficient into interior, boundary and conic parts."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from conic_heat.profiles import DIRICHLET_CAP, Profile, total_curvature
from conic_heat.trace.basis import CONSTANT_TERM
from conic_heat.trace.fit import ExpansionFit


@dataclass(frozen=True)
class T0Decomposition:
    fitted: float
    fitted_error: float
    interior: float
    boundary: float
    singular: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def interior_t0(profile: Profile) -> float:
    """(1/12π)∫K dA over the whole surface; the integral converges up to the tips."""
    return total_curvature(profile, 0.0, profile.R) / (12.0 * math.pi)


def boundary_t0(profile: Profile) -> float:
    """(1/12π)∫κ_g ds for a Dirichlet rim, κ_g = f′(R)/f(R); zero without boundary."""
    if profile.topology != DIRICHLET_CAP:
        return 0.0
    return profile.value(profile.R, 1) / 6.0


def decompose_t0(fit: ExpansionFit, profile: Profile) -> T0Decomposition:
    if not fit.has(CONSTANT_TERM):
        raise ValueError("the fit has no t^0 coefficient to decompose")
    fitted = fit.coefficient(CONSTANT_TERM)
    interior = interior_t0(profile)
    boundary = boundary_t0(profile)
    return T0Decomposition(
        fitted=fitted,
        fitted_error=fit.error(CONSTANT_TERM),
        interior=interior,
        boundary=boundary,
        singular=fitted - interior - boundary,
    )
