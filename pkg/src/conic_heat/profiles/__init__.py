from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

from conic_heat.core.errors import ProfileError
from conic_heat.profiles.profile import (
    CLOSED_SPINDLE,
    DIRICHLET_CAP,
    LinearShape,
    Profile,
    SineSeriesShape,
    TipInvariants,
    Topology,
    curvature_integral,
    gauss_bonnet_defect,
    gauss_curvature,
    tip_invariants,
    total_curvature,
    validate_profile,
    volume,
)

ProfileBuilder = Callable[[Mapping[str, Any]], Profile]


@dataclass(frozen=True)
class ProfileFamily:
    key: str
    label: str
    description: str
    topology: Topology
    builder: ProfileBuilder
    defaults: Mapping[str, Any] = field(default_factory=dict)


def _slope(params: Mapping[str, Any], name: str) -> float:
    value = float(params[name])
    if not 0.0 < value <= 1.0:
        raise ProfileError(f"{name} must lie in (0, 1], got {value!r}")
    return value


def _flat_cone(params: Mapping[str, Any]) -> Profile:
    c = _slope(params, "c")
    radius = float(params.get("radius", 1.0))
    return Profile(
        R=radius, shape=LinearShape(c), topology=DIRICHLET_CAP, label=f"flat_cone(c={c})"
    )


def _sphere(params: Mapping[str, Any]) -> Profile:
    return Profile(
        R=math.pi, shape=SineSeriesShape((1.0,)), topology=CLOSED_SPINDLE, label="sphere"
    )


def _spindle(params: Mapping[str, Any]) -> Profile:
    beta = _slope(params, "beta")
    return Profile(
        R=math.pi,
        shape=SineSeriesShape((beta,)),
        topology=CLOSED_SPINDLE,
        label=f"spindle(beta={beta})",
    )


def _curved_spindle(params: Mapping[str, Any]) -> Profile:
    c = _slope(params, "c")
    kappa = float(params["kappa"])
    return Profile(
        R=math.pi,
        shape=SineSeriesShape((c, 0.5 * kappa)),
        topology=CLOSED_SPINDLE,
        label=f"curved_spindle(c={c}, kappa={kappa})",
    )


def _sine_series(params: Mapping[str, Any]) -> Profile:
    coefficients = tuple(float(a) for a in params["coefficients"])
    if not coefficients:
        raise ProfileError("sine_series needs at least one coefficient")
    _slope({"a1": coefficients[0]}, "a1")
    return Profile(
        R=math.pi,
        shape=SineSeriesShape(coefficients),
        topology=CLOSED_SPINDLE,
        label=f"sine_series{coefficients}",
    )


FAMILIES: tuple[ProfileFamily, ...] = (
    ProfileFamily(
        key="flat_cone",
        label="Flat cone",
        description="f = c·r on [0, radius] with a Dirichlet condition at the rim.",
        topology=DIRICHLET_CAP,
        builder=_flat_cone,
        defaults={"c": 0.5, "radius": 1.0},
    ),
    ProfileFamily(
        key="sphere",
        label="Round sphere",
        description="f = sin r on [0, π]; both poles are smooth (c = 1).",
        topology=CLOSED_SPINDLE,
        builder=_sphere,
    ),
    ProfileFamily(
        key="spindle",
        label="Spindle",
        description="f = β·sin r on [0, π]; two flat-model tips of slope β.",
        topology=CLOSED_SPINDLE,
        builder=_spindle,
        defaults={"beta": 0.5},
    ),
    ProfileFamily(
        key="curved_spindle",
        label="Curved spindle",
        description="f = c·sin r + (κ/2)·sin² r on [0, π]; tips of slope c and curvature κ.",
        topology=CLOSED_SPINDLE,
        builder=_curved_spindle,
        defaults={"c": 0.6, "kappa": 0.4},
    ),
    ProfileFamily(
        key="sine_series",
        label="Sine series",
        description="f = Σ a_j sin^j r on [0, π]; closure f(π) = 0 is automatic.",
        topology=CLOSED_SPINDLE,
        builder=_sine_series,
        defaults={"coefficients": [0.6, 0.2]},
    ),
)

FAMILY_LOOKUP: dict[str, ProfileFamily] = {family.key: family for family in FAMILIES}

DEFAULT_FAMILY_KEY = "curved_spindle"


def get_families() -> tuple[ProfileFamily, ...]:
    return FAMILIES


def get_family(key: str) -> ProfileFamily:
    try:
        return FAMILY_LOOKUP[key]
    except KeyError:
        raise ProfileError(f"unknown profile family {key!r}") from None


def build_profile(key: str, params: Mapping[str, Any] | None = None) -> Profile:
    family = get_family(key)
    merged = {**family.defaults, **(params or {})}
    try:
        profile = family.builder(merged)
    except KeyError as exc:
        raise ProfileError(f"{key} is missing parameter {exc.args[0]!r}") from None
    return validate_profile(profile)


__all__ = [
    "CLOSED_SPINDLE",
    "DEFAULT_FAMILY_KEY",
    "DIRICHLET_CAP",
    "FAMILIES",
    "FAMILY_LOOKUP",
    "LinearShape",
    "Profile",
    "ProfileFamily",
    "SineSeriesShape",
    "TipInvariants",
    "Topology",
    "build_profile",
    "curvature_integral",
    "gauss_bonnet_defect",
    "gauss_curvature",
    "get_families",
    "get_family",
    "tip_invariants",
    "total_curvature",
    "validate_profile",
    "volume",
]
