from __future__ import annotations

import math

from conic_heat.checks.registry import CheckInfo, CheckResult, outcome, register
from conic_heat.profiles import FAMILIES, build_profile, gauss_bonnet_defect


@register(
    CheckInfo(
        name="gauss-bonnet",
        group="geometry",
        description="Gauss-Bonnet with conic defects on every built-in family (absolute, radians)",
    )
)
def gauss_bonnet() -> CheckResult:
    worst = 0.0
    where = ""
    for family in FAMILIES:
        defect = abs(gauss_bonnet_defect(build_profile(family.key)))
        if defect >= worst:
            worst, where = defect, family.key
    return outcome("gauss-bonnet", worst, 1e-8 * 4.0 * math.pi, f"worst on {where}")
