"""Zeta-regularised angular sums of Gamma ratios.

Both sums handled here have the shape

    w₀·ρ(0, s) + 2 Σ_{k≥1} (q·x_k² + w)·ρ(x_k, s),   ρ(x, s) = Γ(x+1+s/2) / Γ(x−s/2),

with x_k = k/scale. The head k ≤ K is summed exactly in mpmath; the tail
uses ρ(x, s) = x^{1+s} Σ_j e_j(s) x^{-j}, whose log-coefficients come from
Bernoulli polynomials, and Hurwitz zeta values Σ_{k>K} k^{-σ} = ζ(σ, K+1).
Evaluating at two values of K guards against an expansion order that is too
low for the requested s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import mpmath

from conic_heat.core.errors import RegularizationError

Reading = Literal["published", "continued"]
READINGS: tuple[str, ...] = ("published", "continued")

_DPS = 40
_AGREEMENT = 1e-9
PUBLISHED_S = -1.0


@dataclass(frozen=True)
class RegularizedValue:
    regular_part: float
    pole_residue: float = 0.0

    def to_dict(self) -> dict[str, float]:
        return {"regular_part": self.regular_part, "pole_residue": self.pole_residue}


def riemann_zeta(s: float) -> float:
    if s == 1.0:
        raise ValueError("the Riemann zeta function has a pole at s = 1")
    with mpmath.workdps(30):
        return float(mpmath.zeta(s))


def _expansion_coefficients(s: mpmath.mpf, order: int) -> list[mpmath.mpf]:
    """e_j(s) of ρ(x, s) / x^{1+s}; odd j vanish."""
    a = 1 + s / 2
    log_coeffs = {
        n: -2 * mpmath.bernpoly(n + 1, a) / (n * (n + 1)) for n in range(2, order + 1, 2)
    }
    e = [mpmath.mpf(1)]
    for j in range(1, order + 1):
        acc = mpmath.mpf(0)
        for m in range(2, j + 1, 2):
            acc += m * log_coeffs[m] * e[j - m]
        e.append(acc / j)
    return e


def _angular_sum(
    s: mpmath.mpf,
    *,
    scale: float,
    quadratic: float,
    constant: float,
    zero_weight: float,
    head: int,
    order: int,
) -> mpmath.mpf:
    half = s / 2
    total = zero_weight * mpmath.gammaprod([1 + half], [-half])
    for k in range(1, head + 1):
        x = mpmath.mpf(k) / scale
        total += 2 * (quadratic * x * x + constant) * mpmath.gammaprod([x + 1 + half], [x - half])
    start = head + 1
    for j, e_j in enumerate(_expansion_coefficients(s, order)):
        if e_j == 0:
            continue
        quad_power = 3 + s - j
        const_power = 1 + s - j
        tail = 2 * quadratic * mpmath.power(scale, -quad_power) * mpmath.zeta(-quad_power, start)
        tail += 2 * constant * mpmath.power(scale, -const_power) * mpmath.zeta(-const_power, start)
        total += e_j * tail
    return total


def _check_s(s: float) -> None:
    if not -2.0 < s < 0.0:
        raise ValueError(f"s={s!r} outside the supported neighbourhood (-2, 0) of -1")


def _check_c(c: float) -> None:
    if not 0.0 < c <= 1.0:
        raise ValueError(f"c must lie in (0, 1], got {c!r}")


def _check_d(d: int) -> None:
    if d < 2:
        raise ValueError(f"resolvent power d must be >= 2, got {d!r}")


def _stable(value_a: mpmath.mpf, value_b: mpmath.mpf, what: str) -> float:
    a = float(value_a)
    b = float(value_b)
    if abs(a - b) > _AGREEMENT * max(1.0, abs(b)):
        raise RegularizationError(
            f"{what}: head truncations disagree ({a!r} vs {b!r}); raise the expansion order"
        )
    return b


def gamma_ratio_sum(
    c: float,
    d: int,
    s: float,
    *,
    reading: Reading = "published",
    head: int = 64,
    order: int = 8,
) -> RegularizedValue:
    """2Σ_{k≥1}(−k²/c² − ¼)Γ(k+1+s/2)/Γ(k−s/2) − ¼Γ(1+s/2)/Γ(−s/2), regularised.

    ``reading="continued"`` is the analytic continuation of the sum in s and is
    available on the whole strip −2 < s < 0; at s = −1 it vanishes. The
    ``"published"`` reading exists only at s = −1: there every Gamma ratio is 1
    and the printed derivation pairs the constant weight with ζ(−1) where the
    continuation has ζ(0), which collapses the value to −5/24 for every c.
    The sum itself does not depend on the resolvent power ``d``; it is checked
    because the chain it feeds only makes sense for d >= 2.
    """
    _check_c(c)
    _check_d(d)
    _check_s(s)
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if reading == "published" and s != PUBLISHED_S:
        raise ValueError(f"the published reading is defined at s={PUBLISHED_S} only, got s={s!r}")
    with mpmath.workdps(_DPS):
        sm = mpmath.mpf(s)

        def evaluate(k_head: int) -> mpmath.mpf:
            value = _angular_sum(
                sm,
                scale=1.0,
                quadratic=-1 / mpmath.mpf(c) ** 2,
                constant=-0.25,
                zero_weight=-0.25,
                head=k_head,
                order=order,
            )
            if reading == "published":
                # 2·(−¼)·ζ(−1) in place of 2·(−¼)·ζ(0)
                value -= (mpmath.zeta(-1) - mpmath.zeta(0)) / 2
            return value

        regular = _stable(evaluate(head), evaluate(2 * head), "gamma_ratio_sum")
    return RegularizedValue(regular_part=regular)


def tip_correction_sum(
    c: float,
    s: float,
    *,
    derivative: bool = False,
    head: int = 64,
    order: int = 8,
) -> float:
    """Σ_{k∈Z}(¼ − ν_k²)Γ(ν_k+1+s/2)/Γ(ν_k−s/2), ν_k = |k|/c, continued in s.

    This is the angular trace of the first-order tip correction (the 1/r term
    −(κ/c)(ν² − ¼)/r of the mode potentials). It vanishes at s = −1; with
    ``derivative=True`` the s-derivative is returned instead.
    """
    _check_c(c)
    _check_s(s)
    with mpmath.workdps(_DPS):

        def evaluate(k_head: int) -> mpmath.mpf:
            def at(sv: mpmath.mpf) -> mpmath.mpf:
                return _angular_sum(
                    sv,
                    scale=c,
                    quadratic=-1.0,
                    constant=0.25,
                    zero_weight=0.25,
                    head=k_head,
                    order=order,
                )

            sm = mpmath.mpf(s)
            return mpmath.diff(at, sm) if derivative else at(sm)

        return _stable(evaluate(head), evaluate(2 * head), "tip_correction_sum")
