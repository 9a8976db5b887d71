"""Weighted least-squares fits of the small-t heat-trace expansion."""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from conic_heat.core.base import LOGGER
from conic_heat.core.errors import FitError
from conic_heat.trace.basis import (
    AREA_TERM,
    CONSTANT_TERM,
    BasisTerm,
    default_basis,
    design_matrix,
    next_half_power,
    parse_term,
)
from conic_heat.trace.heat import HeatTraceSamples

DEFAULT_MAX_CONDITION = 1e12
DEFAULT_MAX_RESIDUAL = 1e-5
WINDOW_SHIFT = 0.2


@dataclass(frozen=True, eq=False)
class ExpansionFit:
    basis: tuple[BasisTerm, ...]
    coefficients: NDArray[np.float64]
    statistical_errors: NDArray[np.float64]
    systematic_errors: NDArray[np.float64]
    condition_number: float
    window: tuple[float, float]
    residual_rms: float
    samples_used: int

    @property
    def standard_errors(self) -> NDArray[np.float64]:
        return np.hypot(self.statistical_errors, self.systematic_errors)

    def index(self, term: BasisTerm | str) -> int:
        key = parse_term(term) if isinstance(term, str) else term
        try:
            return self.basis.index(key)
        except ValueError:
            raise KeyError(f"{key.label!r} is not in the fitted basis") from None

    def has(self, term: BasisTerm | str) -> bool:
        key = parse_term(term) if isinstance(term, str) else term
        return key in self.basis

    def coefficient(self, term: BasisTerm | str) -> float:
        return float(self.coefficients[self.index(term)])

    def error(self, term: BasisTerm | str) -> float:
        return float(self.standard_errors[self.index(term)])

    def model(self, t: ArrayLike) -> NDArray[np.float64]:
        return np.asarray(design_matrix(self.basis, t) @ self.coefficients)

    def to_dict(self) -> dict[str, Any]:
        return {
            "window": list(self.window),
            "condition_number": self.condition_number,
            "residual_rms": self.residual_rms,
            "samples_used": self.samples_used,
            "terms": [
                {
                    "label": term.label,
                    "coefficient": float(self.coefficients[i]),
                    "standard_error": float(self.standard_errors[i]),
                    "statistical_error": float(self.statistical_errors[i]),
                    "systematic_error": float(self.systematic_errors[i]),
                }
                for i, term in enumerate(self.basis)
            ],
        }


@dataclass(frozen=True)
class _Solution:
    coefficients: NDArray[np.float64]
    errors: NDArray[np.float64]
    condition: float
    residual_rms: float


def _solve(
    t: NDArray[np.float64],
    z: NDArray[np.float64],
    budget: NDArray[np.float64],
    basis: Sequence[BasisTerm],
) -> _Solution:
    design = design_matrix(basis, t)
    weight = 1.0 / budget
    A = design * weight[:, None]
    y = z * weight
    norms = np.linalg.norm(A, axis=0)
    U, sigma, Vt = np.linalg.svd(A / norms, full_matrices=False)
    if not sigma[-1] > 0.0:
        raise FitError(f"design matrix of {[term.label for term in basis]} is rank deficient")
    condition = float(sigma[0] / sigma[-1])
    scaled = Vt.T @ ((U.T @ y) / sigma)
    coefficients = scaled / norms

    residual = y - (A / norms) @ scaled
    dof = t.size - len(basis)
    variance = float(residual @ residual) / dof if dof > 0 else 0.0
    errors = np.sqrt(variance * np.sum((Vt.T / sigma) ** 2, axis=1)) / norms

    relative = (z - design @ coefficients) / z
    return _Solution(coefficients, errors, condition, float(np.sqrt(np.mean(relative**2))))


def _peeled(
    t: NDArray[np.float64],
    z: NDArray[np.float64],
    budget: NDArray[np.float64],
    basis: Sequence[BasisTerm],
) -> _Solution:
    """Fit t^{-1} on the small-t third of the window first, then the rest on all of it."""
    if AREA_TERM not in basis or len(basis) == 1:
        return _solve(t, z, budget, basis)
    p = len(basis)
    head = max(2 * p, t.size // 3)
    if head >= t.size:
        return _solve(t, z, budget, basis)
    area_at = list(basis).index(AREA_TERM)
    first = _solve(t[:head], z[:head], budget[:head], basis)
    area = first.coefficients[area_at]
    rest = [term for term in basis if term != AREA_TERM]
    second = _solve(t, z - area / t, budget, rest)

    coefficients = np.insert(second.coefficients, area_at, area)
    errors = np.insert(second.errors, area_at, first.errors[area_at])
    return _Solution(
        coefficients,
        errors,
        max(first.condition, second.condition),
        second.residual_rms,
    )


def _window_mask(samples: HeatTraceSamples, window: tuple[float, float]) -> NDArray[np.bool_]:
    lo, hi = window
    scale = 1.0 + 1e-12
    return np.asarray((samples.t >= lo / scale) & (samples.t <= hi * scale))


def _fit_window(
    samples: HeatTraceSamples,
    basis: Sequence[BasisTerm],
    window: tuple[float, float],
    max_condition: float,
    max_residual: float,
) -> tuple[_Solution, int]:
    lo, hi = window
    if not 0.0 < lo < hi:
        raise FitError(f"invalid fit window {window}")
    inside = _window_mask(samples, window)
    if np.any(inside & ~samples.usable):
        raise FitError(
            f"window {window} reaches below the smallest usable t ({samples.min_usable_t})"
        )
    used = int(np.count_nonzero(inside))
    if used < 2 * len(basis):
        raise FitError(f"window {window} holds {used} samples, need {2 * len(basis)}")
    solution = _peeled(samples.t[inside], samples.z[inside], samples.budget[inside], basis)
    if solution.condition > max_condition:
        raise FitError(
            f"design condition number {solution.condition:.3g} exceeds {max_condition:.3g}"
        )
    if solution.residual_rms > max_residual:
        raise FitError(
            f"relative residual {solution.residual_rms:.3g} exceeds {max_residual:.3g}; "
            "the basis is insufficient for this window"
        )
    return solution, used


def fit_expansion(
    samples: HeatTraceSamples,
    basis: Sequence[BasisTerm] | None = None,
    window: tuple[float, float] | None = None,
    *,
    max_condition: float = DEFAULT_MAX_CONDITION,
    max_residual: float = DEFAULT_MAX_RESIDUAL,
    systematic: bool = True,
) -> ExpansionFit:
    terms = tuple(basis) if basis else _default_for(samples)
    if window is None:
        window = select_window(
            samples, terms, max_condition=max_condition, max_residual=max_residual
        )
    solution, used = _fit_window(samples, terms, window, max_condition, max_residual)

    shifts = np.zeros(len(terms))
    if systematic:
        for variant in _variants(samples, terms, window, max_condition, max_residual):
            shifts = np.maximum(shifts, np.abs(variant[: len(terms)] - solution.coefficients))

    return ExpansionFit(
        basis=terms,
        coefficients=solution.coefficients,
        statistical_errors=solution.errors,
        systematic_errors=shifts,
        condition_number=solution.condition,
        window=(float(window[0]), float(window[1])),
        residual_rms=solution.residual_rms,
        samples_used=used,
    )


def _default_for(samples: HeatTraceSamples) -> tuple[BasisTerm, ...]:
    if samples.topology is None:
        raise FitError("samples carry no topology; pass an explicit basis")
    return default_basis(samples.topology)


def _variants(
    samples: HeatTraceSamples,
    basis: tuple[BasisTerm, ...],
    window: tuple[float, float],
    max_condition: float,
    max_residual: float,
) -> list[NDArray[np.float64]]:
    lo, hi = window
    extended = basis + (next_half_power(basis),)
    trials: list[tuple[tuple[BasisTerm, ...], tuple[float, float]]] = [
        (basis, (lo * (1.0 - WINDOW_SHIFT), hi * (1.0 - WINDOW_SHIFT))),
        (basis, (lo * (1.0 + WINDOW_SHIFT), hi * (1.0 + WINDOW_SHIFT))),
        (extended, window),
    ]
    results: list[NDArray[np.float64]] = []
    t_max = float(samples.t[-1]) * (1.0 + 1e-12)
    for terms, trial in trials:
        if trial[1] > t_max:
            continue
        try:
            solution, _ = _fit_window(samples, terms, trial, max_condition, max_residual)
        except FitError as exc:
            LOGGER.debug("fit variant %s on %s skipped: %s", [t.label for t in terms], trial, exc)
            continue
        results.append(solution.coefficients)
    return results


def select_window(
    samples: HeatTraceSamples,
    basis: Sequence[BasisTerm] | None = None,
    decades: float = 1.0,
    *,
    max_condition: float = DEFAULT_MAX_CONDITION,
    max_residual: float = DEFAULT_MAX_RESIDUAL,
) -> tuple[float, float]:
    """One-window-per-start scan keeping the window with the smallest t⁰ standard error."""
    terms = tuple(basis) if basis else _default_for(samples)
    usable_t = samples.t[samples.usable]
    if usable_t.size == 0:
        raise FitError("no usable heat-trace samples")
    ratio = 10.0**decades
    starts = usable_t[usable_t * ratio <= usable_t[-1] * (1.0 + 1e-12)]
    step = max(1, starts.size // 40)
    target = CONSTANT_TERM if CONSTANT_TERM in terms else terms[0]

    best: tuple[float, tuple[float, float]] | None = None
    for lo in starts[::step]:
        window = (float(lo), float(lo * ratio))
        try:
            fit = fit_expansion(
                samples, terms, window, max_condition=max_condition, max_residual=max_residual
            )
        except FitError:
            continue
        score = fit.error(target)
        if best is None or score < best[0]:
            best = (score, window)
    if best is None:
        raise FitError(f"no {decades:g}-decade window admits a fit of {[t.label for t in terms]}")
    LOGGER.info("selected fit window [%.4g, %.4g] (t^0 error %.3g)", *best[1], best[0])
    return best[1]


def plot_csv(samples: HeatTraceSamples, fit: ExpansionFit) -> str:
    """(t, Z, model, residual) rows for every sample."""
    model = fit.model(samples.t)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("t", "Z", "model", "residual"))
    for t, z, m in zip(samples.t, samples.z, model, strict=True):
        writer.writerow((f"{t:.17g}", f"{z:.17g}", f"{m:.17g}", f"{z - m:.17g}"))
    return buffer.getvalue()
