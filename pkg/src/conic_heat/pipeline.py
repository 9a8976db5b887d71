"""Config-driven pipeline stages shared by the command-line driver and scripts.

Spectra always pass through their CSV text before anything downstream sees
them, whether they came from the cache or from the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, cast

from conic_heat.coefficients import Convention, PredictedCoefficients, predict
from conic_heat.core.base import LOGGER
from conic_heat.core.cache import SpectrumCache, cache_key
from conic_heat.core.config import RunConfig
from conic_heat.profiles import Profile, build_profile
from conic_heat.regularization import Reading
from conic_heat.spectral import Spectrum, full_spectrum, spectrum_from_csv, spectrum_to_csv
from conic_heat.trace import (
    AREA_TERM,
    BOUNDARY_TERM,
    CONSTANT_TERM,
    HALF_TERM,
    BasisTerm,
    ExpansionFit,
    HeatTraceSamples,
    T0Decomposition,
    decompose_t0,
    fit_expansion,
    geometric_grid,
    heat_trace,
    parse_basis,
)

# a candidate is excluded once it sits this many standard errors away
EXCLUSION_SE = 3.0


def profile_for(config: RunConfig) -> Profile:
    return build_profile(config.profile, config.params)


def prediction_for(config: RunConfig) -> PredictedCoefficients:
    return predict(
        profile_for(config),
        convention=cast(Convention, config.convention),
        reading=cast(Reading, config.reading),
        d=config.d,
    )


def _spectrum_payload(spectrum: Spectrum) -> dict[str, Any]:
    return {"csv": spectrum_to_csv(spectrum), **spectrum.metadata()}


def _from_payload(payload: dict[str, Any]) -> Spectrum:
    return spectrum_from_csv(
        payload["csv"],
        lambda_max=float(payload["lambda_max"]),
        k_max=int(payload["k_max"]),
        topology=payload["topology"],
        area=float(payload["area"]),
    )


def load_spectrum(config: RunConfig, cache: SpectrumCache | None = None) -> Spectrum:
    key = cache_key(config.profile, config.params, config.lambda_max, config.tol, config.max_points)
    payload = cache.load(key) if cache is not None else None
    if payload is not None:
        try:
            return _from_payload(payload)
        except (KeyError, TypeError, ValueError) as exc:
            LOGGER.warning("cache entry %s is malformed (%s); recomputing", key[:12], exc)

    profile = profile_for(config)
    LOGGER.info("solving %s up to lambda_max=%g", profile.label, config.lambda_max)
    solved = full_spectrum(
        profile,
        config.lambda_max,
        config.tol,
        threads=config.threads,
        max_points=config.max_points,
        max_count=config.max_count,
    )
    payload = _spectrum_payload(solved)
    if cache is not None:
        cache.store(key, payload)
    spectrum = _from_payload(payload)
    if not spectrum.entries:
        LOGGER.warning("no eigenvalues below lambda_max=%g", config.lambda_max)
    return spectrum


def compute_heat_trace(config: RunConfig, spectrum: Spectrum) -> HeatTraceSamples:
    grid = geometric_grid(config.t_min, config.t_max, config.points_per_decade)
    return heat_trace(spectrum, grid, config.epsilon, threads=config.threads)


def run_fit(config: RunConfig, samples: HeatTraceSamples) -> ExpansionFit:
    basis = parse_basis(config.basis) if config.basis else None
    return fit_expansion(
        samples,
        basis,
        config.window,
        max_condition=config.max_condition,
        max_residual=config.max_residual,
    )


def predicted_terms(prediction: PredictedCoefficients) -> dict[BasisTerm, float]:
    """Terms of the expansion the workbench has a prediction for."""
    return {
        AREA_TERM: prediction.area_coefficient,
        BOUNDARY_TERM: prediction.boundary_half,
        CONSTANT_TERM: prediction.t0_total,
        HALF_TERM: prediction.half_total,
    }


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    fitted: float
    standard_error: float
    predicted: float | None

    @property
    def discrepancy(self) -> float | None:
        """(fitted − predicted) in units of the fit standard error."""
        if self.predicted is None or not self.standard_error > 0.0:
            return None
        return (self.fitted - self.predicted) / self.standard_error

    def to_dict(self) -> dict[str, Any]:
        return {
            "term": self.label,
            "fitted": self.fitted,
            "standard_error": self.standard_error,
            "predicted": self.predicted,
            "discrepancy_se": self.discrepancy,
        }


def compare(fit: ExpansionFit, prediction: PredictedCoefficients) -> list[ComparisonRow]:
    known = predicted_terms(prediction)
    return [
        ComparisonRow(
            label=term.label,
            fitted=fit.coefficient(term),
            standard_error=fit.error(term),
            predicted=known.get(term),
        )
        for term in fit.basis
    ]


def discriminate(measured: float, error: float, candidates: dict[str, float]) -> dict[str, Any]:
    """Which candidate values a measurement supports, and which it excludes at 3 SE."""
    distances = {
        name: abs(measured - value) / error if error > 0.0 else math.inf
        for name, value in candidates.items()
    }
    best = min(distances, key=lambda name: distances[name])
    excluded = sorted(name for name, dist in distances.items() if dist >= EXCLUSION_SE)
    decided = len(candidates) > 1 and len(excluded) == len(candidates) - 1 and best not in excluded
    return {
        "measured": measured,
        "standard_error": error,
        "candidates": dict(candidates),
        "distance_se": {
            name: (dist if math.isfinite(dist) else None) for name, dist in distances.items()
        },
        "supported": best,
        "excluded": excluded,
        "decided": decided,
    }


def discrimination_report(
    fit: ExpansionFit, decomposition: T0Decomposition, prediction: PredictedCoefficients
) -> dict[str, Any]:
    report: dict[str, Any] = {}
    tips = prediction.tips
    if tips:
        candidates = {
            key.removeprefix("b0_"): math.fsum(values)
            for key, values in prediction.alternatives.items()
            if key.startswith("b0_")
        }
        report["b0_convention"] = discriminate(
            decomposition.singular, decomposition.fitted_error, candidates
        )
    if tips and fit.has(HALF_TERM):
        readings = {
            key.removeprefix("bhalf_"): math.fsum(values)
            for key, values in prediction.alternatives.items()
            if key.startswith("bhalf_")
        }
        if len(set(readings.values())) > 1:
            report["bhalf_reading"] = discriminate(
                fit.coefficient(HALF_TERM) - prediction.boundary_bhalf,
                fit.error(HALF_TERM),
                readings,
            )
    return report


@dataclass(frozen=True)
class FitOutcome:
    samples: HeatTraceSamples
    fit: ExpansionFit
    prediction: PredictedCoefficients
    decomposition: T0Decomposition
    rows: list[ComparisonRow]
    discrimination: dict[str, Any]

    def to_dict(self, config: RunConfig) -> dict[str, Any]:
        return {
            "config": config.to_dict(),
            "spectrum_hash": self.samples.spectrum_hash,
            "fit": self.fit.to_dict(),
            "prediction": self.prediction.to_dict(),
            "decomposition": self.decomposition.to_dict(),
            "comparison": [row.to_dict() for row in self.rows],
            "discrimination": self.discrimination,
        }


def fit_and_compare(config: RunConfig, samples: HeatTraceSamples) -> FitOutcome:
    fit = run_fit(config, samples)
    profile = profile_for(config)
    prediction = prediction_for(config)
    decomposition = decompose_t0(fit, profile)
    return FitOutcome(
        samples=samples,
        fit=fit,
        prediction=prediction,
        decomposition=decomposition,
        rows=compare(fit, prediction),
        discrimination=discrimination_report(fit, decomposition, prediction),
    )
