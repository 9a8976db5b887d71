"""Heat traces Z(t) = Σ mult·e^{−tλ} with a certified bound on the missing tail.

Above Λ = lambda_max the counting function is bounded by a Weyl envelope
N(λ) ≤ (A/4π)λ + C√λ + C₀ whose constants are fitted to the computed spectrum
and doubled. Integrating e^{−tλ} against that envelope gives

    tail ≤ e^{−tΛ}[(A/4π)(Λ + 1/t) + C₀ − N(Λ)]
           + C[√Λ e^{−tΛ} + √π/(2√t)·erfc(√(tΛ))].
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from conic_heat.core.base import LOGGER
from conic_heat.core.errors import NumericalError, TailBoundError
from conic_heat.profiles import Topology
from conic_heat.spectral import Spectrum

ENVELOPE_INFLATION = 2.0
SUMMATION_FLOOR = 1e-14


@dataclass(frozen=True)
class WeylEnvelope:
    area: float
    C: float
    C0: float

    def count_bound(self, lam: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(lam, dtype=float)
        return self.area / (4.0 * math.pi) * x + self.C * np.sqrt(x) + self.C0

    def tail_bound(self, t: float, lambda_max: float, counted: float) -> float:
        decay = math.exp(-t * lambda_max)
        linear = decay * (
            self.area / (4.0 * math.pi) * (lambda_max + 1.0 / t) + self.C0 - counted
        )
        complement = float(special.erfc(math.sqrt(t * lambda_max)))
        root = self.C * (
            math.sqrt(lambda_max) * decay + math.sqrt(math.pi) / (2.0 * math.sqrt(t)) * complement
        )
        return max(0.0, linear + root)


def weyl_envelope(spectrum: Spectrum) -> WeylEnvelope:
    lam = spectrum.eigenvalues
    counts = np.cumsum(spectrum.multiplicities)
    positive = lam > 0.0
    if not np.any(positive):
        total = float(counts[-1]) if counts.size else 0.0
        return WeylEnvelope(spectrum.area, 0.0, ENVELOPE_INFLATION * total)
    remainder = counts - spectrum.area / (4.0 * math.pi) * lam
    upper = positive & (lam >= 0.25 * spectrum.lambda_max)
    if not np.any(upper):
        upper = positive
    C = max(0.0, float(np.max(remainder[upper] / np.sqrt(lam[upper]))))
    C0 = max(0.0, float(np.max(remainder - C * np.sqrt(np.maximum(lam, 0.0)))))
    return WeylEnvelope(spectrum.area, ENVELOPE_INFLATION * C, ENVELOPE_INFLATION * C0)


@dataclass(frozen=True, eq=False)
class HeatTraceSamples:
    t: NDArray[np.float64]
    z: NDArray[np.float64]
    tail_bound: NDArray[np.float64]
    eigen_error: NDArray[np.float64]
    epsilon: float
    spectrum_hash: str = ""
    lambda_max: float = math.inf
    area: float = math.nan
    topology: Topology | None = None
    usable: NDArray[np.bool_] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "usable", np.asarray(self.tail_bound <= self.epsilon))

    @property
    def budget(self) -> NDArray[np.float64]:
        """Absolute error budget per sample; inverse squares are the fit weights."""
        floor = SUMMATION_FLOOR * np.abs(self.z)
        return np.asarray(self.tail_bound + self.eigen_error + floor)

    @property
    def min_usable_t(self) -> float | None:
        bad = np.flatnonzero(~self.usable)
        if bad.size == 0:
            return float(self.t[0]) if self.t.size else None
        first = int(bad[-1]) + 1
        return float(self.t[first]) if first < self.t.size else None

    def select(self, mask: ArrayLike) -> HeatTraceSamples:
        keep = np.asarray(mask, dtype=bool)
        return HeatTraceSamples(
            t=self.t[keep],
            z=self.z[keep],
            tail_bound=self.tail_bound[keep],
            eigen_error=self.eigen_error[keep],
            epsilon=self.epsilon,
            spectrum_hash=self.spectrum_hash,
            lambda_max=self.lambda_max,
            area=self.area,
            topology=self.topology,
        )

    def usable_samples(self) -> HeatTraceSamples:
        return self.select(self.usable)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(("t", "Z", "tail_bound", "eigen_error", "usable"))
        for row in zip(self.t, self.z, self.tail_bound, self.eigen_error, self.usable, strict=True):
            t, z, tail, err, ok = row
            writer.writerow((f"{t:.17g}", f"{z:.17g}", f"{tail:.17g}", f"{err:.17g}", int(ok)))
        return buffer.getvalue()


def geometric_grid(t_min: float, t_max: float, points_per_decade: int) -> NDArray[np.float64]:
    if not 0.0 < t_min < t_max:
        raise ValueError(f"need 0 < t_min < t_max, got ({t_min}, {t_max})")
    if points_per_decade < 1:
        raise ValueError(f"points_per_decade must be >= 1, got {points_per_decade}")
    count = int(round(math.log10(t_max / t_min) * points_per_decade)) + 1
    return np.geomspace(t_min, t_max, max(count, 2))


def _trace_at(
    t: float, lam: NDArray[np.float64], mult: NDArray[np.float64], err: NDArray[np.float64]
) -> tuple[float, float]:
    z = math.fsum(mult * np.exp(-t * lam))
    propagated = math.fsum(mult * t * err * np.exp(-t * (lam - err)))
    return z, propagated


def _check_shape(samples: HeatTraceSamples) -> None:
    """Z must be positive and decrease in t up to the per-sample budget."""
    if np.any(samples.z <= 0.0):
        t_bad = float(samples.t[int(np.argmax(samples.z <= 0.0))])
        raise NumericalError(f"heat trace is not positive at t={t_bad:g}")
    slack = samples.budget[:-1] + samples.budget[1:]
    rising = np.flatnonzero(np.diff(samples.z) > slack)
    if rising.size:
        i = int(rising[0])
        raise NumericalError(
            f"heat trace is not decreasing between t={samples.t[i]:g} and t={samples.t[i + 1]:g}"
        )


def heat_trace(
    spectrum: Spectrum,
    t_grid: Sequence[float] | NDArray[np.float64],
    epsilon: float,
    *,
    strict: bool = False,
    threads: int = 1,
) -> HeatTraceSamples:
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0 or np.any(t <= 0.0) or np.any(np.diff(t) <= 0.0):
        raise ValueError("t_grid must be a nonempty increasing sequence of positive values")
    lam = spectrum.eigenvalues
    mult = spectrum.multiplicities
    err = spectrum.errors
    envelope = weyl_envelope(spectrum)
    counted = float(np.sum(mult))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda tv: _trace_at(tv, lam, mult, err), t.tolist()))
    z = np.array([value for value, _ in results])
    propagated = np.array([value for _, value in results])
    tails = np.array([envelope.tail_bound(tv, spectrum.lambda_max, counted) for tv in t])

    samples = HeatTraceSamples(
        t=t,
        z=z,
        tail_bound=tails,
        eigen_error=propagated,
        epsilon=epsilon,
        spectrum_hash=spectrum.content_hash,
        lambda_max=spectrum.lambda_max,
        area=spectrum.area,
        topology=spectrum.topology,
    )
    if spectrum.entries:
        _check_shape(samples)
    unusable = int(np.count_nonzero(~samples.usable))
    if unusable:
        message = (
            f"{unusable} of {t.size} heat-trace samples exceed the tail bound {epsilon:g}; "
            f"smallest usable t is {samples.min_usable_t}"
        )
        if strict:
            raise TailBoundError(message, samples.min_usable_t)
        LOGGER.warning(message)
    return samples
