"""Certified Friedrichs spectra, mode by mode and assembled."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy import optimize

from conic_heat.core.base import LOGGER
from conic_heat.core.errors import CertificationError, ConicHeatError
from conic_heat.profiles import CLOSED_SPINDLE, Profile, Topology, volume
from conic_heat.spectral.collocation import collocation_eigenvalues
from conic_heat.spectral.mode import ModeOperator, build_mode_operator
from conic_heat.spectral.pruefer import count_below

DEFAULT_TOL = 1e-9
DEFAULT_MAX_POINTS = 1600
DEFAULT_MAX_COUNT = 20_000
MAX_MODES = 2_000
# relative error still accepted once refinement stalls on rounding
ROUNDING_LIMIT = 1e-6

_CUTOFF_GRID = 2049
_ROUNDING_FLOOR = 64.0 * float(np.finfo(float).eps)
_GROWTH = 1.25
_CONTRACTION = 0.5
CSV_FIELDS = ("k", "n", "lambda", "mult", "err")


@dataclass(frozen=True)
class SpectrumEntry:
    lam: float
    k: int
    n: int
    mult: int
    err: float

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "n": self.n, "lambda": self.lam, "mult": self.mult, "err": self.err}


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[SpectrumEntry, ...]
    lambda_max: float
    k_max: int
    topology: Topology
    area: float

    @property
    def eigenvalues(self) -> NDArray[np.float64]:
        return np.array([entry.lam for entry in self.entries], dtype=float)

    @property
    def multiplicities(self) -> NDArray[np.float64]:
        return np.array([entry.mult for entry in self.entries], dtype=float)

    @property
    def errors(self) -> NDArray[np.float64]:
        return np.array([entry.err for entry in self.entries], dtype=float)

    def count_below(self, lam: float) -> int:
        """Eigenvalues below ``lam`` counted with multiplicity."""
        return sum(entry.mult for entry in self.entries if entry.lam < lam)

    def metadata(self) -> dict[str, Any]:
        return {
            "lambda_max": self.lambda_max,
            "k_max": self.k_max,
            "topology": self.topology,
            "area": self.area,
        }

    @property
    def content_hash(self) -> str:
        digest = hashlib.sha256()
        digest.update(json.dumps(self.metadata(), sort_keys=True).encode("utf-8"))
        digest.update(spectrum_to_csv(self).encode("utf-8"))
        return digest.hexdigest()


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def spectrum_to_csv(spectrum: Spectrum) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for entry in spectrum.entries:
        writer.writerow([entry.k, entry.n, _fmt(entry.lam), entry.mult, _fmt(entry.err)])
    return buffer.getvalue()


def spectrum_from_csv(
    text: str, *, lambda_max: float, k_max: int, topology: Topology, area: float
) -> Spectrum:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ValueError(f"spectrum CSV must have columns {CSV_FIELDS}, got {reader.fieldnames}")
    entries = tuple(
        SpectrumEntry(
            lam=float(row["lambda"]),
            k=int(row["k"]),
            n=int(row["n"]),
            mult=int(row["mult"]),
            err=float(row["err"]),
        )
        for row in reader
    )
    return Spectrum(entries, lambda_max=lambda_max, k_max=k_max, topology=topology, area=area)


# ------------------------ single mode ------------------------


def _initial_points(op: ModeOperator, lambda_max: float, count: int) -> int:
    return max(int(1.1 * op.R * math.sqrt(max(lambda_max, 0.0)) + 40), count + 24)


def extrapolate(levels: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Estimates and error bounds per column of eigenvalues computed at increasing N.

    For each eigenvalue the smallest step |λ_{i+1} − λ_i| marks the resolved
    level. When the two steps leading there contract by at least half the
    remainder is geometric and Aitken's Δ² removes it. The bound is that step,
    widened by the following one when a finer level exists, because collocation
    rounding grows with N.
    """
    table = np.asarray(levels, dtype=float)
    if table.ndim != 2 or table.shape[0] < 2:
        raise ValueError("need eigenvalues from at least two collocation sizes")
    steps = np.diff(table, axis=0)
    size = np.abs(steps)
    cols = np.arange(table.shape[1])
    best = np.argmin(size, axis=0)

    values = table[best + 1, cols]
    errors = size[best, cols]
    following = np.minimum(best + 1, size.shape[0] - 1)
    errors = np.where(best + 1 < size.shape[0], np.maximum(errors, size[following, cols]), errors)

    last = steps[best, cols]
    before = steps[np.maximum(best - 1, 0), cols]
    geometric = (best >= 1) & (np.abs(last) <= _CONTRACTION * np.abs(before)) & (last != before)
    with np.errstate(divide="ignore", invalid="ignore"):
        correction = np.where(geometric, last * last / (last - before), 0.0)
    values = values - correction
    floor = _ROUNDING_FLOOR * np.maximum(np.abs(values), 1.0)
    return values, np.maximum(errors, floor)


def _pairs(
    op: ModeOperator, lam: NDArray[np.float64], err: NDArray[np.float64]
) -> list[tuple[float, float]]:
    pairs = [(float(value), float(bound)) for value, bound in zip(lam, err, strict=True)]
    if op.k == 0 and op.profile.topology == CLOSED_SPINDLE:
        # constant eigenfunction
        pairs[0] = (0.0, max(pairs[0][1], abs(pairs[0][0])))
    return pairs


def eigenvalues(
    op: ModeOperator,
    lambda_max: float,
    tol: float = DEFAULT_TOL,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_count: int = DEFAULT_MAX_COUNT,
) -> list[tuple[float, float]]:
    """Eigenvalues of one mode below ``lambda_max`` as (λ, err) pairs.

    The count comes from Prüfer phases. Collocation runs at sizes growing by
    ``_GROWTH``; every size that reproduces the count adds a level, and
    :func:`extrapolate` turns the levels into estimates with error bounds.
    Refinement ends once every bound is within ``tol`` relative. When the steps
    stop contracting, rounding dominates: bounds up to ``ROUNDING_LIMIT`` are
    then reported as achieved, anything worse is a certification failure.
    """
    if tol < 1e-12:
        raise ValueError(f"tol must be >= 1e-12, got {tol!r}")
    if lambda_max <= 0.0:
        return []
    count = count_below(op, lambda_max)
    if count == 0:
        return []
    if count > max_count:
        raise CertificationError(
            f"mode k={op.k} has {count} eigenvalues below {lambda_max}, limit is {max_count}"
        )

    slack = 10.0 * max(tol, ROUNDING_LIMIT) * max(lambda_max, 1.0)
    levels: list[NDArray[np.float64]] = []
    n = _initial_points(op, lambda_max, count)
    stalled = False
    while n <= max_points:
        values = collocation_eigenvalues(op, n)
        below_strict = int(np.count_nonzero(values < lambda_max - slack))
        below_loose = int(np.count_nonzero(values < lambda_max + slack))
        if values.size >= count and below_strict <= count <= below_loose:
            levels.append(values[:count])
        else:
            LOGGER.debug("mode k=%d, N=%d: collocation count disagrees with %d", op.k, n, count)
        if len(levels) >= 2:
            lam, err = extrapolate(np.array(levels))
            scale = np.maximum(np.abs(lam), 1.0)
            if np.all(err <= tol * scale):
                LOGGER.debug("mode k=%d certified at N=%d (%d eigenvalues)", op.k, n, count)
                return _pairs(op, lam, err)
            if len(levels) >= 3:
                recent = np.abs(np.diff(np.array(levels[-3:]), axis=0)) / scale
                if recent[1].max() > _CONTRACTION * recent[0].max():
                    stalled = True
                    break
        n = max(n + 16, int(_GROWTH * n))

    if stalled:
        worst = float(np.max(err / scale))
        if worst <= ROUNDING_LIMIT:
            LOGGER.warning(
                "mode k=%d: refinement stalled on rounding at N=%d; %d eigenvalues carry "
                "relative error up to %.2g (tol %g)",
                op.k,
                n,
                count,
                worst,
                tol,
            )
            return _pairs(op, lam, err)
        raise CertificationError(
            f"mode k={op.k}: refinement stalled at relative error {worst:.3g} "
            f"(tol={tol}, rounding limit {ROUNDING_LIMIT})"
        )
    raise CertificationError(
        f"mode k={op.k}: {count} eigenvalues below {lambda_max} not certified to tol={tol} "
        f"within {max_points} collocation points"
    )


# ------------------------ assembly ------------------------


def min_potential(op: ModeOperator) -> float:
    r = np.linspace(0.0, op.R, _CUTOFF_GRID)[1:-1]
    values = op.potential(r)
    i = int(np.argmin(values))
    lo = r[max(i - 1, 0)]
    hi = r[min(i + 1, r.size - 1)]
    result = optimize.minimize_scalar(
        op.potential_at, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12 * op.R}
    )
    return float(min(values[i], result.fun))


def mode_cutoff(profile: Profile, lambda_max: float) -> int:
    """Smallest k with min V_k > lambda_max; V_k increases with k, so no higher mode contributes."""
    for k in range(1, MAX_MODES + 1):
        if min_potential(build_mode_operator(profile, k)) > lambda_max:
            return k
    raise CertificationError(f"no mode cutoff below k={MAX_MODES} for lambda_max={lambda_max}")


def full_spectrum(
    profile: Profile,
    lambda_max: float,
    tol: float = DEFAULT_TOL,
    *,
    threads: int = 1,
    max_points: int = DEFAULT_MAX_POINTS,
    max_count: int = DEFAULT_MAX_COUNT,
) -> Spectrum:
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if lambda_max < 0.0:
        raise ValueError(f"lambda_max must be nonnegative, got {lambda_max!r}")
    cutoff = mode_cutoff(profile, lambda_max)
    operators = [build_mode_operator(profile, k) for k in range(cutoff)]
    LOGGER.info(
        "spectrum of %s below %g: modes 0..%d on %d thread(s)",
        profile.label or profile.topology,
        lambda_max,
        cutoff - 1,
        threads,
    )

    def solve(op: ModeOperator) -> list[tuple[float, float]]:
        try:
            return eigenvalues(op, lambda_max, tol, max_points=max_points, max_count=max_count)
        except ConicHeatError:
            raise
        except Exception as exc:
            raise CertificationError(f"mode k={op.k}: {type(exc).__name__}: {exc}") from exc

    with ThreadPoolExecutor(max_workers=threads) as pool:
        per_mode = list(pool.map(solve, operators))

    entries: list[SpectrumEntry] = []
    for op, pairs in zip(operators, per_mode, strict=True):
        for n, (lam, err) in enumerate(pairs, start=1):
            entries.append(SpectrumEntry(lam=lam, k=op.k, n=n, mult=op.multiplicity, err=err))
    entries.sort(key=lambda entry: (entry.lam, entry.k, entry.n))
    total = sum(entry.mult for entry in entries)
    if total > max_count:
        raise CertificationError(f"{total} eigenvalues below {lambda_max} exceed limit {max_count}")
    if not entries:
        LOGGER.warning("empty spectrum below lambda_max=%g", lambda_max)
    return Spectrum(
        entries=tuple(entries),
        lambda_max=lambda_max,
        k_max=cutoff - 1,
        topology=profile.topology,
        area=volume(profile),
    )
