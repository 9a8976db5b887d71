"""Closed-form spectra for the flat cone and the spindle family.

These assemble the same :class:`Spectrum` the solver produces, from Bessel
zeros and Legendre degrees, so heat-trace fits can run on essentially exact
eigenvalues.
"""

from __future__ import annotations

import math

from conic_heat.model import bessel_j_zeros, spindle_eigenvalue
from conic_heat.profiles import CLOSED_SPINDLE, DIRICHLET_CAP, Topology
from conic_heat.spectral.spectrum import Spectrum, SpectrumEntry

_ORACLE_REL_ERR = 1e-14


def _finish(
    entries: list[SpectrumEntry], lambda_max: float, k_max: int, topology: Topology, area: float
) -> Spectrum:
    entries.sort(key=lambda entry: (entry.lam, entry.k, entry.n))
    return Spectrum(
        entries=tuple(entries),
        lambda_max=lambda_max,
        k_max=k_max,
        topology=topology,
        area=area,
    )


def flat_cone_spectrum(c: float, lambda_max: float, radius: float = 1.0) -> Spectrum:
    if not 0.0 < c <= 1.0:
        raise ValueError(f"c must lie in (0, 1], got {c!r}")
    limit = math.sqrt(max(lambda_max, 0.0)) * radius
    entries: list[SpectrumEntry] = []
    k = 0
    while k / c < limit:
        nu = k / c
        count = int(limit / math.pi) + 2
        zeros = bessel_j_zeros(nu, count)
        while zeros[-1] < limit:
            count *= 2
            zeros = bessel_j_zeros(nu, count)
        below = [j for j in zeros if j < limit]
        if not below:
            break
        for n, j in enumerate(below, start=1):
            lam = j * j / (radius * radius)
            entries.append(SpectrumEntry(lam, k, n, 1 if k == 0 else 2, _ORACLE_REL_ERR * lam))
        k += 1
    k_max = max((entry.k for entry in entries), default=0)
    return _finish(entries, lambda_max, k_max, DIRICHLET_CAP, math.pi * c * radius * radius)


def spindle_spectrum(beta: float, lambda_max: float) -> Spectrum:
    """β = 1 is the round sphere."""
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta!r}")
    entries: list[SpectrumEntry] = []
    k = 0
    while spindle_eigenvalue(beta, k, 1) < lambda_max:
        n = 1
        while (lam := spindle_eigenvalue(beta, k, n)) < lambda_max:
            err = max(_ORACLE_REL_ERR * lam, 0.0)
            entries.append(SpectrumEntry(lam, k, n, 1 if k == 0 else 2, err))
            n += 1
        k += 1
    k_max = max((entry.k for entry in entries), default=0)
    return _finish(entries, lambda_max, k_max, CLOSED_SPINDLE, 4.0 * math.pi * beta)
