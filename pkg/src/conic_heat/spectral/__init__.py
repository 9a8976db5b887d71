from conic_heat.spectral.collocation import (
    CollocationGrid,
    collocation_eigenvalues,
    collocation_grid,
    factored_coefficients,
)
from conic_heat.spectral.mode import EndData, ModeOperator, build_mode_operator
from conic_heat.spectral.oracle import flat_cone_spectrum, spindle_spectrum
from conic_heat.spectral.pruefer import count_below
from conic_heat.spectral.spectrum import (
    CSV_FIELDS,
    DEFAULT_MAX_COUNT,
    DEFAULT_MAX_POINTS,
    DEFAULT_TOL,
    ROUNDING_LIMIT,
    Spectrum,
    SpectrumEntry,
    eigenvalues,
    extrapolate,
    full_spectrum,
    min_potential,
    mode_cutoff,
    spectrum_from_csv,
    spectrum_to_csv,
)

__all__ = [
    "CSV_FIELDS",
    "DEFAULT_MAX_COUNT",
    "DEFAULT_MAX_POINTS",
    "DEFAULT_TOL",
    "ROUNDING_LIMIT",
    "CollocationGrid",
    "EndData",
    "ModeOperator",
    "Spectrum",
    "SpectrumEntry",
    "build_mode_operator",
    "collocation_eigenvalues",
    "collocation_grid",
    "count_below",
    "eigenvalues",
    "extrapolate",
    "factored_coefficients",
    "flat_cone_spectrum",
    "full_spectrum",
    "min_potential",
    "mode_cutoff",
    "spectrum_from_csv",
    "spectrum_to_csv",
    "spindle_spectrum",
]
