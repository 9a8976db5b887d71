from conic_heat.trace.basis import (
    AREA_TERM,
    BOUNDARY_TERM,
    CAP_BASIS,
    CLOSED_BASIS,
    CONSTANT_TERM,
    HALF_TERM,
    BasisTerm,
    default_basis,
    design_matrix,
    next_half_power,
    parse_basis,
    parse_term,
)
from conic_heat.trace.decompose import T0Decomposition, boundary_t0, decompose_t0, interior_t0
from conic_heat.trace.fit import (
    DEFAULT_MAX_CONDITION,
    DEFAULT_MAX_RESIDUAL,
    ExpansionFit,
    fit_expansion,
    plot_csv,
    select_window,
)
from conic_heat.trace.heat import (
    HeatTraceSamples,
    WeylEnvelope,
    geometric_grid,
    heat_trace,
    weyl_envelope,
)

__all__ = [
    "AREA_TERM",
    "BOUNDARY_TERM",
    "CAP_BASIS",
    "CLOSED_BASIS",
    "CONSTANT_TERM",
    "DEFAULT_MAX_CONDITION",
    "DEFAULT_MAX_RESIDUAL",
    "HALF_TERM",
    "BasisTerm",
    "ExpansionFit",
    "HeatTraceSamples",
    "T0Decomposition",
    "WeylEnvelope",
    "boundary_t0",
    "decompose_t0",
    "default_basis",
    "design_matrix",
    "fit_expansion",
    "geometric_grid",
    "heat_trace",
    "interior_t0",
    "next_half_power",
    "parse_basis",
    "parse_term",
    "plot_csv",
    "select_window",
    "weyl_envelope",
]
