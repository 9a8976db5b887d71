from conic_heat.model.bessel import (
    bessel_i,
    bessel_i_scaled,
    bessel_k,
    bessel_k_scaled,
    wronskian,
)
from conic_heat.model.kernel import (
    KernelTerm,
    ModelKernel,
    bessel_sum_rules,
    heat_kernel_diag,
    kernel_large_r_coefficients,
    kernel_terms,
    resolvent_diag,
    resolvent_diag_from_heat,
)
from conic_heat.model.mellin import mellin_diag_closed, mellin_diag_quadrature, mellin_strip
from conic_heat.model.zeros import (
    bessel_j_zeros,
    flat_cone_eigenvalue,
    mcmahon_zero,
    spindle_eigenvalue,
)

__all__ = [
    "KernelTerm",
    "ModelKernel",
    "bessel_i",
    "bessel_i_scaled",
    "bessel_j_zeros",
    "bessel_k",
    "bessel_k_scaled",
    "bessel_sum_rules",
    "flat_cone_eigenvalue",
    "heat_kernel_diag",
    "kernel_large_r_coefficients",
    "kernel_terms",
    "mcmahon_zero",
    "mellin_diag_closed",
    "mellin_diag_quadrature",
    "mellin_strip",
    "resolvent_diag",
    "resolvent_diag_from_heat",
    "spindle_eigenvalue",
    "wronskian",
]
