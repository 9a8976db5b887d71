from conic_heat.regularization.chain import (
    b_rho_1,
    gamma_prefactor_laurent,
    laurent_product,
    published_closed_form,
)
from conic_heat.regularization.conversion import (
    CoefficientSet,
    a_factor,
    area_rho,
    b_factor,
    c_factor,
    heat_from_resolvent,
    resolvent_from_heat,
)
from conic_heat.regularization.finite_part import (
    IntegrandDescriptor,
    finite_part_integral,
    kernel_descriptor,
)
from conic_heat.regularization.sums import (
    READINGS,
    Reading,
    RegularizedValue,
    gamma_ratio_sum,
    riemann_zeta,
    tip_correction_sum,
)

__all__ = [
    "READINGS",
    "CoefficientSet",
    "IntegrandDescriptor",
    "Reading",
    "RegularizedValue",
    "a_factor",
    "area_rho",
    "b_factor",
    "b_rho_1",
    "c_factor",
    "finite_part_integral",
    "gamma_prefactor_laurent",
    "gamma_ratio_sum",
    "heat_from_resolvent",
    "kernel_descriptor",
    "laurent_product",
    "published_closed_form",
    "resolvent_from_heat",
    "riemann_zeta",
    "tip_correction_sum",
]
