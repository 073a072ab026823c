"""Multivector fields on a periodic grid: equations, densities, transforms."""
from .densities import (
    energy_momentum, hamiltonian_density, lagrangian_density, poynting, poynting_bivector,
    pseudoscalar_invariant,
)
from .equations import (
    ResidualReport, assemble_faraday, conservation_report, current_vector, equivalence_deviation,
    faraday, faraday_from_potential, nabla, potential_vector, read_faraday, residual_unified,
    residual_vector_form, spacetime_vector, split_unified, unified_residual, vector_form_grids,
)
from .grid import GridSpec, norms, total
from .io import read_snapshot, write_json, write_snapshot
from .mvfield import MultivectorField, product
from .state import (
    STATIC, FieldState, MissingTimeDerivative, Rates, bracketed, random_state, rates_from_snapshots,
    smooth_scalar,
)
from .transforms import (
    GaugeField, GaugeReport, duality_rotate, euclidean_duality_swap, gauge_report, gauge_transform,
    random_gauge, rotor_boost,
)
