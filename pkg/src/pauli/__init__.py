"""
Time-splitting solver for the three-dimensional linear Pauli equation on a
periodic box: spectral kinetic and semi-Lagrangian advection steps, analytic
potential and spin-coupling propagators, conservation diagnostics, and a
dense matrix-exponential oracle for convergence verification.
"""

from .fields import (
    EMFields,
    FieldSamples,
    FieldValidation,
    field_preset,
    preset_experiment1,
    preset_experiment2,
    preset_zero,
    sample_fields,
    validate_fields,
)
from .grid import (
    Grid,
    InterpolationPlan,
    build_grid,
    forward_dft,
    inverse_dft,
    spectral_curl,
    spectral_divergence,
    spectral_gradient,
    trig_interpolate,
)
from .observables import (
    SeriesRecord,
    StateError,
    continuity_residual,
    current_density,
    density,
    state_error,
    total_energy,
    total_mass,
)
from .oracle import (
    ConvergenceResult,
    DenseGenerator,
    assemble_generator,
    convergence_study,
    exact_evolve,
)
from .splitting import (
    DivergenceError,
    Propagators,
    SolverConfig,
    advection_step,
    coupling_matrix_closed_form,
    coupling_step,
    evolve,
    kinetic_step,
    lie_step,
    potential_step,
    precompute_propagators,
    strang_step,
    trace_characteristics,
)
from .state import (
    SpinorField,
    alpha_norm,
    component_l2,
    initial_preset,
    initial_state_gaussian_pair,
    initial_state_spin_up,
    to_physical,
    to_spectral,
)

__version__ = "0.1.0"
