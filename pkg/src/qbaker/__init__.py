"""Quantum baker's maps on the torus: exact propagators, Husimi functions and
semiclassical limits of the Schack-Caves family."""

__version__ = "0.1.0"

from .torus import (
    TorusSpace,
    StateVector,
    inner,
    fourier_full,
    fourier_full_inverse,
    partial_fourier,
    partial_fourier_inverse,
    pf_basis_state,
)
from .coherent import PhasePoint, HusimiGrid, theta0, coherent_state, normalization_sq, husimi
from .classical import (
    ClassicalPoint,
    SymbolWindow,
    baker_step,
    baker_step_complex,
    generating_W,
    shift_symbols,
)
from .baker import (
    BakerFamilyParams,
    LimitPath,
    baker_apply,
    baker_dense,
    baker_dense_position_rep,
    balazs_voros_dense,
    exact_propagator,
)
from .semiclassical import (
    SemiclassicalRegime,
    HumpDescriptor,
    ComparisonReport,
    vanvleck_explicit,
    vanvleck_generic,
    stochastic_propagator,
    psi_kappa,
    hump_catalog,
    compare_exact_semiclassical,
)
