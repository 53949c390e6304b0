"""Controllable multiphoton transport between two resonators linked by a coupled-resonator chain."""

from .bounds import (
    BoundReport,
    average_bounds,
    delta_r,
    delta_t,
    leakage_sum,
    perturbative_matrix_elements,
    reflection_bound,
    transmission_bound,
)
from .dynamics import (
    EffectiveAmplitudes,
    Evolution,
    Propagator,
    effective_boundary_amplitudes,
    effective_propagator_coupled,
    effective_propagator_uncoupled,
    propagator,
)
from .errors import (
    BoundViolated,
    ConsistencyError,
    DegenerateTap,
    EigFailure,
    EvenChainLength,
    GridNotIncreasing,
    NumericalPathology,
    TransportError,
    ValidationError,
    ZeroCoupling,
)
from .lattice import (
    ChainSpectrum,
    CouplingMatrix,
    ModeCouplings,
    NetworkConfig,
    build_coupling_matrix,
    chain_spectrum,
    mode_couplings,
    swap_time,
)
from .sweep import SweepRow, SweepSpec, preset, run_sweep, swap_demo, verify_bounds
from .transport import (
    FCoefficients,
    HaarEstimate,
    SuperpositionState,
    TransportReport,
    average_fidelities,
    f_coefficients,
    fock_fidelities,
    haar_average_oracle,
    reduced_density_matrix,
    superposition_fidelities,
)

__version__ = "0.1.0"
