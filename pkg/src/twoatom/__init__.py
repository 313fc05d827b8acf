"""Laser-driven pair of dipole-coupled two-level atoms.

Pure-state and master-equation dynamics in the collective basis
``(g, e, s, a)``, concurrence measures and steady-state entanglement.
All rates and frequencies are in units of the single-atom decay rate.
"""

from ._backend import BACKEND
from .entanglement import (
    SteadyConcurrenceReport,
    approx_mixed_state,
    fidelity,
    pure_concurrence,
    steady_concurrence,
    to_product_basis,
    wootters_concurrence,
    x_state_concurrence_mixed,
    x_state_concurrence_pure,
)
from .errors import (
    ContractViolation,
    DomainError,
    IntegrationError,
    InvalidStateError,
    SingularMatrixError,
    StiffnessError,
    TwoAtomError,
)
from .geometry import CollectiveParams, PairGeometry, collective_decay, collective_params, dipole_dipole_shift
from .hamiltonian import Eigensystem, SystemParams, build_transformed_hamiltonian, eigensystem_resonant
from .master import (
    StateVector15,
    evolve,
    evolve_y,
    rhs,
    steady_state_closed_form,
    steady_state_numeric,
)
from .pure import (
    CollectiveAmplitudes,
    amplitudes_from_ground,
    approx_concurrence_large_shift,
    coherences_from_ground,
    evolve_pure,
    resonant_ratio,
)
from .states import Basis, DensityMatrix

__version__ = "0.1.0"
