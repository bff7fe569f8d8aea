"""Ground-state entanglement of the Dicke model: finite-N exact diagonalization
and thermodynamic-limit closed forms."""

from ._core import (
    BoundaryMaximumError,
    CollectiveExpectations,
    DivergenceError,
    ModelParams,
    NumericalError,
    ValidationError,
    concurrence,
    critical_coupling,
    find_maximum,
    fit_log_scaling,
    fit_power_law,
    ground_state,
    hamiltonian,
    observables,
    sweep,
    thermo,
    two_atom_rdm,
    von_neumann_entropy,
)

__all__ = [
    "BoundaryMaximumError",
    "CollectiveExpectations",
    "DivergenceError",
    "ModelParams",
    "NumericalError",
    "ValidationError",
    "concurrence",
    "critical_coupling",
    "find_maximum",
    "fit_log_scaling",
    "fit_power_law",
    "ground_state",
    "hamiltonian",
    "observables",
    "sweep",
    "thermo",
    "two_atom_rdm",
    "von_neumann_entropy",
]
