"""Continuous-time quantum error correction by ancilla cooling.

Simulates the three-qubit bit-flip code protected by an always-on
detect/correct Hamiltonian whose syndrome ancillas are continuously cooled,
via Lindblad master-equation integration, plus the discrete projective
(Zeno-cycle) counterpart of the same protocol.
"""

from .bitflip import (
    LogicalState,
    build_code_model,
    build_correction_hamiltonian,
    build_coupling_hamiltonian,
    build_detection_hamiltonian,
    build_model,
    encode,
    fidelity,
    initial_full_state,
    pauli_decomposition,
    syndrome_signs,
)
from .experiments import (
    build_curve_set,
    find_optimal_scaling,
    run_fidelity_curve,
    sweep_scaling,
    sweep_surface,
    uncorrected_baseline,
)
from .lindblad import (
    DimensionGuardError,
    DissipatorTerm,
    IntegrationDivergedError,
    MasterEquationSpec,
    TrajectoryRecord,
    default_step,
    dissipator,
    integrate,
    liouvillian_matrix,
    rhs,
)
from .operators import (
    basis_ket,
    commutator,
    expm_hermitian,
    kron_list,
    partial_trace,
    pauli_string,
)
from .zeno import (
    ZenoConfig,
    ZenoRunReport,
    ZenoUnderflowError,
    build_cycle_unitary,
    run_zeno_cycles,
    verify_kl_condition,
    verify_pup_property,
)

__version__ = "0.1.0"
