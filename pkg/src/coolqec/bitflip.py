"""Three-qubit bit-flip code with continuously cooled syndrome ancillas.

Register layout: qubits 1-3 carry the encoded state, qubits 4-5 are
ancillas.  Ancilla 1 (qubit 4) tracks the parity of qubits 1,2; ancilla 2
(qubit 5) tracks the parity of qubits 2,3.  The codespace is spanned by
|000> and |111>; a bit pattern like "00101" lists qubits 1..5 left to
right, so it reads: data 001 (flip on qubit 3), ancillas 01.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

import numpy as np

from .lindblad import DissipatorTerm, MasterEquationSpec
from .operators import (
    LOWERING,
    basis_ket,
    commutator,
    kron_list,
    partial_trace,
    pauli_string,
    PAULIS,
)

N_DATA = 3
N_ANCILLA = 2
FULL_DIM = 2 ** (N_DATA + N_ANCILLA)

#: Syndrome operators stabilizing the codespace, and the correction each
#: syndrome sign pair selects (None = no correction needed).
SYNDROME_STRINGS = ("ZZI", "IZZ")
CORRECTION_TABLE: dict[tuple[int, int], str | None] = {
    (+1, +1): None,
    (-1, +1): "XII",
    (+1, -1): "IIX",
    (-1, -1): "IXI",
}
ERROR_STRINGS = ("XII", "IXI", "IIX")

# Detection transitions |after><before| + h.c.: each maps a single-flip data
# pattern with cold ancillas to the same pattern with the ancilla flagged
# for that flip's violated parity.
DETECTION_TRANSITIONS = (
    ("00101", "00100"),
    ("11001", "11000"),
    ("10010", "10000"),
    ("01110", "01100"),
    ("01011", "01000"),
    ("10111", "10100"),
)

# Correction transitions |after><before| + h.c.: each undoes the flip that a
# flagged ancilla pattern indicates, leaving the flag set.
CORRECTION_TRANSITIONS = (
    ("00001", "00101"),
    ("11101", "11001"),
    ("00010", "10010"),
    ("11110", "01110"),
    ("00011", "01011"),
    ("11111", "10111"),
)


class LogicalState(NamedTuple):
    """Amplitudes (alpha, beta) of a logical qubit alpha|0_L> + beta|1_L>."""

    alpha: complex
    beta: complex


def _as_logical(psi) -> LogicalState:
    state = LogicalState(*psi)
    norm_sq = abs(state.alpha) ** 2 + abs(state.beta) ** 2
    if abs(norm_sq - 1.0) > 1e-12:
        raise ValueError(f"logical amplitudes not normalized: |a|^2+|b|^2 = {norm_sq}")
    return state


def _transition_sum(transitions) -> np.ndarray:
    h = np.zeros((FULL_DIM, FULL_DIM), dtype=complex)
    for after, before in transitions:
        h += np.outer(basis_ket(after), basis_ket(before).conj())
    return h + h.conj().T


def build_detection_hamiltonian() -> np.ndarray:
    """Hermitian coupling that flags each correctable single flip.

    Every term moves a one-flip data pattern (ancillas cold) to the same
    pattern with the matching ancilla excited; the conjugate terms make it
    Hermitian.  It annihilates the codespace with cold ancillas.
    """
    return _transition_sum(DETECTION_TRANSITIONS)


def build_correction_hamiltonian() -> np.ndarray:
    """Hermitian coupling that undoes the flip a hot ancilla pattern flags."""
    return _transition_sum(CORRECTION_TRANSITIONS)


def build_coupling_hamiltonian() -> np.ndarray:
    """Detection + correction plus their commutator: H_d + H_c + i[H_d, H_c].

    The commutator term closes the detect/correct sequence to lowest order
    so one Hamiltonian drives both; the sum is Hermitian and still
    annihilates the codespace with cold ancillas.
    """
    h_d = build_detection_hamiltonian()
    h_c = build_correction_hamiltonian()
    return h_d + h_c + 1j * commutator(h_d, h_c)


def pauli_decomposition(h: np.ndarray) -> dict[str, float]:
    """Real Pauli-basis coefficients of a Hermitian 5-qubit operator.

    Returns {string: coefficient} with c_P = trace(P h) / 32, dropping
    magnitudes below 1e-12; the sum of c_P * P reconstructs h exactly.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (FULL_DIM, FULL_DIM):
        raise ValueError(f"expected a 5-qubit operator, got shape {h.shape}")
    if np.abs(h - h.conj().T).max() > 1e-10:
        raise ValueError("operator is not Hermitian")
    terms: dict[str, float] = {}
    for letters in product("IXYZ", repeat=5):
        name = "".join(letters)
        p = pauli_string(name)
        coeff = np.einsum("ij,ji->", p, h) / FULL_DIM
        if abs(coeff) >= 1e-12:
            if abs(coeff.imag) > 1e-12:
                raise ValueError(f"non-real coefficient for {name}: {coeff}")
            terms[name] = float(coeff.real)
    return terms


def build_model(
    gamma: float,
    kappa: float,
    lam: float,
    errors_on_ancillas: bool = False,
) -> MasterEquationSpec:
    """Master-equation spec: coupling Hamiltonian at strength kappa, bit-flip
    noise at rate gamma on the data qubits, and cooling at rate lam driving
    each ancilla toward |0> through its lowering operator.

    With ``errors_on_ancillas`` the same bit-flip noise also acts on the
    ancillas (two extra dissipator terms).
    """
    if gamma < 0 or kappa < 0 or lam < 0:
        raise ValueError(f"rates must be >= 0, got gamma={gamma} kappa={kappa} lam={lam}")
    eye = PAULIS["I"]
    terms = [
        DissipatorTerm(gamma, pauli_string("XIIII")),
        DissipatorTerm(gamma, pauli_string("IXIII")),
        DissipatorTerm(gamma, pauli_string("IIXII")),
        DissipatorTerm(lam, kron_list([eye, eye, eye, LOWERING, eye])),
        DissipatorTerm(lam, kron_list([eye, eye, eye, eye, LOWERING])),
    ]
    if errors_on_ancillas:
        terms.append(DissipatorTerm(gamma, pauli_string("IIIXI")))
        terms.append(DissipatorTerm(gamma, pauli_string("IIIIX")))
    return MasterEquationSpec(
        hamiltonian=build_coupling_hamiltonian(),
        ham_strength=kappa,
        dissipators=tuple(terms),
    )


def encode(psi) -> np.ndarray:
    """Three-qubit repetition encoding: alpha|000> + beta|111>."""
    state = _as_logical(psi)
    return state.alpha * basis_ket("000") + state.beta * basis_ket("111")


def initial_full_state(psi) -> np.ndarray:
    """Encoded state with both ancillas cold: encode(psi) ⊗ |00>."""
    return np.kron(encode(psi), basis_ket("00"))


def fidelity(rho_full: np.ndarray, psi) -> float:
    """Overlap of the reduced data-qubit state with the encoded target.

    Traces out the two ancillas and returns <psi_enc| rho_data |psi_enc>.
    """
    rho_full = np.asarray(rho_full)
    if rho_full.shape != (FULL_DIM, FULL_DIM):
        raise ValueError(f"expected a 5-qubit density matrix, got {rho_full.shape}")
    target = encode(psi)
    rho_data = partial_trace(rho_full, keep=(1, 2, 3))
    value = target.conj() @ rho_data @ target
    if abs(value.imag) > 1e-12:
        raise ValueError(f"fidelity came out non-real: {value}")
    return float(value.real)


def syndrome_signs(state: np.ndarray) -> tuple[int, int]:
    """Sign pair of the two parity checks on a three-qubit state.

    The state must be a simultaneous ±1 eigenstate of both checks (any
    basis codeword, possibly after one bit flip).
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (8,):
        raise ValueError(f"expected a 3-qubit state vector, got shape {state.shape}")
    signs = []
    for name in SYNDROME_STRINGS:
        image = pauli_string(name) @ state
        if np.allclose(image, state, atol=1e-10):
            signs.append(+1)
        elif np.allclose(image, -state, atol=1e-10):
            signs.append(-1)
        else:
            raise ValueError(f"state is not a ±1 eigenstate of {name}")
    return signs[0], signs[1]


@dataclass(frozen=True)
class CodeModel:
    """Code data bundle: projector, syndrome checks, correction lookup, errors."""

    codespace_projector: np.ndarray
    syndrome_ops: tuple[np.ndarray, np.ndarray]
    correction_table: dict[tuple[int, int], str | None]
    error_ops: tuple[np.ndarray, ...]


def build_code_model() -> CodeModel:
    projector = np.outer(basis_ket("000"), basis_ket("000").conj()) + np.outer(
        basis_ket("111"), basis_ket("111").conj()
    )
    return CodeModel(
        codespace_projector=projector,
        syndrome_ops=tuple(pauli_string(s) for s in SYNDROME_STRINGS),
        correction_table=dict(CORRECTION_TABLE),
        error_ops=tuple(pauli_string(s) for s in ERROR_STRINGS),
    )
