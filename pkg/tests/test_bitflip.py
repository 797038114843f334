"""Unit tests for the cooled three-qubit bit-flip code model."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from coolqec.bitflip import (
    CORRECTION_TABLE,
    ERROR_STRINGS,
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
from coolqec.lindblad import integrate, rhs
from coolqec.operators import basis_ket, commutator, pauli_string

#: Ancilla flag pattern excited by each correctable single flip (ancilla 1
#: watches the parity of qubits 1,2; ancilla 2 the parity of qubits 2,3).
FLAG_FOR_ERROR = {"XII": "10", "IXI": "11", "IIX": "01"}


def _codeword_with_ancillas(bits):
    return np.kron(basis_ket(bits), basis_ket("00"))


# ---------------------------------------------------------------------------
# Hamiltonians


def test_detection_moves_flagged_patterns():
    h_d = build_detection_hamiltonian()
    assert_allclose(h_d @ basis_ket("00100"), basis_ket("00101"), atol=1e-15)
    assert_allclose(h_d @ basis_ket("10000"), basis_ket("10010"), atol=1e-15)


def test_detection_annihilates_codespace():
    h_d = build_detection_hamiltonian()
    for bits in ("000", "111"):
        assert np.abs(h_d @ _codeword_with_ancillas(bits)).max() < 1e-15


def test_detection_is_hermitian():
    h_d = build_detection_hamiltonian()
    assert_allclose(h_d, h_d.conj().T, atol=1e-15)


def test_detection_flags_match_syndrome_patterns():
    h_d = build_detection_hamiltonian()
    for bits in ("000", "111"):
        for err in ERROR_STRINGS:
            flipped = pauli_string(err) @ basis_ket(bits)
            state = np.kron(flipped, basis_ket("00"))
            expected = np.kron(flipped, basis_ket(FLAG_FOR_ERROR[err]))
            assert_allclose(h_d @ state, expected, atol=1e-15)


def test_correction_moves_flagged_patterns():
    h_c = build_correction_hamiltonian()
    assert_allclose(h_c @ basis_ket("00101"), basis_ket("00001"), atol=1e-15)
    assert_allclose(h_c @ basis_ket("10010"), basis_ket("00010"), atol=1e-15)


def test_correction_annihilates_codespace():
    h_c = build_correction_hamiltonian()
    for bits in ("000", "111"):
        assert np.abs(h_c @ _codeword_with_ancillas(bits)).max() < 1e-15


def test_correction_is_hermitian():
    h_c = build_correction_hamiltonian()
    assert_allclose(h_c, h_c.conj().T, atol=1e-15)


def test_coupling_hamiltonian_structure():
    h_d = build_detection_hamiltonian()
    h_c = build_correction_hamiltonian()
    h = build_coupling_hamiltonian()
    assert_allclose(h, h_d + h_c + 1j * commutator(h_d, h_c), atol=1e-15)
    assert_allclose(h, h.conj().T, atol=1e-14)
    # The commutator closure term is not vacuous.
    assert np.abs(commutator(h_d, h_c)).max() > 0.5


def test_coupling_annihilates_codespace():
    h = build_coupling_hamiltonian()
    for alpha, beta in ((1.0, 0.0), (0.0, 1.0), (0.6, 0.8)):
        state = np.kron(encode((alpha, beta)), basis_ket("00"))
        assert np.abs(h @ state).max() < 1e-14


# ---------------------------------------------------------------------------
# Pauli decomposition


def test_pauli_decomposition_self():
    terms = pauli_decomposition(pauli_string("ZIIII"))
    assert terms == {"ZIIII": pytest.approx(1.0)}


def test_pauli_decomposition_reconstructs_detection():
    h_d = build_detection_hamiltonian()
    terms = pauli_decomposition(h_d)
    rebuilt = sum(c * pauli_string(name) for name, c in terms.items())
    assert_allclose(rebuilt, h_d, atol=1e-12)


def test_pauli_decomposition_uniform_magnitude():
    for h in (build_detection_hamiltonian(), build_correction_hamiltonian()):
        terms = pauli_decomposition(h)
        assert len(terms) == 24
        mags = np.abs(np.array(list(terms.values())))
        assert mags.max() - mags.min() < 1e-12


def test_pauli_decomposition_rejects_non_hermitian():
    bad = np.zeros((32, 32), dtype=complex)
    bad[0, 1] = 1.0
    with pytest.raises(ValueError):
        pauli_decomposition(bad)
    with pytest.raises(ValueError):
        pauli_decomposition(np.eye(8))


# ---------------------------------------------------------------------------
# model assembly


def test_build_model_term_layout():
    spec = build_model(gamma=0.05, kappa=100.0, lam=250.0)
    assert spec.ham_strength == 100.0
    assert [t.rate for t in spec.dissipators] == [0.05, 0.05, 0.05, 250.0, 250.0]
    with_anc = build_model(0.05, 100.0, 250.0, errors_on_ancillas=True)
    assert [t.rate for t in with_anc.dissipators] == [0.05] * 3 + [250.0] * 2 + [0.05] * 2
    with pytest.raises(ValueError):
        build_model(-0.1, 100.0, 250.0)


def test_rhs_vanishes_on_codespace_without_noise():
    spec = build_model(gamma=0.0, kappa=100.0, lam=250.0)
    psi = initial_full_state((0.6, 0.8))
    rho = np.outer(psi, psi.conj())
    assert np.abs(rhs(spec, rho)).max() < 1e-10


def test_codespace_is_stationary_without_noise():
    spec = build_model(gamma=0.0, kappa=100.0, lam=250.0)
    psi = initial_full_state((1.0, 0.0))
    rho0 = np.outer(psi, psi.conj())
    rec = integrate(spec, rho0, t_final=1.0, n_points=101)
    overlaps = [fidelity(s, (1.0, 0.0)) for s in rec.states]
    assert np.abs(np.array(overlaps) - 1.0).max() < 1e-9


def test_ancilla_noise_barely_moves_the_fidelity():
    # With cooling much faster than the error rate, adding bit-flip noise on
    # the ancillas shifts the final fidelity only slightly.
    from coolqec.experiments import run_fidelity_curve

    base = run_fidelity_curve(0.05, 100.0, 250.0)
    noisy = run_fidelity_curve(0.05, 100.0, 250.0, errors_on_ancillas=True)
    assert abs(base.values[-1] - noisy.values[-1]) < 2e-2


# ---------------------------------------------------------------------------
# states, fidelity, syndromes


def test_encode_basics():
    assert_allclose(encode((1.0, 0.0)), basis_ket("000"), atol=1e-15)
    assert_allclose(encode((0.0, 1.0)), basis_ket("111"), atol=1e-15)
    mixed = encode((0.6, 0.8j))
    assert abs(np.linalg.norm(mixed) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        encode((1.0, 1.0))


def test_fidelity_reference_values():
    psi = initial_full_state((1.0, 0.0))
    assert fidelity(np.outer(psi, psi.conj()), (1.0, 0.0)) == pytest.approx(1.0)

    flipped = np.kron(basis_ket("100"), basis_ket("00"))
    rho = np.outer(flipped, flipped.conj())
    assert fidelity(rho, (1.0, 0.0)) == pytest.approx(0.0, abs=1e-15)

    half = 1.0 / np.sqrt(2.0)
    dephased = 0.5 * (
        np.outer(basis_ket("000"), basis_ket("000").conj())
        + np.outer(basis_ket("111"), basis_ket("111").conj())
    )
    rho = np.kron(dephased, np.outer(basis_ket("00"), basis_ket("00").conj()))
    assert fidelity(rho, (half, half)) == pytest.approx(0.5)

    with pytest.raises(ValueError):
        fidelity(np.eye(8) / 8, (1.0, 0.0))


def test_syndrome_signs_follow_lookup_table():
    cases = {
        "000": (+1, +1),
        "100": (-1, +1),
        "010": (-1, -1),
        "001": (+1, -1),
        "111": (+1, +1),
        "011": (-1, +1),
    }
    for bits, expected in cases.items():
        assert syndrome_signs(basis_ket(bits)) == expected
    with pytest.raises(ValueError):
        syndrome_signs((basis_ket("000") + basis_ket("100")) / np.sqrt(2))


def test_code_model_invariants():
    model = build_code_model()
    s1, s2 = model.syndrome_ops
    assert np.abs(commutator(s1, s2)).max() < 1e-15
    proj = model.codespace_projector
    assert_allclose(proj @ proj, proj, atol=1e-15)
    assert np.linalg.matrix_rank(proj) == 2
    for bits in ("000", "111"):
        ket = basis_ket(bits)
        assert_allclose(s1 @ ket, ket, atol=1e-15)
        assert_allclose(s2 @ ket, ket, atol=1e-15)


def test_every_single_flip_is_correctable():
    model = build_code_model()
    for bits in ("000", "111"):
        ket = basis_ket(bits)
        for err in model.error_ops:
            corrupted = err @ ket
            signs = syndrome_signs(corrupted)
            correction = model.correction_table[signs]
            assert correction is not None
            restored = pauli_string(correction) @ corrupted
            assert_allclose(restored, ket, atol=1e-15)
    assert CORRECTION_TABLE[(+1, +1)] is None


def test_errors_leave_no_codespace_shadow():
    model = build_code_model()
    proj = model.codespace_projector
    for err in model.error_ops:
        assert np.abs(proj @ err @ proj).max() == 0.0
