"""Dense multi-qubit operator and state helpers.

Conventions used across the package:

* Qubit 1 is the leftmost tensor factor, i.e. the most significant bit of a
  computational-basis index.  ``pauli_string("ZZI")`` therefore acts with Z on
  qubits 1 and 2 of a three-qubit register.
* Operators are plain complex numpy arrays of shape ``(2**n, 2**n)``; states
  are vectors of length ``2**n``.  Nothing here mutates its inputs.
"""

from __future__ import annotations

import numpy as np

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# Qubit lowering operator |0><1|, written (X + iY)/2.
LOWERING = np.array([[0, 1], [0, 0]], dtype=complex)

PAULIS = {"I": IDENTITY_2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


def pauli_string(spec: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis, e.g. ``"ZZI"`` -> Z x Z x I.

    The left character acts on qubit 1 (most significant bit).  Raises
    ``ValueError`` naming the offending position for characters outside
    ``{I, X, Y, Z}``.
    """
    if not spec:
        raise ValueError("empty Pauli string")
    out = np.array([[1.0 + 0j]])
    for pos, ch in enumerate(spec, start=1):
        if ch not in PAULIS:
            raise ValueError(
                f"invalid Pauli character {ch!r} at position {pos} in {spec!r}"
            )
        out = np.kron(out, PAULIS[ch])
    return out


def kron_list(ops: list[np.ndarray]) -> np.ndarray:
    """Tensor product of a nonempty list of operators, in list order."""
    if len(ops) == 0:
        raise ValueError("kron_list needs at least one operator")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def basis_ket(bitstring: str) -> np.ndarray:
    """Computational-basis state for a bit pattern, leftmost bit = qubit 1."""
    if not bitstring or any(c not in "01" for c in bitstring):
        raise ValueError(f"not a bit pattern: {bitstring!r}")
    v = np.zeros(2 ** len(bitstring), dtype=complex)
    v[int(bitstring, 2)] = 1.0
    return v


def qubit_count(dim: int) -> int:
    """Number of qubits for a dimension that must be a power of two."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def partial_trace(rho: np.ndarray, keep: tuple[int, ...] | list[int]) -> np.ndarray:
    """Reduced density matrix over the kept qubits (1-based indices).

    Kept qubits stay in their original relative order; the trace is
    preserved.  ``keep`` must be nonempty with valid, distinct indices.
    """
    rho = np.asarray(rho)
    n = qubit_count(rho.shape[0])
    keep = sorted(set(int(q) for q in keep))
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if keep[0] < 1 or keep[-1] > n:
        raise ValueError(f"keep indices {keep} out of range for {n} qubits")
    # One subscript letter per (row, col) axis of the qubit tensor; traced
    # qubits share a letter between row and col.
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for q in range(1, n + 1):
        if q not in keep:
            col[q - 1] = row[q - 1]
    out_sub = "".join(row[q - 1] for q in keep) + "".join(col[q - 1] for q in keep)
    sub = "".join(row) + "".join(col) + "->" + out_sub
    d_keep = 2 ** len(keep)
    tensor = rho.reshape((2,) * (2 * n))
    return np.einsum(sub, tensor).reshape(d_keep, d_keep)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """ab - ba, rejecting dimension mismatches."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i·h·t) for Hermitian h, via eigendecomposition.

    h must be Hermitian within 1e-10 entrywise; it is symmetrized before
    diagonalizing so the result is unitary to machine precision.
    """
    h = np.asarray(h, dtype=complex)
    dev = np.abs(h - h.conj().T).max()
    if dev > 1e-10:
        raise ValueError(f"operator is not Hermitian (deviation {dev:.3e})")
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def density_matrix_deviations(rho: np.ndarray) -> tuple[float, float, float]:
    """(hermiticity deviation, trace deviation, minimum eigenvalue) of rho."""
    rho = np.asarray(rho)
    herm = float(np.abs(rho - rho.conj().T).max())
    trace = float(abs(np.trace(rho) - 1.0))
    eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    return herm, trace, float(eigs[0])


def assert_density_matrix(
    rho: np.ndarray,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-9,
    eig_floor: float = -1e-8,
) -> None:
    """Raise ValueError unless rho is Hermitian, unit-trace, and numerically PSD."""
    herm, trace, min_eig = density_matrix_deviations(rho)
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: deviation {herm:.3e} > {herm_tol:.0e}")
    if trace > trace_tol:
        raise ValueError(f"trace deviates from 1 by {trace:.3e} > {trace_tol:.0e}")
    if min_eig < eig_floor:
        raise ValueError(f"negative eigenvalue {min_eig:.3e} below {eig_floor:.0e}")
