"""Markovian master-equation construction and fixed-step RK4 integration.

The generator is  drho/dt = -i*kappa*[H, rho] + sum_i rate_i * D[A_i]rho
with the dissipator  D[A]rho = A rho A† - (A†A rho + rho A†A)/2.

Two equivalent evaluation routes are provided: the structured right-hand
side used by :func:`integrate`, and the exact vectorized superoperator from
:func:`liouvillian_matrix` kept as an independent cross-check oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .operators import assert_density_matrix, qubit_count

#: Hard ceiling on the vectorized superoperator size (d^2 <= 4096).
LIOUVILLIAN_DIM_LIMIT = 4096

#: Integrations with d^2 at or below this size run in vectorized form, where
#: per-step overhead is lower; both routes apply the same RK4 polynomial.
_VEC_PATH_MAX_DIM = 8

#: Divergence thresholds checked at every output point.
_TRACE_DIVERGENCE = 1e-6
_NEGATIVITY_DIVERGENCE = -1e-6


class IntegrationDivergedError(RuntimeError):
    """Trace or positivity left the allowed band during integration."""


class DimensionGuardError(ValueError):
    """A dense superoperator would exceed the configured memory guard."""


@dataclass(frozen=True)
class DissipatorTerm:
    """One (rate, jump operator) pair of the dissipative sum."""

    rate: float
    jump: np.ndarray

    def __post_init__(self) -> None:
        if self.rate < 0:
            raise ValueError(f"dissipator rate must be >= 0, got {self.rate}")
        j = np.asarray(self.jump)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise ValueError(f"jump operator must be square, got shape {j.shape}")


@dataclass(frozen=True)
class MasterEquationSpec:
    """Hamiltonian with strength plus a list of dissipator terms.

    ``hamiltonian`` may be None for purely dissipative dynamics.  All
    operators must share one dimension.
    """

    hamiltonian: np.ndarray | None
    ham_strength: float
    dissipators: tuple[DissipatorTerm, ...]

    def __post_init__(self) -> None:
        dims = []
        if self.hamiltonian is not None:
            h = np.asarray(self.hamiltonian)
            if h.ndim != 2 or h.shape[0] != h.shape[1]:
                raise ValueError(f"hamiltonian must be square, got shape {h.shape}")
            dims.append(h.shape[0])
        dims.extend(t.jump.shape[0] for t in self.dissipators)
        if not dims:
            raise ValueError("spec needs a hamiltonian or at least one dissipator")
        if len(set(dims)) != 1:
            raise ValueError(f"operators disagree on dimension: {sorted(set(dims))}")
        object.__setattr__(self, "dissipators", tuple(self.dissipators))

    @property
    def dim(self) -> int:
        if self.hamiltonian is not None:
            return self.hamiltonian.shape[0]
        return self.dissipators[0].jump.shape[0]

    @property
    def n_qubits(self) -> int:
        return qubit_count(self.dim)


class IntegrationDiagnostics(NamedTuple):
    """Worst-case conservation numbers observed at the output points."""

    max_trace_deviation: float
    max_hermiticity_deviation: float
    min_eigenvalue: float


@dataclass(frozen=True)
class TrajectoryRecord:
    """Output of :func:`integrate`.

    ``values`` holds the recorder outputs when a recorder was supplied,
    otherwise ``states`` holds full density-matrix snapshots.  ``step`` is
    the largest internal RK4 step actually used.
    """

    times: np.ndarray
    states: list[np.ndarray] | None
    values: np.ndarray | None
    step: float
    diagnostics: IntegrationDiagnostics

    @property
    def final_state(self) -> np.ndarray:
        if self.states is None:
            raise ValueError("trajectory was recorded through an observable only")
        return self.states[-1]


def dissipator(a: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """A rho A† - (A†A rho + rho A†A)/2; traceless for any a, rho."""
    a = np.asarray(a, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if a.shape != rho.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {rho.shape}")
    aa = a.conj().T @ a
    return a @ rho @ a.conj().T - 0.5 * (aa @ rho + rho @ aa)


def rhs(spec: MasterEquationSpec, rho: np.ndarray) -> np.ndarray:
    """Plain term-by-term evaluation of the generator on rho."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (spec.dim, spec.dim):
        raise ValueError(f"state shape {rho.shape} does not match dimension {spec.dim}")
    out = np.zeros_like(rho)
    if spec.hamiltonian is not None:
        h = spec.hamiltonian
        out += -1j * spec.ham_strength * (h @ rho - rho @ h)
    for term in spec.dissipators:
        out += term.rate * dissipator(term.jump, rho)
    return out


def liouvillian_matrix(spec: MasterEquationSpec) -> np.ndarray:
    """Dense superoperator L with vec(rhs(rho)) = L @ vec(rho).

    Column-stacking convention (vec = flatten in Fortran order):
    L = -i*kappa*(I⊗H - Hᵀ⊗I) + sum_i rate_i*(conj(A)⊗A - I⊗A†A/2 - (A†A)ᵀ⊗I/2).
    Guarded to d^2 <= 4096.
    """
    d = spec.dim
    if d * d > LIOUVILLIAN_DIM_LIMIT:
        raise DimensionGuardError(
            f"superoperator would be {d * d}x{d * d}; limit is "
            f"{LIOUVILLIAN_DIM_LIMIT}x{LIOUVILLIAN_DIM_LIMIT}"
        )
    eye = np.eye(d)
    L = np.zeros((d * d, d * d), dtype=complex)
    if spec.hamiltonian is not None:
        h = np.asarray(spec.hamiltonian, dtype=complex)
        L += -1j * spec.ham_strength * (np.kron(eye, h) - np.kron(h.T, eye))
    for term in spec.dissipators:
        a = np.asarray(term.jump, dtype=complex)
        aa = a.conj().T @ a
        L += term.rate * (
            np.kron(a.conj(), a) - 0.5 * np.kron(eye, aa) - 0.5 * np.kron(aa.T, eye)
        )
    return L


def default_step(spec: MasterEquationSpec) -> float:
    """Default RK4 step: min(0.1 / fastest rate, 1e-3).

    The fastest rate is the largest of the Hamiltonian strength, all
    dissipator rates, and 1 (so weak dynamics still resolve unit time).
    """
    fastest = max([abs(spec.ham_strength)] + [t.rate for t in spec.dissipators] + [1.0])
    return min(0.1 / fastest, 1e-3)


def _hermitian_stepper(spec: MasterEquationSpec) -> Callable[[np.ndarray], np.ndarray]:
    """Right-hand side specialized to Hermitian rho.

    Folding the commutator and the anticommutator halves into
    K = -i*kappa*H - sum_i rate_i*A_i†A_i/2 gives
    rhs(rho) = K rho + (K rho)† + sum_i rate_i * A_i rho A_i†,
    which costs three matrix products per evaluation with the jump sum
    batched into one stacked product.

    Only valid on Hermitian input: replacing rho K† with (K rho)† changes
    the generator on the anti-Hermitian sector, where it can be expanding
    even though the physical generator is contractive.  Callers must keep
    the state exactly Hermitian between steps or last-bit rounding seeds
    that sector and snowballs.
    """
    d = spec.dim
    K = np.zeros((d, d), dtype=complex)
    if spec.hamiltonian is not None:
        K += -1j * spec.ham_strength * np.asarray(spec.hamiltonian, dtype=complex)
    for term in spec.dissipators:
        a = np.asarray(term.jump, dtype=complex)
        K -= 0.5 * term.rate * (a.conj().T @ a)
    if not spec.dissipators:
        def rhs_h(rho: np.ndarray) -> np.ndarray:
            acc = K @ rho
            return acc + acc.conj().T

        return rhs_h

    scaled = [np.sqrt(t.rate) * np.asarray(t.jump, dtype=complex) for t in spec.dissipators]
    m = len(scaled)
    stacked = np.ascontiguousarray(np.concatenate(scaled, axis=0))            # (m*d, d)
    right = np.ascontiguousarray(np.concatenate([a.conj().T for a in scaled]))  # (m*d, d)

    def rhs_h(rho: np.ndarray) -> np.ndarray:
        acc = K @ rho
        acc += acc.conj().T
        t = (stacked @ rho).reshape(m, d, d)
        acc += t.transpose(1, 0, 2).reshape(d, m * d) @ right
        return acc

    return rhs_h


def integrate(
    spec: MasterEquationSpec,
    rho0: np.ndarray,
    t_final: float,
    recorder: Callable[[float, np.ndarray], float] | None = None,
    step_hint: float | None = None,
    n_points: int = 1000,
) -> TrajectoryRecord:
    """Fixed-step 4th-order Runge-Kutta evolution of the master equation.

    Observables (or full states when ``recorder`` is None) are sampled on a
    uniform grid of ``n_points`` output times from 0 to ``t_final``
    inclusive.  Each output interval is subdivided so the internal step
    never exceeds the default (or ``step_hint``) and output times are hit
    exactly — no interpolation.  The state is never renormalized; trace
    drift beyond 1e-6 or negativity beyond -1e-6 raises
    :class:`IntegrationDivergedError`.
    """
    if t_final <= 0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    if n_points < 2:
        raise ValueError("need at least two output points")
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (spec.dim, spec.dim):
        raise ValueError(f"rho0 shape {rho0.shape} does not match dimension {spec.dim}")
    assert_density_matrix(rho0)

    dt = float(step_hint) if step_hint is not None else default_step(spec)
    if dt <= 0:
        raise ValueError(f"step must be positive, got {dt}")

    times = np.linspace(0.0, t_final, n_points)
    seg = times[1] - times[0]
    n_sub = max(1, math.ceil(seg / dt - 1e-12))
    h = seg / n_sub

    d = spec.dim
    use_vec = d <= _VEC_PATH_MAX_DIM
    if use_vec:
        L = liouvillian_matrix(spec)
        state = rho0.flatten(order="F")

        def step_once(v: np.ndarray) -> np.ndarray:
            k1 = L @ v
            k2 = L @ (v + (0.5 * h) * k1)
            k3 = L @ (v + (0.5 * h) * k2)
            k4 = L @ (v + h * k3)
            return v + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)

        def as_matrix(v: np.ndarray) -> np.ndarray:
            return v.reshape(d, d, order="F")

    else:
        rhs_h = _hermitian_stepper(spec)
        state = rho0.copy()

        def step_once(r: np.ndarray) -> np.ndarray:
            k1 = rhs_h(r)
            k2 = rhs_h(r + (0.5 * h) * k1)
            k3 = rhs_h(r + (0.5 * h) * k2)
            k4 = rhs_h(r + h * k3)
            out = r + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
            # Project back onto Hermitian matrices: the specialized RHS is
            # only the physical generator there, and rounding otherwise
            # feeds an anti-Hermitian component it can amplify.
            return 0.5 * (out + out.conj().T)

        def as_matrix(r: np.ndarray) -> np.ndarray:
            return r

    states: list[np.ndarray] | None = None if recorder else []
    values: list[float] = []
    max_trace = 0.0
    max_herm = 0.0
    min_eig = np.inf

    def take_output(t: float, current) -> None:
        nonlocal max_trace, max_herm, min_eig
        rho = as_matrix(current)
        trace_dev = abs(np.trace(rho) - 1.0)
        herm_dev = np.abs(rho - rho.conj().T).max()
        eig_min = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
        max_trace = max(max_trace, trace_dev)
        max_herm = max(max_herm, herm_dev)
        min_eig = min(min_eig, eig_min)
        if trace_dev > _TRACE_DIVERGENCE or eig_min < _NEGATIVITY_DIVERGENCE:
            raise IntegrationDivergedError(
                f"state left the density-matrix band at t={t:.6g} "
                f"(trace deviation {trace_dev:.3e}, min eigenvalue {eig_min:.3e}); "
                f"retry with a smaller step_hint"
            )
        if recorder is not None:
            values.append(recorder(t, rho))
        else:
            states.append(rho.copy())

    take_output(0.0, state)
    for t in times[1:]:
        for _ in range(n_sub):
            state = step_once(state)
        take_output(float(t), state)

    return TrajectoryRecord(
        times=times,
        states=states,
        values=np.asarray(values) if recorder is not None else None,
        step=h,
        diagnostics=IntegrationDiagnostics(
            max_trace_deviation=float(max_trace),
            max_hermiticity_deviation=float(max_herm),
            min_eigenvalue=float(min_eig),
        ),
    )
