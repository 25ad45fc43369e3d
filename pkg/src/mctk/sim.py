"""Dense statevector and unitary semantics.

Gates act locally on a ``(2,)*n`` view of the amplitudes, so no Kronecker
products are ever formed.  The same kernels apply a gate to a batch of
columns, which is how ``circuit_unitary`` is built.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

from .core import Circuit, Gate, GateKind

DEFAULT_UNITARY_CAP = 12

_SQRT_HALF = 1 / math.sqrt(2)


class WidthError(ValueError):
    """Circuit too wide for the requested dense representation."""


def _apply_inplace(psi: np.ndarray, gate: Gate) -> None:
    """Apply ``gate`` to ``psi`` of shape ``(2,)*n + (batch,)``, in place."""
    kind = gate.kind
    full = slice(None)

    def sel(fixed: dict) -> tuple:
        idx = [full] * psi.ndim
        for q, v in fixed.items():
            idx[q] = v
        return tuple(idx)

    if kind is GateKind.H:
        a = psi[sel({gate.target: 0})].copy()
        b = psi[sel({gate.target: 1})]
        psi[sel({gate.target: 0})] = (a + b) * _SQRT_HALF
        psi[sel({gate.target: 1})] = (a - b) * _SQRT_HALF
    elif kind is GateKind.ZPHASE:
        psi[sel({gate.target: 1})] *= cmath.exp(1j * gate.phase.angle)
    elif kind is GateKind.CPHASE:
        psi[sel({gate.controls[0]: 1, gate.target: 1})] *= cmath.exp(1j * gate.phase.angle)
    elif kind is GateKind.MCZ:
        psi[sel({q: 1 for q in gate.qubits})] *= -1
    else:  # X, CNOT, MCT: swap target halves where all controls are set
        on = {c: 1 for c in gate.controls}
        i0 = sel({**on, gate.target: 0})
        i1 = sel({**on, gate.target: 1})
        tmp = psi[i0].copy()
        psi[i0] = psi[i1]
        psi[i1] = tmp


def _check_width(gate: Gate, n: int) -> None:
    for q in gate.qubits:
        if q < 0 or q >= n:
            raise ValueError("qubit out of range")


def _num_qubits(length: int) -> int:
    n = length.bit_length() - 1
    if length < 1 or (1 << n) != length:
        raise ValueError("state length is not a power of two")
    return n


def apply_gate(state: np.ndarray, gate: Gate) -> np.ndarray:
    """Return ``gate|state>``.  Accepts a vector or a ``(2**n, k)`` batch."""
    state = np.asarray(state, dtype=complex)
    n = _num_qubits(state.shape[0])
    _check_width(gate, n)
    batch = state.reshape((2,) * n + (-1,)).copy()
    _apply_inplace(batch, gate)
    return batch.reshape(state.shape)


def simulate(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Run ``circuit`` on a state vector (or a batch of column states)."""
    state = np.asarray(state, dtype=complex)
    n = circuit.num_qubits
    if state.shape[0] != 1 << n:
        raise ValueError("state size does not match circuit width")
    psi = state.reshape((2,) * n + (-1,)).copy()
    for g in circuit.gates:
        _apply_inplace(psi, g)
    return psi.reshape(state.shape)


def basis_state(n: int, index: int) -> np.ndarray:
    v = np.zeros(1 << n, dtype=complex)
    v[index] = 1.0
    return v


def circuit_unitary(circuit: Circuit, cap: int = DEFAULT_UNITARY_CAP) -> np.ndarray:
    """Dense unitary of ``circuit``; later gates multiply on the left."""
    if circuit.num_qubits > cap:
        raise WidthError(
            f"{circuit.num_qubits} qubits is too wide for dense unitary (cap {cap}); "
            "use statevector or phase-polynomial verification"
        )
    dim = 1 << circuit.num_qubits
    return simulate(circuit, np.eye(dim, dtype=complex))


def mct_unitary(n: int) -> np.ndarray:
    """Reference n-qubit MCT (controls 0..n-2, target n-1) as a permutation."""
    dim = 1 << n
    perm = np.arange(dim)
    perm[[dim - 2, dim - 1]] = perm[[dim - 1, dim - 2]]
    return np.eye(dim, dtype=complex)[:, perm]


def mcz_unitary(n: int) -> np.ndarray:
    d = np.ones(1 << n, dtype=complex)
    d[-1] = -1
    return np.diag(d)


def equivalent_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-10):
    """Return ``(ok, lam, err)`` where ``a ~ lam * b`` with max error ``err``.

    ``lam`` is read off the entry of largest magnitude in ``b``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[k]) == 0:
        err = float(np.max(np.abs(a))) if a.size else 0.0
        return err <= tol, 1.0 + 0j, err
    lam = a[k] / b[k]
    if abs(lam) > 0:
        lam = lam / abs(lam)
    err = float(np.max(np.abs(a - lam * b))) if a.size else 0.0
    return err <= tol, complex(lam), err


# Pauli algebra ------------------------------------------------------------

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF


def gate_matrix(gate: Gate) -> np.ndarray:
    """Matrix of ``gate`` on its own qubits, ordered ``controls + (target,)``."""
    k = len(gate.qubits)
    local = Gate(gate.kind, k - 1, tuple(range(k - 1)), gate.phase)
    return circuit_unitary(Circuit(k, (local,)))


def _pauli_strings(k: int):
    mats = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)
    for combo in itertools.product(range(4), repeat=k):
        m = np.array([[1]], dtype=complex)
        for c in combo:
            m = np.kron(m, mats[c])
        yield m


def clifford_check(gate, tol: float = 1e-10) -> bool:
    """True iff conjugating each X/Z generator by ``gate`` lands in the Pauli group.

    ``gate`` is a ``Gate`` or a 2x2 / 4x4 unitary (for gates such as Y that
    the IR has no kind for).
    """
    u = gate_matrix(gate) if isinstance(gate, Gate) else np.asarray(gate, dtype=complex)
    k = int(round(math.log2(u.shape[0])))
    if k > 2:
        raise ValueError("clifford_check supports gates on at most two qubits")
    paulis = list(_pauli_strings(k))
    for q in range(k):
        for p in (PAULI_X, PAULI_Z):
            gen = np.array([[1]], dtype=complex)
            for j in range(k):
                gen = np.kron(gen, p if j == q else PAULI_I)
            img = u.conj().T @ gen @ u
            if not any(
                np.max(np.abs(img - ph * cand)) <= tol
                for cand in paulis
                for ph in (1, -1, 1j, -1j)
            ):
                return False
    return True


def x_root(k: int) -> np.ndarray:
    """Principal k-th root of X from its eigendecomposition."""
    vals, vecs = np.linalg.eigh(PAULI_X)
    roots = np.array([1.0 if v > 0 else cmath.exp(1j * math.pi / k) for v in vals])
    return vecs @ np.diag(roots) @ vecs.conj().T


def z_root(k: int) -> np.ndarray:
    return np.diag([1.0, cmath.exp(1j * math.pi / k)]).astype(complex)


def pauli_identities_check(tol: float = 1e-12) -> bool:
    """Check X.X = Y.Y = Z.Z = I, XYZ = iI, and H.Z_K.H = X^(1/K) for K=2,4,8."""
    ok = all(np.max(np.abs(p @ p - PAULI_I)) <= tol for p in (PAULI_X, PAULI_Y, PAULI_Z))
    ok &= np.max(np.abs(PAULI_X @ PAULI_Y @ PAULI_Z - 1j * PAULI_I)) <= tol
    for k in (2, 4, 8):
        ok &= np.max(np.abs(HADAMARD @ z_root(k) @ HADAMARD - x_root(k))) <= tol
    return bool(ok)
