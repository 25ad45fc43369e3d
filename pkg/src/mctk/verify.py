"""Equivalence checks of a circuit against the n-qubit MCT.

Three oracles: the dense unitary, per-input statevector simulation with
ancilla restoration, and the symbolic phase polynomial of parity circuits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Circuit, CircuitError, GateKind, PhaseExponent, phase_add
from .parity import verify_phase_polynomial
from .sim import DEFAULT_UNITARY_CAP, circuit_unitary, simulate

TOL = 1e-10
STATEVECTOR_CAP = 22
METHODS = ("auto", "unitary", "statevector", "phase_poly")


@dataclass
class VerificationOutcome:
    method: str
    passed: bool
    max_error: float
    global_phase: complex = 1 + 0j
    details: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "passed": self.passed,
            "max_error": self.max_error,
            "global_phase": [self.global_phase.real, self.global_phase.imag],
            "details": self.details,
        }


def _embed(n: int, width: int, x: int) -> int:
    # logical bits sit on the top n lines, ancillas below are zero
    return x << (width - n)


def _mct_image(n: int, x: int) -> int:
    return x ^ 1 if x >> 1 == (1 << (n - 1)) - 1 else x


def _check_columns(cols: np.ndarray, n: int, width: int, inputs, require_unit_phase: bool,
                   method: str) -> VerificationOutcome:
    """``cols[:, i]`` is the output for logical basis input ``inputs[i]``."""
    expected = np.zeros_like(cols)
    for i, x in enumerate(inputs):
        expected[_embed(n, width, _mct_image(n, x)), i] = 1.0
    # global phase from the first input's expected amplitude
    ref = cols[_embed(n, width, _mct_image(n, inputs[0])), 0]
    lam = ref / abs(ref) if abs(ref) > 0.5 else 1 + 0j
    if require_unit_phase:
        lam = 1 + 0j
    diff = np.abs(cols - lam * expected)
    per_input = diff.max(axis=0)
    err = float(per_input.max()) if per_input.size else 0.0
    details = [
        {"input": format(x, f"0{n}b"), "error": float(e)}
        for x, e in zip(inputs, per_input) if e > TOL
    ]
    return VerificationOutcome(method, err <= TOL, err, complex(lam), details)


def _check_shape(circuit: Circuit, n: int) -> None:
    if circuit.ancilla_start != n:
        raise CircuitError(
            f"circuit has {circuit.ancilla_start} logical lines, expected {n}"
        )


def verify_unitary(circuit: Circuit, n: int, require_unit_phase: bool = False) -> VerificationOutcome:
    _check_shape(circuit, n)
    width = circuit.num_qubits
    u = circuit_unitary(circuit)
    inputs = list(range(1 << n))
    cols = u[:, [_embed(n, width, x) for x in inputs]]
    return _check_columns(cols, n, width, inputs, require_unit_phase, "unitary")


def verify_statevector(circuit: Circuit, n: int, require_unit_phase: bool = False,
                       superposition: bool = True) -> VerificationOutcome:
    """Simulate every logical basis input (ancillas |0>) one at a time.

    With ``superposition`` the uniform superposition over logical inputs is
    also checked against the MCT image, using the phase found on basis inputs.
    """
    _check_shape(circuit, n)
    width = circuit.num_qubits
    if width > STATEVECTOR_CAP:
        raise CircuitError(f"{width} qubits exceeds the statevector cap {STATEVECTOR_CAP}")
    dim = 1 << width
    inputs = list(range(1 << n))
    cols = np.empty((dim, len(inputs)), dtype=complex)
    for i, x in enumerate(inputs):
        psi = np.zeros(dim, dtype=complex)
        psi[_embed(n, width, x)] = 1.0
        cols[:, i] = simulate(circuit, psi)
    out = _check_columns(cols, n, width, inputs, require_unit_phase, "statevector")
    if superposition:
        psi = np.zeros(dim, dtype=complex)
        want = np.zeros(dim, dtype=complex)
        amp = 1 / np.sqrt(len(inputs))
        for x in inputs:
            psi[_embed(n, width, x)] = amp
            want[_embed(n, width, _mct_image(n, x))] = amp
        got = simulate(circuit, psi)
        err = float(np.max(np.abs(got - out.global_phase * want)))
        if err > TOL:
            out.details.append({"input": "uniform", "error": err})
            out.passed = False
        out.max_error = max(out.max_error, err)
    return out


def verify_phase_poly(circuit: Circuit, n: int) -> VerificationOutcome:
    _check_shape(circuit, n)
    ok, details = verify_phase_polynomial(circuit, n)
    return VerificationOutcome("phase_poly", ok, 0.0 if ok else 1.0, 1 + 0j,
                               [details] if details else [])


def verify_against_mct(circuit: Circuit, n: int, method: str = "auto",
                       require_unit_phase: bool = False) -> VerificationOutcome:
    """Check ``circuit`` implements the n-qubit MCT on its logical lines.

    ``auto`` uses the dense unitary up to 12 qubits, the statevector up to
    22, and the phase polynomial beyond that.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if method == "auto":
        w = circuit.num_qubits
        method = "unitary" if w <= DEFAULT_UNITARY_CAP else "statevector" if w <= STATEVECTOR_CAP else "phase_poly"
    if method == "unitary":
        return verify_unitary(circuit, n, require_unit_phase)
    if method == "statevector":
        return verify_statevector(circuit, n, require_unit_phase)
    return verify_phase_poly(circuit, n)


def ladder_exponents(n: int) -> list[PhaseExponent]:
    """Target-line ladder ``Z_2, Z_4, ..., Z_{2^(n-2)}, Z_{2^(n-2)}`` of the n-MCZ."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return [PhaseExponent(1, i) for i in range(1, n - 1)] + [PhaseExponent(1, n - 2)]


def case3_phase_product(n: int) -> PhaseExponent:
    """Fold the ladder exponents exactly; the result is Pauli Z for every n."""
    acc = PhaseExponent(0, 0)
    for p in ladder_exponents(n):
        acc = phase_add(acc, p)
    return acc


def single_gate_mutations(circuit: Circuit) -> list[tuple[str, Circuit]]:
    """Every single-gate deletion, plus a sign flip of each phase that changes.

    Flipping ``Z`` (``m = 0``) gives the same gate, so those are skipped.
    """
    gates = list(circuit.gates)
    out = []
    for i, g in enumerate(gates):
        out.append((f"delete {i}:{g}", circuit.with_gates(gates[:i] + gates[i + 1:])))
        if g.kind in (GateKind.ZPHASE, GateKind.CPHASE) and g.phase.log2den >= 1:
            flipped = g.adjoint()
            out.append((f"flip {i}:{g}", circuit.with_gates(gates[:i] + [flipped] + gates[i + 1:])))
    return out


def sample_mutations(circuit: Circuit, k: int, seed: int = 0) -> list[tuple[str, Circuit]]:
    """``k`` mutations drawn with a seeded RNG (with replacement if fewer exist)."""
    import random

    pool = single_gate_mutations(circuit)
    rng = random.Random(seed)
    return rng.sample(pool, k) if len(pool) >= k else rng.choices(pool, k=k)
