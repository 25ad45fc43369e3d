"""Resource metrics: phase count, phase depth, schedules and reports.

Phase depth counts the cycles needed to run the phase gates.  By default
Clifford gates (H, X, CNOT) are treated as free: they carry dependencies
between lines but do not open a new cycle, so a phase gate's cycle is one
more than the latest phase cycle reachable along its dependency path.  Pass
``clifford_latency=1`` to instead count the unit-time ASAP moments that hold
at least one phase gate.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field

from .core import Circuit, Gate, GateKind


def _counted(g: Gate, min_m: int) -> bool:
    return g.is_phase and not g.phase.is_zero and g.phase.log2den >= min_m


def phase_count(circuit: Circuit, min_m: int = 1) -> int:
    """Number of Z-phase gates with ``log2den >= min_m`` (Pauli Z never counts)."""
    min_m = max(min_m, 1)
    return sum(1 for g in circuit.gates if _counted(g, min_m))


def schedule(circuit: Circuit) -> list[list[Gate]]:
    """Unit-latency ASAP moments; no two gates in a moment share a qubit."""
    level = [0] * circuit.num_qubits
    moments: list[list[Gate]] = []
    for g in circuit.gates:
        m = max(level[q] for q in g.qubits)
        for q in g.qubits:
            level[q] = m + 1
        if m == len(moments):
            moments.append([])
        moments[m].append(g)
    return moments


def total_depth(circuit: Circuit) -> int:
    return len(schedule(circuit))


def phase_depth(circuit: Circuit, min_m: int = 1, clifford_latency: int = 0) -> int:
    """Number of phase cycles on the emitted gate order.

    With ``clifford_latency=0`` (default) only counted phase gates advance a
    line's cycle; every gate still waits for all lines it touches.  With
    ``clifford_latency=1`` this is the number of unit-latency moments that
    contain a counted phase gate.
    """
    min_m = max(min_m, 1)
    if clifford_latency:
        return sum(1 for mom in schedule(circuit) if any(_counted(g, min_m) for g in mom))
    level = [0] * circuit.num_qubits
    for g in circuit.gates:
        m = max(level[q] for q in g.qubits) + (1 if _counted(g, min_m) else 0)
        for q in g.qubits:
            level[q] = m
    return max(level, default=0)


def distillation_inputs(m: int, levels: int) -> int:
    """Magic states consumed per distilled ``Z_N`` state, ``N = 2**m``: ``(4N-1)**levels``."""
    if m < 1 or levels < 1:
        raise ValueError("m and levels must both be at least 1")
    return (4 * (1 << m) - 1) ** levels


def gate_histogram(circuit: Circuit) -> dict[str, int]:
    hist = Counter()
    for g in circuit.gates:
        if g.is_phase:
            hist[f"Z_{1 << g.phase.log2den}"] += 1
        else:
            hist[g.kind.value] += 1
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class ResourceReport:
    phase_count: int
    phase_depth: int
    total_depth: int
    qubits: int
    ancillas: int
    histogram: dict = field(default_factory=dict)
    max_phase_m: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def report(circuit: Circuit, min_m: int = 1) -> ResourceReport:
    phases = [g.phase.log2den for g in circuit.gates if g.is_phase and not g.phase.is_zero]
    return ResourceReport(
        phase_count=phase_count(circuit, min_m),
        phase_depth=phase_depth(circuit, min_m),
        total_depth=total_depth(circuit),
        qubits=circuit.num_qubits,
        ancillas=circuit.ancillas,
        histogram=gate_histogram(circuit),
        max_phase_m=max(phases, default=0),
    )


# Closed-form targets for the ancilla-free construction ---------------------

def reference_phase_count(n: int) -> int:
    """Quoted phase count of the linear-depth n-MCT construction (n >= 4)."""
    return 2 * n * n + n - 16


def reference_phase_depth(n: int) -> int:
    """Quoted phase depth: 7 for n=4, 13 for n=5, 4n-6 beyond."""
    return {4: 7, 5: 13}.get(n, 4 * n - 6)


def compare_to_reference(measured: int, reference: int, strict: bool) -> tuple[bool, str]:
    """Return ``(ok, status)``: status is "match", "better than reference" or "worse".

    Strict mode accepts only equality; bounded mode accepts ``<=``.
    """
    if measured == reference:
        return True, "match"
    if measured < reference:
        return (not strict), "better than reference"
    return False, "worse than reference"
