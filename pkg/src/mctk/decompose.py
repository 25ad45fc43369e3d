"""Ancilla-free lowering of multi-controlled Toffoli gates.

The chain of passes is

    MCT  ->  H . MCZ . H                               (mcz level)
    MCZ  ->  phase ladder + cascade of smaller MCTs     (ladder level)
    MCTs ->  controlled phases, CNOT and H              (two_qubit level)
    CP   ->  H, CNOT and single-qubit Z phases          (transversal level)

Wire layout for ``n`` qubits: controls ``c_1..c_{n-1}`` are lines
``0..n-2`` and the target is line ``n-1``.

Ladder.  For MCZ on lines ``0..k-1`` (shared line ``t = k-1``) the positive
ladder puts ``Z_{2^(k-1-j)}`` controlled by line ``j`` on ``t`` for
``j = k-2..1`` and an extra copy of the finest phase from line ``0``; its
phases telescope to ``Z`` on the all-ones input.  A cascade of smaller MCTs
then writes ``c_j ^= c_1...c_{j-1}`` for ``j = k-1..2``, the negative ladder
removes the cross terms, and the cascade is undone.

Lowering the cascade.  Each cascade step is itself an MCT in the same form.
The uncompute half of one step cancels exactly against the compute half of
the next, so the cascade on ``k`` lines lowers to

    cascade(k) = H_k . ladder+(k) . cascade(k-1) . ladder-(k) . H_k

with ``cascade(2)`` a single CNOT.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Circuit,
    CircuitError,
    Gate,
    GateKind,
    PhaseExponent,
    cnot,
    cphase,
    h,
    mct,
    mcz,
    phase_gate,
)

LEVELS = ("mcz", "ladder", "two_qubit", "transversal")


@dataclass(frozen=True)
class DecompositionConfig:
    """Where to stop lowering, and whether to run the optimizer afterwards.

    ``layout`` picks how runs of controlled phases sharing a line are turned
    into CNOT boxes: ``"mirrored"`` (default) or ``"fanout"``.
    """

    target_level: str = "transversal"
    apply_optimizer: bool = False
    layout: str = "mirrored"

    def __post_init__(self):
        if self.target_level not in LEVELS:
            raise ValueError(f"target_level must be one of {LEVELS}")
        if self.layout not in ("mirrored", "fanout"):
            raise ValueError("layout must be 'mirrored' or 'fanout'")


def _require_multi(gate: Gate, kind: GateKind) -> None:
    if gate.kind is not kind:
        raise CircuitError(f"expected {kind.value}, got {gate.kind.value}")
    if len(gate.qubits) < 3:
        raise CircuitError("need n >= 3")


def _width(gate: Gate) -> int:
    return max(gate.qubits) + 1


def mct_to_mcz(gate: Gate, num_qubits: int | None = None) -> Circuit:
    """``MCT = H_t . MCZ . H_t``."""
    _require_multi(gate, GateKind.MCT)
    n = num_qubits or _width(gate)
    t = gate.target
    return Circuit(n, (h(t), mcz(gate.controls, t), h(t)))


def _ladder_pos(lines: Sequence[int]) -> list[Gate]:
    """Positive ladder on ``lines[-1]`` controlled by ``lines[:-1]``."""
    k = len(lines)
    t = lines[-1]
    out = [cphase(lines[j], t, PhaseExponent(1, k - 1 - j)) for j in range(k - 2, 0, -1)]
    out.append(cphase(lines[0], t, PhaseExponent(1, k - 2)))
    return out


def _ladder_neg(lines: Sequence[int]) -> list[Gate]:
    """Negative ladder: undoes the cross terms once the cascade has run."""
    k = len(lines)
    t = lines[-1]
    return [cphase(lines[j], t, PhaseExponent(-1, k - 1 - j)) for j in range(k - 2, 0, -1)]


def _cascade_macros(lines: Sequence[int]) -> list[Gate]:
    """``lines[j] ^= AND(lines[:j])`` for ``j = len-1 .. 1`` as MCT/CNOT macros."""
    out = []
    for j in range(len(lines) - 1, 0, -1):
        if j == 1:
            out.append(cnot(lines[0], lines[1]))
        else:
            out.append(mct(lines[:j], lines[j]))
    return out


def mcz_ladder(gate: Gate, num_qubits: int | None = None) -> Circuit:
    """One recursion step: MCZ as controlled phases plus smaller MCT macros."""
    _require_multi(gate, GateKind.MCZ)
    n = num_qubits or _width(gate)
    lines = list(gate.controls) + [gate.target]
    controls = lines[:-1]
    cascade = _cascade_macros(controls)
    gates = _ladder_pos(lines) + cascade + _ladder_neg(lines) + list(reversed(cascade))
    return Circuit(n, tuple(gates))


def _cascade_lowered(lines: Sequence[int]) -> list[Gate]:
    k = len(lines)
    if k < 2:
        return []
    if k == 2:
        return [cnot(lines[0], lines[1])]
    t = lines[-1]
    return [h(t), *_ladder_pos(lines), *_cascade_lowered(lines[:-1]), *_ladder_neg(lines), h(t)]


def mcz_two_qubit(gate: Gate, num_qubits: int | None = None) -> Circuit:
    """MCZ fully recursed to controlled phases, CNOT and H."""
    _require_multi(gate, GateKind.MCZ)
    n = num_qubits or _width(gate)
    lines = list(gate.controls) + [gate.target]
    cascade = _cascade_lowered(lines[:-1])
    inv = [g.adjoint() for g in reversed(cascade)]
    gates = _ladder_pos(lines) + cascade + _ladder_neg(lines) + inv
    return Circuit(n, tuple(gates))


def cphase_transversal(gate: Gate, num_qubits: int | None = None) -> Circuit:
    """``C(Z(p)) = Z(p/2)_c Z(p/2)_t . CNOT . Z(-p/2)_t . CNOT`` (exact, no global phase)."""
    if gate.kind is not GateKind.CPHASE:
        raise CircuitError("expected CPHASE")
    n = num_qubits or _width(gate)
    c, t = gate.controls[0], gate.target
    half = gate.phase.halve()
    return Circuit(n, (
        phase_gate(c, half),
        phase_gate(t, half),
        cnot(c, t),
        phase_gate(t, -half),
        cnot(c, t),
    ))


# Grouped lowering --------------------------------------------------------

def _phase_runs(gates: Sequence[Gate]) -> list:
    """Split into plain gates and maximal runs of CPHASE sharing one target."""
    items = []
    i = 0
    while i < len(gates):
        g = gates[i]
        if g.kind is not GateKind.CPHASE:
            items.append(g)
            i += 1
            continue
        run = []
        while i < len(gates) and gates[i].kind is GateKind.CPHASE and gates[i].target == g.target:
            run.append(gates[i])
            i += 1
        items.append(run)
    return items


def _hub_index(run: Sequence[Gate], layout: str) -> int:
    """Which member routes its control into the shared line (-1: none).

    Positive runs fan out from the shared line.  In the mirrored layout a
    negative run instead lets the control carrying its coarsest phase xor
    into the shared line (ties go to the highest line), so the compute and
    uncompute halves of each cascade level get aligned phase layers.
    """
    if layout == "fanout" or run[0].phase.num > 0:
        return -1
    best = max(range(len(run)), key=lambda i: (-run[i].phase.log2den, run[i].controls[0]))
    return best


def lower_phase_run(run: Sequence[Gate], hub: int = -1) -> list[Gate]:
    """Lower controlled phases sharing a target with one CNOT box.

    Each controlled phase contributes ``p/2`` on both of its lines and
    ``-p/2`` on their parity.  The parities are formed by CNOTs from a hub
    line: the shared target for every member except ``hub``, whose own
    control xors into the shared target last.  Single-line phases on lines
    that receive a CNOT are emitted before the box; those on hub lines sit
    inside it.
    """
    t = run[0].target
    pairs = []  # (source, receiver, phase)
    for i, g in enumerate(run):
        c = g.controls[0]
        pairs.append((c, t, g.phase) if i == hub else (t, c, g.phase))
    if hub >= 0:
        pairs.append(pairs.pop(hub))
    receivers = {r for _, r, _ in pairs}
    singles: dict[int, PhaseExponent] = {}
    for g in run:
        half = g.phase.halve()
        for q in (g.controls[0], t):
            singles[q] = singles[q] + half if q in singles else half
    out = [phase_gate(q, p) for q, p in singles.items() if q in receivers and not p.is_zero]
    out += [cnot(src, r) for src, r, _ in pairs]
    out += [phase_gate(r, -p.halve()) for _, r, p in pairs]
    out += [phase_gate(q, p) for q, p in singles.items() if q not in receivers and not p.is_zero]
    out += [cnot(src, r) for src, r, _ in reversed(pairs)]
    return out


def lower_controlled_phases(circuit: Circuit, layout: str = "mirrored") -> Circuit:
    """Replace every CPHASE by single-qubit phases and CNOTs."""
    out: list[Gate] = []
    for item in _phase_runs(circuit.gates):
        if isinstance(item, Gate):
            out.append(item)
        else:
            out.extend(lower_phase_run(item, _hub_index(item, layout)))
    return circuit.with_gates(out)


def decompose_full(gate: Gate, config: DecompositionConfig | None = None,
                   num_qubits: int | None = None) -> Circuit:
    """Lower an MCT gate down to ``config.target_level``."""
    config = config or DecompositionConfig()
    _require_multi(gate, GateKind.MCT)
    n = num_qubits or _width(gate)
    t = gate.target
    mcz_gate = mcz(gate.controls, t)
    if config.target_level == "mcz":
        circ = mct_to_mcz(gate, n)
    elif config.target_level == "ladder":
        circ = Circuit(n, (h(t), *mcz_ladder(mcz_gate, n).gates, h(t)))
    else:
        circ = Circuit(n, (h(t), *mcz_two_qubit(mcz_gate, n).gates, h(t)))
        if config.target_level == "transversal":
            circ = lower_controlled_phases(circ, config.layout)
    if config.apply_optimizer:
        from .optimize import optimize_fixpoint
        circ = optimize_fixpoint(circ)
    return circ


def linear_mct(n: int, optimize: bool = True, level: str = "transversal",
               layout: str = "mirrored") -> Circuit:
    """Decompose the ``n``-qubit MCT (controls ``0..n-2``, target ``n-1``)."""
    if n < 3:
        raise CircuitError("n must be at least 3")
    cfg = DecompositionConfig(level, optimize, layout)
    return decompose_full(mct(range(n - 1), n - 1), cfg, n)


def expand_macros(circuit: Circuit) -> Circuit:
    """Lower any MCT/MCZ macros in ``circuit`` to the transversal gate set."""
    out: list[Gate] = []
    n = circuit.num_qubits
    for g in circuit.gates:
        if g.kind is GateKind.MCT and len(g.controls) >= 2:
            out.extend(decompose_full(g, DecompositionConfig(), n).gates)
        elif g.kind is GateKind.MCZ:
            t = g.target
            inner = decompose_full(mct(g.controls, t), DecompositionConfig(), n).gates
            out.extend((h(t), *inner, h(t)))
        elif g.kind is GateKind.CPHASE:
            out.extend(cphase_transversal(g, n).gates)
        else:
            out.append(g)
    return circuit.with_gates(out)


__all__: Iterable[str] = [
    "DecompositionConfig", "LEVELS", "mct_to_mcz", "mcz_ladder", "mcz_two_qubit",
    "cphase_transversal", "lower_phase_run", "lower_controlled_phases",
    "decompose_full", "linear_mct", "expand_macros",
]
