"""Peephole optimizer: inverse-pair cancellation and phase commutation.

Two rule families run to a fixpoint:

* cancellation removes ``G . G^dagger`` pairs that are adjacent on their
  qubits (gates on other qubits may sit between them) and merges adjacent
  phases on one line;
* commutation moves a phase gate to an earlier point on its own line.  A
  phase may cross a CNOT it controls, and it may cross any stretch of the
  circuit after which its line again carries the same parity of path
  variables.  The second condition covers the classic case of a CNOT pair
  with a common control and target, including pairs that enclose other
  CNOTs and phases, and it is exactly the condition under which a diagonal
  gate commutes through that stretch.

Parities are tracked as bitmasks over path variables: every line starts as
its own variable and each H introduces a fresh one.
"""

from __future__ import annotations

from typing import Optional

from .core import Circuit, Gate, GateKind, ZERO, phase_gate

_SELF_INVERSE = (GateKind.H, GateKind.X, GateKind.CNOT, GateKind.MCT, GateKind.MCZ)
_PHASED = (GateKind.ZPHASE, GateKind.CPHASE)


def _combine(a: Gate, b: Gate):
    """Result of ``a`` followed by ``b`` when they collapse, else None.

    Returns ZERO when the pair is the identity.
    """
    if a.kind is not b.kind or a.qubits != b.qubits:
        if (a.kind is b.kind is GateKind.MCZ) and set(a.qubits) == set(b.qubits):
            return ZERO
        return None
    if a.kind in _SELF_INVERSE:
        return ZERO
    total = a.phase + b.phase
    if total.is_zero:
        return ZERO
    return Gate(a.kind, a.target, a.controls, total)


def cancel_inverse_pairs(circuit: Circuit) -> tuple[Circuit, bool]:
    """Remove inverse pairs and merge phases that meet on the same qubits.

    Uses one stack of live gates per qubit, so cascades such as
    ``CX H H CX`` collapse in a single pass.  Returns ``(circuit, fired)``.
    """
    out: list[Optional[Gate]] = []
    stacks: dict[int, list[int]] = {}
    fired = False
    for g in circuit.gates:
        if g.is_phase and g.phase.is_zero:
            fired = True
            continue
        tops = {stacks[q][-1] if stacks.get(q) else None for q in g.qubits}
        if len(tops) == 1:
            j = tops.pop()
            if j is not None and len(out[j].qubits) == len(g.qubits):
                res = _combine(out[j], g)
                if res is not None:
                    fired = True
                    if res is ZERO:
                        out[j] = None
                        for q in g.qubits:
                            stacks[q].pop()
                    else:
                        out[j] = res
                    continue
        out.append(g)
        for q in g.qubits:
            stacks.setdefault(q, []).append(len(out) - 1)
    return circuit.with_gates(x for x in out if x is not None), fired


def parity_forms(circuit: Circuit) -> list[Optional[int]]:
    """Parity carried by the line of each phase gate (None for other gates)."""
    n = circuit.num_qubits
    forms = [1 << q for q in range(n)]
    fresh = n
    out: list[Optional[int]] = []
    for g in circuit.gates:
        k = g.kind
        out.append(forms[g.target] if k is GateKind.ZPHASE else None)
        if k is GateKind.H:
            forms[g.target] = 1 << fresh
            fresh += 1
        elif k is GateKind.CNOT:
            forms[g.target] ^= forms[g.controls[0]]
        elif k in (GateKind.X, GateKind.ZPHASE, GateKind.CPHASE, GateKind.MCZ):
            pass  # X adds a constant, diagonals leave parities alone
        else:
            # MCT is not linear: give the target a fresh variable
            forms[g.target] = 1 << fresh
            fresh += 1
    return out


def _x_flips(circuit: Circuit) -> list[int]:
    """Affine offsets (X gates) per phase gate; merges require equal offsets."""
    n = circuit.num_qubits
    flips = [0] * n
    out = []
    for g in circuit.gates:
        k = g.kind
        out.append(flips[g.target])
        if k is GateKind.X:
            flips[g.target] ^= 1
        elif k is GateKind.CNOT:
            flips[g.target] ^= flips[g.controls[0]]
        elif k in (GateKind.H, GateKind.MCT):
            flips[g.target] = 0
    return out


def commute_phases(circuit: Circuit, mode: str = "merge") -> tuple[Circuit, bool]:
    """Move phase gates left along their line.

    ``mode="merge"`` moves a phase only when it lands on an earlier phase on
    the same line carrying the same parity, and merges the two.
    ``mode="pack"`` additionally slides every phase as far left as the CNOT
    rules allow without merging.  ``mode="rules"`` only slides (no parity
    merge), leaving merges to the cancellation pass.
    """
    if mode not in ("merge", "pack", "rules"):
        raise ValueError("mode must be 'merge', 'pack' or 'rules'")
    if mode == "rules":
        return _pack_left(circuit)
    gates = list(circuit.gates)
    forms = parity_forms(circuit)
    flips = _x_flips(circuit)
    first: dict[tuple, int] = {}
    acc: dict[int, object] = {}
    drop: set[int] = set()
    for i, g in enumerate(gates):
        if not g.is_phase:
            continue
        key = (g.target, forms[i], flips[i])
        j = first.get(key)
        if j is None:
            first[key] = i
            acc[i] = g.phase
        else:
            acc[j] = acc[j] + g.phase
            drop.add(i)
    fired = bool(drop)
    out = []
    for i, g in enumerate(gates):
        if i in drop:
            continue
        if i in acc and acc[i] != g.phase:
            if acc[i].is_zero:
                continue
            g = phase_gate(g.target, acc[i])
        out.append(g)
    result = circuit.with_gates(out)
    if mode == "pack":
        result, moved = _pack_left(result)
        fired = fired or moved
    return result, fired


def _pack_left(circuit: Circuit) -> tuple[Circuit, bool]:
    """Slide phases left across CNOTs they control and across CNOT boxes."""
    gates = list(circuit.gates)
    moved = False
    i = 0
    while i < len(gates):
        g = gates[i]
        if not g.is_phase:
            i += 1
            continue
        dest = _leftmost_slot(gates, i)
        if dest < i:
            del gates[i]
            gates.insert(dest, g)
            moved = True
        i += 1
    return circuit.with_gates(gates), moved


def _leftmost_slot(gates: list[Gate], i: int) -> int:
    q = gates[i].target
    dest = i
    j = i - 1
    while j >= 0:
        g = gates[j]
        if q not in g.qubits:
            j -= 1
            continue
        if g.is_phase:
            break  # merging is the cancellation rule's job
        if g.kind is GateKind.CNOT and g.controls[0] == q:
            dest = j
            j -= 1
            continue
        if g.kind is GateKind.CNOT and g.target == q:
            k = _box_start(gates, j)
            if k is None:
                break
            dest = k
            j = k - 1
            continue
        break
    return dest


def _box_start(gates: list[Gate], j: int) -> Optional[int]:
    """Index of the CNOT opening a box closed by ``gates[j]``, if sound.

    Between the two copies every gate touching the box's lines must be a
    phase or a CNOT whose target lies outside the box.
    """
    close = gates[j]
    a, b = close.controls[0], close.target
    k = j - 1
    while k >= 0:
        g = gates[k]
        if a in g.qubits or b in g.qubits:
            if g == close:
                return k
            if g.is_phase or (g.kind is GateKind.CNOT and g.target not in (a, b)):
                k -= 1
                continue
            return None
        k -= 1
    return None


def optimize_fixpoint(circuit: Circuit, mode: str = "merge",
                      max_rounds: Optional[int] = None) -> Circuit:
    """Alternate commutation and cancellation until neither fires.

    Each productive round removes at least one gate or moves a phase left,
    so the loop terminates; ``max_rounds`` (default ``len**2 + 1``) is a
    guard that raises if it is ever hit.
    """
    cap = max_rounds if max_rounds is not None else len(circuit) ** 2 + 1
    for _ in range(cap + 1):
        circuit, a = commute_phases(circuit, mode)
        circuit, b = cancel_inverse_pairs(circuit)
        if not (a or b):
            return circuit
    raise RuntimeError("optimizer did not reach a fixpoint within the round cap")
