"""Unit-phase-depth MCT from a modulo-2 inclusion-exclusion expansion.

For bits ``x_1..x_m``

    sum over nonempty S of (-1)**(|S|+1) * parity_S(x)  =  2**(m-1) * x_1...x_m

so ``pi * x_1...x_n`` (the MCZ phase) is a signed sum of parities, each
weighted by ``pi / 2**(n-1)``.  Every parity of two or more lines is computed
onto its own ancilla, all ``2**n - 1`` phases fire in one layer, and the
parity network is undone.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import Circuit, CircuitError, Gate, GateKind, PhaseExponent, cnot, h, phase_gate

DEFAULT_ANCILLA_CAP = 1 << 20
ANCILLA_CAP_ENV = "MCTK_ANCILLA_CAP"


class ResourceLimitError(ValueError):
    """A construction would exceed its configured resource guard."""


def iex_terms(m: int) -> list[tuple[tuple[int, ...], int]]:
    """Nonempty subsets of ``range(m)`` with sign ``(-1)**(|S|+1)``.

    Ordered by subset size, then lexicographically.
    """
    if m < 1:
        raise ValueError("m must be positive")
    return [
        (S, 1 if len(S) % 2 else -1)
        for size in range(1, m + 1)
        for S in itertools.combinations(range(m), size)
    ]


def ancilla_cap() -> int:
    raw = os.environ.get(ANCILLA_CAP_ENV)
    if raw is None:
        return DEFAULT_ANCILLA_CAP
    try:
        return int(raw)
    except ValueError:
        raise ResourceLimitError(f"{ANCILLA_CAP_ENV} must be an integer, got {raw!r}") from None


def build_unit_depth_mct(n: int, cap: Optional[int] = None) -> Circuit:
    """n-qubit MCT (target line ``n-1``) with one layer of phase gates.

    Uses ``2**n - n - 1`` ancillas starting at line ``n``.
    """
    if n < 3:
        raise CircuitError("n must be at least 3")
    cap = ancilla_cap() if cap is None else cap
    n_anc = (1 << n) - n - 1
    if n_anc > cap:
        raise ResourceLimitError(f"ancillas needed {n_anc} exceed cap {cap} (set {ANCILLA_CAP_ENV})")
    t = n - 1
    terms = iex_terms(n)
    line_of: dict[tuple[int, ...], int] = {}
    compute: list[Gate] = []
    anc = n
    for S, _ in terms:
        if len(S) == 1:
            line_of[S] = S[0]
            continue
        line_of[S] = anc
        compute.extend(cnot(q, anc) for q in S)
        anc += 1
    layer = [phase_gate(line_of[S], PhaseExponent(sign, n - 1)) for S, sign in terms]
    uncompute = list(reversed(compute))
    gates = [h(t), *compute, *layer, *uncompute, h(t)]
    return Circuit(n + n_anc, tuple(gates), ancilla_start=n)


@dataclass
class PhasePolynomial:
    """Phase function ``sum_f coeff[f] * pi * parity_f(x)`` over input bits.

    Parities are bitmasks over the logical lines; ``outputs`` holds the
    final parity on every line.
    """

    num_vars: int
    terms: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    constant: Fraction = Fraction(0)
    output_flips: list = field(default_factory=list)

    def add(self, form: int, coeff: Fraction) -> None:
        c = (self.terms.get(form, Fraction(0)) + coeff) % 2
        if c:
            self.terms[form] = c
        else:
            self.terms.pop(form, None)

    def evaluate(self) -> np.ndarray:
        """Phase (as a multiple of pi, mod 2) for all ``2**num_vars`` inputs.

        Input index bit ``num_vars-1-i`` is variable ``i`` (line 0 is the MSB).
        """
        k = self.num_vars
        den = self.constant.denominator
        for c in self.terms.values():
            den = max(den, c.denominator)
        mod = 2 * den
        xs = np.arange(1 << k, dtype=np.int64)
        total = np.full(1 << k, int(self.constant * den) % mod, dtype=np.int64)
        for form, c in self.terms.items():
            mask = _reverse_bits(form, k)
            par = (np.bitwise_count(xs & mask) & 1).astype(np.int64)
            total = (total + par * int(c * den)) % mod
        return total, den


def _reverse_bits(form: int, k: int) -> int:
    # variable i lives at index bit k-1-i
    out = 0
    for i in range(k):
        if form >> i & 1:
            out |= 1 << (k - 1 - i)
    return out


def phase_polynomial(circuit: Circuit, logical: Optional[int] = None) -> PhasePolynomial:
    """Symbolic phase polynomial of a CNOT + X + Z-phase circuit.

    Lines below ``logical`` (default ``ancilla_start``) are variables; the
    rest start at 0.  Raises ``CircuitError`` for any other gate kind.
    """
    k = circuit.ancilla_start if logical is None else logical
    forms = [1 << q if q < k else 0 for q in range(circuit.num_qubits)]
    flips = [0] * circuit.num_qubits
    poly = PhasePolynomial(k)
    for g in circuit.gates:
        q = g.target
        if g.kind is GateKind.CNOT:
            forms[q] ^= forms[g.controls[0]]
            flips[q] ^= flips[g.controls[0]]
        elif g.kind is GateKind.X:
            flips[q] ^= 1
        elif g.kind is GateKind.ZPHASE:
            p = g.phase.as_fraction()
            if flips[q]:
                # p * (1 - f) = p - p*f
                poly.constant = (poly.constant + p) % 2
                p = -p
            if forms[q]:
                poly.add(forms[q], p)
        else:
            raise CircuitError(f"not a parity circuit: contains {g.kind.value}")
    poly.outputs = forms
    poly.output_flips = flips
    return poly


def strip_target_hadamards(circuit: Circuit, target: int) -> Circuit:
    """Remove an outer H pair on ``target``; other H gates are rejected."""
    gates = list(circuit.gates)
    if len(gates) < 2 or gates[0] != h(target) or gates[-1] != h(target):
        raise CircuitError("not a parity circuit: expected an outer H pair on the target")
    inner = gates[1:-1]
    if any(g.kind is GateKind.H for g in inner):
        raise CircuitError("not a parity circuit: interior H gates")
    return circuit.with_gates(inner)


def verify_phase_polynomial(circuit: Circuit, n: int) -> tuple[bool, dict]:
    """Check that the inner section applies ``pi * x_1...x_n`` and restores lines.

    Returns ``(ok, details)``.
    """
    inner = strip_target_hadamards(circuit, n - 1)
    poly = phase_polynomial(inner, n)
    details: dict = {}
    bad_lines = [
        q for q, f in enumerate(poly.outputs)
        if f != ((1 << q) if q < n else 0) or poly.output_flips[q]
    ]
    if bad_lines:
        details["lines_not_restored"] = bad_lines
    total, den = poly.evaluate()
    expected = np.zeros(1 << n, dtype=np.int64)
    expected[-1] = den  # pi on the all-ones input
    wrong = np.nonzero(total != expected)[0]
    if len(wrong):
        details["phase_mismatch_inputs"] = [int(i) for i in wrong[:16]]
    return not details, details
