"""Gate-set IR: exact dyadic phases, gates and immutable circuits.

Phases are stored as ``num * pi / 2**m`` with integer ``num`` and ``m``, so
cancellation and counting never depend on floating point.  A phase gate
``Z_N`` (``N = 2**m``) is ``diag(1, exp(i*pi/N))``; ``S`` is ``m=1``, ``T`` is
``m=2`` and Pauli ``Z`` is ``num=1, m=0``.

Qubit 0 is the most significant bit of a basis index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

SCHEMA_VERSION = 1


class CircuitError(ValueError):
    """Raised for malformed gates, circuits or serialized data."""


@dataclass(frozen=True)
class PhaseExponent:
    """Exact angle ``num * pi / 2**log2den``, kept in canonical form.

    Canonical form: ``num`` odd (or zero with ``log2den == 0``) and reduced
    into ``(-2**m, 2**m]``.  Construction always canonicalizes.
    """

    num: int
    log2den: int = 0

    def __post_init__(self):
        if self.log2den < 0:
            raise CircuitError("log2den must be non-negative")
        num, m = _canonical(int(self.num), int(self.log2den))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log2den", m)

    @classmethod
    def from_fraction(cls, frac: Fraction | int) -> "PhaseExponent":
        """Build from a multiple of pi; the denominator must be a power of two."""
        frac = Fraction(frac)
        den = frac.denominator
        if den & (den - 1):
            raise CircuitError(f"phase {frac} is not dyadic")
        return cls(frac.numerator, den.bit_length() - 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.log2den)

    @property
    def angle(self) -> float:
        import math
        return math.pi * self.num / (1 << self.log2den)

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def __neg__(self) -> "PhaseExponent":
        return PhaseExponent(-self.num, self.log2den)

    def __add__(self, other: "PhaseExponent") -> "PhaseExponent":
        return phase_add(self, other)

    def halve(self) -> "PhaseExponent":
        """Half the angle: numerator kept, ``m`` incremented."""
        return PhaseExponent(self.num, self.log2den + 1)

    def __str__(self):
        if self.num == 0:
            return "0"
        return f"{self.num}pi/{1 << self.log2den}"


def _canonical(num: int, m: int) -> tuple[int, int]:
    mod = 1 << (m + 1)
    num %= mod
    if num > (1 << m):
        num -= mod
    while m > 0 and num % 2 == 0:
        num //= 2
        m -= 1
    if num == 0:
        m = 0
    elif m == 0:
        num = 1  # the only non-zero angle with m=0 is pi
    return num, m


def phase_add(a: PhaseExponent, b: PhaseExponent) -> PhaseExponent:
    """Exact sum of two phases (mod 2*pi) in canonical form."""
    m = max(a.log2den, b.log2den)
    return PhaseExponent((a.num << (m - a.log2den)) + (b.num << (m - b.log2den)), m)


ZERO = PhaseExponent(0, 0)


class GateKind(str, Enum):
    H = "H"
    X = "X"
    ZPHASE = "ZPHASE"
    CNOT = "CNOT"
    CPHASE = "CPHASE"
    MCT = "MCT"
    MCZ = "MCZ"


_PHASED = (GateKind.ZPHASE, GateKind.CPHASE)
_SINGLE = (GateKind.H, GateKind.X, GateKind.ZPHASE)


@dataclass(frozen=True)
class Gate:
    """One gate instance.  Controls are stored sorted for MCT/MCZ."""

    kind: GateKind
    target: int
    controls: tuple[int, ...] = ()
    phase: Optional[PhaseExponent] = None

    def __post_init__(self):
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        controls = tuple(int(c) for c in self.controls)
        if kind in (GateKind.MCT, GateKind.MCZ):
            controls = tuple(sorted(controls))
        object.__setattr__(self, "controls", controls)
        object.__setattr__(self, "target", int(self.target))
        if kind in _SINGLE and controls:
            raise CircuitError(f"{kind.value} takes no controls")
        if kind in (GateKind.CNOT, GateKind.CPHASE) and len(controls) != 1:
            raise CircuitError(f"{kind.value} needs exactly one control")
        if kind in (GateKind.MCT, GateKind.MCZ) and len(controls) < 2:
            raise CircuitError(f"{kind.value} needs at least two controls")
        if kind in _PHASED:
            if self.phase is None:
                raise CircuitError(f"{kind.value} needs a phase")
        elif self.phase is not None:
            raise CircuitError(f"{kind.value} carries no phase")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError("duplicate qubit")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    @property
    def is_phase(self) -> bool:
        return self.kind is GateKind.ZPHASE

    def validate(self, num_qubits: int) -> None:
        for q in self.qubits:
            if q < 0 or q >= num_qubits:
                raise CircuitError("qubit out of range")

    def adjoint(self) -> "Gate":
        if self.kind in _PHASED:
            return Gate(self.kind, self.target, self.controls, -self.phase)
        return self

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "controls": list(self.controls), "target": self.target}
        if self.phase is not None:
            d["phase"] = {"num": self.phase.num, "log2den": self.phase.log2den}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Gate":
        try:
            phase = d.get("phase")
            ph = PhaseExponent(int(phase["num"]), int(phase["log2den"])) if phase is not None else None
            return cls(GateKind(d["kind"]), int(d["target"]), tuple(d.get("controls", ())), ph)
        except (KeyError, TypeError, ValueError) as exc:
            raise CircuitError(f"bad gate record {d!r}: {exc}") from None

    def __str__(self):
        args = ",".join(str(q) for q in self.qubits)
        ph = f"[{self.phase}]" if self.phase is not None else ""
        return f"{self.kind.value}{ph}({args})"


# Convenience constructors

def h(q: int) -> Gate:
    return Gate(GateKind.H, q)


def x(q: int) -> Gate:
    return Gate(GateKind.X, q)


def zphase(q: int, num: int, log2den: int = 0) -> Gate:
    return Gate(GateKind.ZPHASE, q, (), PhaseExponent(num, log2den))


def phase_gate(q: int, phase: PhaseExponent) -> Gate:
    return Gate(GateKind.ZPHASE, q, (), phase)


def z(q: int) -> Gate:
    return zphase(q, 1, 0)


def s(q: int) -> Gate:
    return zphase(q, 1, 1)


def t(q: int) -> Gate:
    return zphase(q, 1, 2)


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, target, (control,))


def cphase(control: int, target: int, phase: PhaseExponent) -> Gate:
    return Gate(GateKind.CPHASE, target, (control,), phase)


def mct(controls: Sequence[int], target: int) -> Gate:
    return Gate(GateKind.MCT, target, tuple(controls))


def mcz(controls: Sequence[int], target: int) -> Gate:
    return Gate(GateKind.MCZ, target, tuple(controls))


@dataclass(frozen=True)
class Circuit:
    """Immutable gate list on ``num_qubits`` lines.

    Lines from ``ancilla_start`` upward are ancillas: they start in |0> and
    must be returned to |0>.  ``ancilla_start`` defaults to ``num_qubits``.
    """

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    ancilla_start: Optional[int] = None

    def __post_init__(self):
        if self.num_qubits < 1:
            raise CircuitError("num_qubits must be positive")
        anc = self.num_qubits if self.ancilla_start is None else int(self.ancilla_start)
        if not 0 <= anc <= self.num_qubits:
            raise CircuitError("ancilla_start out of range")
        object.__setattr__(self, "ancilla_start", anc)
        gates = tuple(self.gates)
        for g in gates:
            g.validate(self.num_qubits)
        object.__setattr__(self, "gates", gates)

    @property
    def ancillas(self) -> int:
        return self.num_qubits - self.ancilla_start

    def __len__(self):
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def append(self, gate: Gate) -> "Circuit":
        gate.validate(self.num_qubits)
        return Circuit(self.num_qubits, self.gates + (gate,), self.ancilla_start)

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.num_qubits, self.gates + tuple(gates), self.ancilla_start)

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.num_qubits, tuple(gates), self.ancilla_start)

    def inverse(self) -> "Circuit":
        return self.with_gates(g.adjoint() for g in reversed(self.gates))

    def to_dict(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "num_qubits": self.num_qubits,
            "ancilla_start": self.ancilla_start,
            "gates": [g.to_dict() for g in self.gates],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Circuit":
        if not isinstance(d, dict) or d.get("version") != SCHEMA_VERSION:
            raise CircuitError(f"unsupported circuit schema (expected version {SCHEMA_VERSION})")
        try:
            n = int(d["num_qubits"])
            gates = [Gate.from_dict(g) for g in d["gates"]]
        except (KeyError, TypeError) as exc:
            raise CircuitError(f"malformed circuit: {exc}") from None
        return cls(n, tuple(gates), d.get("ancilla_start", n))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise CircuitError(f"invalid JSON: {exc}") from None


def append(circuit: Circuit, gate: Gate) -> Circuit:
    return circuit.append(gate)


def inverse(circuit: Circuit) -> Circuit:
    return circuit.inverse()
