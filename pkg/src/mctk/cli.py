"""``mctk`` command line: decompose, verify, stats, optimize, export.

Exit codes: 0 success, 1 verification failure or strict-mode mismatch,
2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import Circuit, CircuitError, GateKind
from .decompose import LEVELS, linear_mct
from .metrics import compare_to_reference, reference_phase_count, reference_phase_depth, report
from .optimize import optimize_fixpoint
from .parity import ResourceLimitError, build_unit_depth_mct
from .sim import WidthError
from .verify import METHODS, verify_against_mct

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 already; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> Circuit:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return Circuit.from_json(text)


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _print_report(circuit: Circuit, min_m: int = 1) -> None:
    for k, v in report(circuit, min_m).to_dict().items():
        if isinstance(v, dict):
            v = json.dumps(v, sort_keys=True)
        print(f"{k}={v}")


def cmd_decompose(args) -> int:
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    if args.mode == "linear":
        circ = linear_mct(args.n, optimize=args.optimize, level=args.level)
    else:
        if args.level != "transversal":
            raise UsageError("unit-depth mode only produces the transversal level")
        circ = build_unit_depth_mct(args.n)
        if args.optimize:
            circ = optimize_fixpoint(circ)
    if args.output:
        _write(args.output, circ.to_json())
    _print_report(circ)
    return EXIT_OK


def cmd_verify(args) -> int:
    against = args.against
    if not against.startswith("mct:"):
        raise UsageError("--against must look like mct:<n>")
    try:
        n = int(against[4:])
    except ValueError:
        raise UsageError("--against must look like mct:<n>") from None
    circ = _load(args.file)
    out = verify_against_mct(circ, n, args.method, args.require_unit_phase)
    print(json.dumps(out.to_dict(), sort_keys=True))
    return EXIT_OK if out.passed else EXIT_FAIL


def cmd_stats(args) -> int:
    circ = _load(args.file)
    _print_report(circ, args.min_n)
    rep = report(circ, args.min_n)
    n = circ.ancilla_start
    if circ.ancillas == 0 and n >= 4 and args.min_n <= 1:
        refs = {"phase_count": reference_phase_count(n), "phase_depth": reference_phase_depth(n)}
    elif circ.ancillas == (1 << n) - n - 1 and n >= 3 and args.min_n <= 1:
        refs = {"phase_count": (1 << n) - 1, "phase_depth": 1}
    else:
        return EXIT_OK
    ok_all = True
    for key, ref in refs.items():
        ok, status = compare_to_reference(getattr(rep, key), ref, args.strict)
        print(f"{key}_reference={ref} {key}_status={status.replace(' ', '_')}")
        ok_all &= ok
    return EXIT_OK if ok_all else EXIT_FAIL


def cmd_optimize(args) -> int:
    circ = optimize_fixpoint(_load(args.file))
    _write(args.output, circ.to_json())
    _print_report(circ)
    return EXIT_OK


def to_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text; phases become ``u1(pi*num/2^m)`` with exact angles."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    for g in circuit.gates:
        k = g.kind
        q = [f"q[{i}]" for i in g.controls + (g.target,)]
        if k is GateKind.H:
            lines.append(f"h {q[0]};")
        elif k is GateKind.X:
            lines.append(f"x {q[0]};")
        elif k is GateKind.CNOT or (k is GateKind.MCT and len(g.controls) == 1):
            lines.append(f"cx {q[0]},{q[1]};")
        elif k is GateKind.ZPHASE:
            lines.append(f"u1({_angle(g.phase)}) {q[0]};")
        elif k is GateKind.CPHASE:
            lines.append(f"cu1({_angle(g.phase)}) {q[0]},{q[1]};")
        elif k is GateKind.MCT and len(g.controls) == 2:
            lines.append(f"ccx {q[0]},{q[1]},{q[2]};")
        elif k is GateKind.MCZ and len(g.controls) == 1:
            lines.append(f"cz {q[0]},{q[1]};")
        elif k is GateKind.MCZ and len(g.controls) == 2:
            lines += [f"h {q[2]};", f"ccx {q[0]},{q[1]},{q[2]};", f"h {q[2]};"]
        else:
            raise CircuitError(
                f"cannot export {k.value} with {len(g.controls)} controls; decompose it first"
            )
    return "\n".join(lines) + "\n"


def _angle(p) -> str:
    return f"pi*{p.num}/{1 << p.log2den}"


def cmd_export(args) -> int:
    text = to_qasm(_load(args.file))
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mctk", description="Decompose, optimize and verify multi-controlled Toffoli gates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="lower an n-qubit MCT")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--mode", choices=("linear", "unit-depth"), default="linear")
    d.add_argument("--level", choices=LEVELS, default="transversal")
    d.add_argument("--optimize", action="store_true")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a circuit against the n-qubit MCT")
    v.add_argument("file")
    v.add_argument("--against", required=True, help="mct:<n>")
    v.add_argument("--method", choices=METHODS, default="auto")
    v.add_argument("--require-unit-phase", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="resource report")
    s.add_argument("file")
    s.add_argument("--min-n", type=int, default=1, help="count phases with log2 denominator >= this")
    s.add_argument("--strict", action="store_true", help="require equality with the closed forms")
    s.set_defaults(func=cmd_stats)

    o = sub.add_parser("optimize", help="run the peephole optimizer to a fixpoint")
    o.add_argument("file")
    o.add_argument("-o", "--output", required=True)
    o.set_defaults(func=cmd_optimize)

    e = sub.add_parser("export", help="write OpenQASM 2.0")
    e.add_argument("file")
    e.add_argument("--format", choices=("qasm",), default="qasm")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CircuitError, ResourceLimitError, WidthError) as exc:
        print(f"mctk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
