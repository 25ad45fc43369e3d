from fractions import Fraction

import pytest

from mctk import Circuit, PhaseExponent, cnot, h, phase_gate


def _z(q, a, b):
    return phase_gate(q, PhaseExponent.from_fraction(Fraction(a, b)))


# Hand-laid 4-MCT on lines c1=0, c2=1, c3=2, t=3 (Z(q, a, b) is an a/b*pi phase)
_FIG = [
    _z(0, 1, 8), _z(1, -1, 8), _z(2, 1, 4), ("h", 3), ("cx", 3, 0), ("cx", 3, 1), ("cx", 3, 2),
    _z(0, -1, 8), _z(1, -1, 8), _z(2, -1, 4), _z(3, 1, 8), ("cx", 3, 0), ("cx", 3, 1), ("cx", 3, 2),
    ("h", 2), ("cx", 2, 0), ("cx", 2, 1),
    _z(0, 1, 4), _z(1, 1, 4), _z(2, -1, 4), ("cx", 0, 1), ("cx", 2, 0), ("cx", 1, 2),
    _z(1, -1, 8), _z(2, -1, 4), ("cx", 1, 2), ("h", 2),
    ("cx", 3, 1), ("cx", 2, 3), _z(1, 1, 8), _z(2, -1, 4), _z(3, 1, 4), ("cx", 2, 3), ("cx", 3, 1),
    ("h", 2), ("h", 3),
    ("cx", 2, 0), ("cx", 2, 1), _z(0, -1, 4), _z(1, 1, 4), _z(2, 1, 4), ("cx", 0, 1), ("cx", 2, 0),
    ("cx", 1, 2), _z(1, 1, 4), _z(2, -1, 4), ("cx", 1, 2), ("h", 2),
]


def _gate(item):
    if not isinstance(item, tuple):
        return item
    if item[0] == "h":
        return h(item[1])
    return cnot(item[1], item[2])


@pytest.fixture
def layout_4mct() -> Circuit:
    """Reference 20-phase, depth-7 layout of the 4-qubit MCT."""
    return Circuit(4, tuple(_gate(g) for g in _FIG))


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(line)
