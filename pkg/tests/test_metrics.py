import json

import pytest
from hypothesis import given

from mctk import (
    Circuit, build_unit_depth_mct, cnot, compare_to_reference, distillation_inputs, h, linear_mct,
    phase_count, phase_depth, reference_phase_count, reference_phase_depth, report, s, schedule, t,
    total_depth, z, zphase,
)
from tests.strategies import circuits


def test_counting_convention():
    c = Circuit(1, (z(0), s(0), t(0), zphase(0, 1, 3)))
    assert phase_count(c) == 3
    assert phase_count(c, min_m=2) == 2
    assert phase_count(c, min_m=0) == 3  # Pauli Z never counts


def test_depth_conventions():
    # T . CX . T on a chain: Cliffords are free by default, one cycle each otherwise
    c = Circuit(2, (t(0), cnot(0, 1), t(1), h(1), t(1)))
    assert phase_depth(c) == 3
    assert phase_depth(c, clifford_latency=1) == 3
    par = Circuit(3, (t(0), t(1), cnot(0, 2), t(2)))
    assert phase_depth(par) == 2
    assert phase_depth(par, clifford_latency=1) == 2


def test_reference_layout_depths(layout_4mct):
    assert phase_depth(layout_4mct) == 7
    assert phase_depth(layout_4mct, clifford_latency=1) == 12


@given(circuits(max_qubits=5, max_gates=40))
def test_schedule_and_depth_invariants(c):
    for mom in schedule(c):
        qs = [q for g in mom for q in g.qubits]
        assert len(qs) == len(set(qs))
    assert sum(len(m) for m in schedule(c)) == len(c)
    for lat in (0, 1):
        d = [phase_depth(c, m, lat) for m in range(1, 6)]
        assert d == sorted(d, reverse=True)
        assert d[0] <= phase_count(c)
    assert phase_depth(c, clifford_latency=1) <= total_depth(c)


def test_distillation():
    assert distillation_inputs(2, 1) == 15
    assert distillation_inputs(3, 1) == 31
    assert distillation_inputs(2, 2) == 225
    assert distillation_inputs(3, 2) > distillation_inputs(2, 2) > distillation_inputs(2, 1)
    with pytest.raises(ValueError):
        distillation_inputs(2, 0)


def test_report():
    assert report(Circuit(1)).to_dict() == {
        "phase_count": 0, "phase_depth": 0, "total_depth": 0, "qubits": 1, "ancillas": 0,
        "histogram": {}, "max_phase_m": 0,
    }
    r = report(linear_mct(5))
    assert (r.qubits, r.ancillas) == (5, 0)
    r = report(build_unit_depth_mct(5))
    assert (r.qubits, r.ancillas, r.phase_depth) == (31, 26, 1)
    assert json.loads(r.to_json())["phase_count"] == 31


def test_reference_formulas():
    assert [reference_phase_count(n) for n in (4, 5, 6)] == [20, 39, 62]
    assert [reference_phase_depth(n) for n in (4, 5, 6, 7)] == [7, 13, 18, 22]
    assert compare_to_reference(7, 7, True) == (True, "match")
    assert compare_to_reference(6, 7, True) == (False, "better than reference")
    assert compare_to_reference(6, 7, False) == (True, "better than reference")
    assert compare_to_reference(8, 7, False) == (False, "worse than reference")
