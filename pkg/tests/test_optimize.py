import numpy as np
from hypothesis import given, settings

from mctk import Circuit, cnot, h, phase_count, phase_depth, optimize_fixpoint, s, t, zphase
from mctk.optimize import cancel_inverse_pairs, commute_phases, parity_forms
from mctk.sim import circuit_unitary, equivalent_up_to_global_phase, mct_unitary
from tests.strategies import circuits


def _same(a, b):
    return np.allclose(circuit_unitary(a), circuit_unitary(b), atol=1e-10)


def test_hh_cancels():
    c, fired = cancel_inverse_pairs(Circuit(1, (h(0), h(0))))
    assert fired and len(c) == 0


def test_pairing_across_disjoint_gate():
    c = Circuit(3, (t(0), cnot(1, 2), t(0).adjoint()))
    out, _ = cancel_inverse_pairs(c)
    assert out.gates == (cnot(1, 2),)


def test_phase_merge():
    out, _ = cancel_inverse_pairs(Circuit(1, (zphase(0, 1, 3), zphase(0, 1, 3))))
    assert out.gates == (t(0),)


def test_nested_cascade_cancels_in_one_pass():
    out, _ = cancel_inverse_pairs(Circuit(2, (cnot(0, 1), h(1), h(1), cnot(0, 1))))
    assert len(out) == 0


def test_phase_moves_across_its_control():
    c = Circuit(2, (cnot(0, 1), t(0)))
    out, fired = commute_phases(c, mode="pack")
    assert fired and out.gates == (t(0), cnot(0, 1))
    assert _same(c, out)


def test_phase_stays_behind_single_target_cnot():
    c = Circuit(2, (cnot(0, 1), t(1)))
    out, fired = commute_phases(c, mode="pack")
    assert not fired and out == c


def test_phase_on_target_between_cnot_pair_is_not_moved_out():
    # T on the target inside CX.T.CX sees x0^x1, so moving it before the
    # first CNOT would change the unitary.
    c = Circuit(2, (cnot(0, 1), t(1), cnot(0, 1)))
    moved = Circuit(2, (t(1), cnot(0, 1), cnot(0, 1)))
    assert not _same(c, moved)
    out = optimize_fixpoint(c, mode="pack")
    assert _same(c, out)
    assert len(out) == 3


def test_phase_after_cnot_pair_crosses_box():
    c = Circuit(2, (cnot(0, 1), t(1), cnot(0, 1), s(1)))
    out, fired = commute_phases(c, mode="pack")
    assert fired and out.gates[0] == s(1)
    assert _same(c, out)


def test_phase_does_not_cross_h():
    c = Circuit(1, (t(0), h(0), t(0)))
    assert optimize_fixpoint(c) == c


def test_parity_merge_folds_equal_parities():
    c = Circuit(2, (t(1), cnot(0, 1), cnot(0, 1), t(1)))
    out = optimize_fixpoint(c)
    assert out.gates == (s(1),)


def test_parity_forms_track_fresh_h_variables():
    c = Circuit(2, (t(0), h(0), t(0), cnot(1, 0), t(0)))
    f = [x for x in parity_forms(c) if x is not None]
    assert f[0] == 0b01 and f[1] != f[0] and f[2] == f[1] ^ 0b10


def test_identity_circuit_empties():
    c = Circuit(2, (h(0), cnot(0, 1), t(1), t(1).adjoint(), cnot(0, 1), h(0)))
    assert len(optimize_fixpoint(c)) == 0


def test_reference_layout_is_correct_and_folds(layout_4mct):
    ok, lam, _ = equivalent_up_to_global_phase(circuit_unitary(layout_4mct), mct_unitary(4))
    assert ok and abs(lam - 1) < 1e-10
    assert (phase_count(layout_4mct), phase_depth(layout_4mct)) == (20, 7)
    out = optimize_fixpoint(layout_4mct)
    assert _same(out, layout_4mct)
    # two Z_4 gates on the target share a parity and merge
    assert phase_count(out) == 19


@settings(max_examples=150, deadline=None)
@given(circuits(min_qubits=2, max_qubits=5, max_gates=40))
def test_optimizer_sound_monotone_idempotent(c):
    for mode in ("merge", "pack", "rules"):
        out = optimize_fixpoint(c, mode=mode)
        assert _same(c, out)
        assert len(out) <= len(c)
        assert phase_count(out) <= phase_count(c)
        assert optimize_fixpoint(out, mode=mode) == out
