"""Multi-controlled Toffoli decompositions over Clifford + dyadic Z phases.

Two constructions are provided: an ancilla-free recursion with linear phase
depth (:func:`linear_mct`) and a parity-network circuit with a single layer of
phase gates (:func:`build_unit_depth_mct`).  Both come with resource metrics
and independent equivalence checks.
"""

from .core import (
    Circuit, CircuitError, Gate, GateKind, PhaseExponent, ZERO,
    cnot, cphase, h, mct, mcz, phase_add, phase_gate, s, t, x, z, zphase,
)
from .decompose import (
    DecompositionConfig, cphase_transversal, decompose_full, expand_macros, linear_mct,
    lower_controlled_phases, mct_to_mcz, mcz_ladder, mcz_two_qubit,
)
from .metrics import (
    ResourceReport, compare_to_reference, distillation_inputs, gate_histogram, phase_count,
    phase_depth, reference_phase_count, reference_phase_depth, report, schedule, total_depth,
)
from .optimize import cancel_inverse_pairs, commute_phases, optimize_fixpoint
from .parity import (
    PhasePolynomial, ResourceLimitError, build_unit_depth_mct, iex_terms, phase_polynomial,
    verify_phase_polynomial,
)
from .sim import (
    WidthError, circuit_unitary, clifford_check, equivalent_up_to_global_phase, mct_unitary,
    mcz_unitary, pauli_identities_check, simulate,
)
from .verify import VerificationOutcome, case3_phase_product, verify_against_mct

__version__ = "0.1.0"
