"""Measurement circuits for the Fibonacci Levin-Wen code and brute-force checks."""

from .builders import (
    bp_measure_circuit,
    f_circuit,
    pentagon_circuit,
    pentagon_simple_circuit,
    pull_calibration_circuit,
    pull_simple_circuit,
    qv_circuit,
    reduced_f_circuit,
    s_circuit,
    tadpole_pull_circuit,
)
from .circuit import Circuit, CostModel, Gate, GateCounts, GateKind, count_gates, invert, simulate, unitary_of
from .lattice import TrivalentLattice, apply_fmove, build_plaquette, enumerate_valid_states, plaquette_dimensions
from .lowering import barenco_network, lower_ntoffoli
from .oracles import bp_oracle
from .statevec import StateVector, basis_state, equal_up_to_global_phase
from .tensors import FIB, PHI, FibonacciTensorSet, delta, fibonacci, fibonacci_tensors
from .textio import CircuitParseError, export_text, import_text
from .verify import VerificationReport, verify_all, verify_bp, verify_pentagon

__version__ = "0.1.0"
