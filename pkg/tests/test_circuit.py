import numpy as np
import pytest

from fibcode.builders import bp_measure_circuit, f_circuit, qv_circuit, reduced_f_circuit, s_circuit
from fibcode.circuit import (
    Circuit,
    CostModel,
    Gate,
    GateKind,
    barenco_toffoli_count,
    cnot,
    count_gates,
    cu,
    invert,
    ry,
    simulate,
    simulate_basis,
    toffoli,
    unitary_of,
    x,
)
from fibcode.statevec import basis_state
from fibcode.tensors import FIB

D, P = CostModel.DECOMPOSED, CostModel.PRIMITIVE_NTOFFOLI


def test_gate_validation():
    with pytest.raises(ValueError):
        cnot(1, 1)
    with pytest.raises(ValueError):
        toffoli(0, 1)
    with pytest.raises(ValueError):
        cu("Q", (0,), 1)
    with pytest.raises(ValueError):
        ry(0, float("nan"))
    with pytest.raises(ValueError):
        Circuit(2, [cnot(0, 2)])


def test_inverse_gives_identity(rng):
    gates = [ry(0, 0.4), cnot(0, 1), cu("F", (0, 1), 2), toffoli(0, 2, 1), x(2), ry(2, -1.1)]
    c = Circuit(3, gates)
    u = unitary_of(c + invert(c))
    assert np.allclose(u, np.eye(8), atol=1e-12)


def test_simulate_matches_state_api():
    c = Circuit(3, [x(0), cnot(0, 2), ry(1, 0.3)])
    s = simulate(c, basis_state(3, "000"))
    col = simulate_basis(c, [0])[:, 0]
    assert np.allclose(s.amplitudes, col)
    with pytest.raises(ValueError):
        simulate(c, basis_state(2, "00"))


def test_unitary_limit():
    with pytest.raises(ValueError):
        unitary_of(Circuit(14, []))


def test_barenco_count():
    assert barenco_toffoli_count(3) == 1
    assert barenco_toffoli_count(4) == 4
    assert barenco_toffoli_count(5) == 8


def _triple(c):
    return (c.toffoli3, c.cnot, c.single_qubit_rotation)


def test_counts_qv():
    assert _triple(count_gates(qv_circuit(), D)) == (4, 3, 0)
    p = count_gates(qv_circuit(), P)
    assert (p.toffoli4, p.toffoli3, p.cnot) == (1, 0, 3)


def test_counts_f():
    assert _triple(count_gates(f_circuit(), D)) == (9, 4, 2)
    p = count_gates(f_circuit(), P)
    assert (p.toffoli5, p.toffoli4, p.toffoli3, p.cnot, p.single_qubit_rotation) == (1, 0, 1, 4, 2)
    assert _triple(count_gates(reduced_f_circuit(), D)) == (5, 4, 2)
    assert _triple(count_gates(s_circuit(), D)) == (0, 1, 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_counts_bp(n):
    d = count_gates(bp_measure_circuit(n), D)
    assert _triple(d) == (18 * n - 26, 8 * n - 5, 4 * n)
    p = count_gates(bp_measure_circuit(n), P)
    assert (p.toffoli5, p.toffoli4, p.toffoli3, p.cnot, p.single_qubit_rotation) == (
        2 * n - 4, 2, 2 * n - 2, 8 * n - 5, 4 * n)


def test_summary_text():
    assert count_gates(bp_measure_circuit(6), D).summary() == "toffoli=82 cnot=43 rotations=24"


def test_gate_kind_values():
    assert Gate(GateKind.X, (0,)).target == 0
    assert cu("F", (0, 1), 2).controls == (0, 1)
    assert cu("F", (0, 1), 2).matrix_2x2(FIB) is FIB.f_matrix
