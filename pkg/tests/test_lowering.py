import itertools

import numpy as np
import pytest

from fibcode import builders
from fibcode.circuit import Circuit, CostModel, GateKind, count_gates, cu, simulate_basis, toffoli, unitary_of
from fibcode.lowering import barenco_network, expand_controlled, lower_ntoffoli, nearby_ancillas
from fibcode.tensors import FIB


@pytest.mark.parametrize("k", [3, 4])
def test_barenco_exhaustive(k):
    nq = 2 * k - 1
    controls, target, anc = list(range(k)), k, list(range(k + 1, nq))
    net = Circuit(nq, barenco_network(controls, target, anc))
    assert len(net) == 4 * (k + 1) - 12
    assert all(len(g.qubits) == 3 for g in net)
    ref = Circuit(nq, [toffoli(*controls, target)])
    inputs = range(1 << nq)
    assert np.max(np.abs(simulate_basis(net, inputs) - simulate_basis(ref, inputs))) <= 1e-12


def test_barenco_errors():
    with pytest.raises(ValueError):
        barenco_network([0, 1, 2], 3, [])
    with pytest.raises(ValueError):
        barenco_network([0, 1, 2], 3, [2])


def test_two_controls_untouched():
    assert barenco_network([0, 1], 2, []) == [toffoli(0, 1, 2)]


def test_expand_controlled():
    g = cu("F", (0, 1, 2, 3), 4)
    exp = expand_controlled(g)
    assert [e.kind for e in exp] == [GateKind.RY, GateKind.NTOFFOLI, GateKind.RY]
    assert abs(exp[2].angle - FIB.theta) < 1e-15
    u1 = unitary_of(Circuit(5, [g]))
    u2 = unitary_of(Circuit(5, exp))
    assert np.max(np.abs(u1 - u2)) < 1e-12
    one = expand_controlled(cu("S", (0,), 1))
    assert one[1].kind is GateKind.CNOT


def test_lowered_f_circuit_padded():
    # The F circuit has no idle qubits; pad with two spare wires to borrow.
    base = builders.f_circuit(num_qubits=7)
    lowered = lower_ntoffoli(base, nearby_ancillas(base))
    assert all(len(g.qubits) <= 3 for g in lowered)
    assert np.max(np.abs(unitary_of(lowered) - unitary_of(base))) < 1e-12
    d = count_gates(base, CostModel.DECOMPOSED)
    low = count_gates(lowered, CostModel.DECOMPOSED)
    assert (d.toffoli3, d.cnot, d.single_qubit_rotation) == (low.toffoli3, low.cnot, low.single_qubit_rotation)


def test_lowered_bp3():
    c = builders.bp_measure_circuit(3)
    assign = nearby_ancillas(c)
    assert assign
    for pos, anc in assign.items():
        assert not set(anc) & set(c.gates[pos].qubits)
    lowered = lower_ntoffoli(c, assign)
    assert count_gates(lowered, CostModel.DECOMPOSED) == count_gates(c, CostModel.DECOMPOSED)
    inputs = range(0, 1 << 7, 5)
    assert np.max(np.abs(simulate_basis(lowered, inputs) - simulate_basis(c, inputs))) < 1e-12


def test_missing_assignment():
    c = Circuit(5, [toffoli(0, 1, 2, 3)])
    with pytest.raises(ValueError, match="no ancillas"):
        lower_ntoffoli(c, {})
    with pytest.raises(ValueError):
        nearby_ancillas(Circuit(4, [toffoli(0, 1, 2, 3)]))
