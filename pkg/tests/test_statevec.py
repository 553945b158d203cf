import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibcode.statevec import (
    StateVector,
    basis_state,
    bits_to_index,
    equal_up_to_global_phase,
    global_phase_deviation,
    index_to_bits,
)
from fibcode.tensors import ry_matrix

X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_bit_order():
    assert bits_to_index("100") == 1
    assert bits_to_index("001") == 4
    assert index_to_bits(6, 3) == "011"
    s = basis_state(3, "100")
    assert s.amplitudes[1] == 1


def test_controlled_x():
    s = basis_state(3, "110").apply_controlled_unitary([0, 1], 2, X)
    assert s.amplitudes[bits_to_index("111")] == 1
    s = basis_state(3, "100").apply_controlled_unitary([0, 1], 2, X)
    assert s.amplitudes[bits_to_index("100")] == 1


def test_operand_errors():
    s = basis_state(2, "00")
    with pytest.raises(IndexError):
        s.apply_controlled_unitary([2], 0, X)
    with pytest.raises(ValueError):
        s.apply_controlled_unitary([0], 0, X)
    with pytest.raises(ValueError):
        s.apply_controlled_unitary([], 0, np.array([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        StateVector(17, np.zeros(2))
    with pytest.raises(ValueError):
        basis_state(2, "0")


def test_measure():
    amps = np.array([1, 0, 1, 0]) / np.sqrt(2)
    p0, s0, s1 = StateVector(2, amps).measure_qubit(1)
    assert abs(p0 - 0.5) < 1e-15
    assert abs(s0.amplitudes[0] - 1) < 1e-15 and abs(s1.amplitudes[2] - 1) < 1e-15
    p0, s0, s1 = basis_state(2, "00").measure_qubit(0)
    assert p0 == 1.0 and s1 is None


def test_dump_round_trip(rng):
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    s = StateVector(3, amps / np.linalg.norm(amps))
    back = StateVector.loads(s.dumps())
    assert np.array_equal(back.amplitudes, s.amplitudes)
    with pytest.raises(ValueError, match="line 2"):
        StateVector.loads("00 1 0\n0 1 0\n")


def test_global_phase():
    a = np.array([1, 1j]) / np.sqrt(2)
    assert equal_up_to_global_phase(np.exp(0.7j) * a, a)
    assert not equal_up_to_global_phase(np.array([1, -1j]) / np.sqrt(2), a)
    # a scaled copy is not the same state
    assert global_phase_deviation(2 * a, a) > 0.5


angles = st.floats(min_value=-6.3, max_value=6.3, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), angles), min_size=1, max_size=12),
       st.integers(0, 15))
def test_norm_and_reversibility(ops, start):
    s = StateVector.from_index(4, start)
    applied = []
    for c, t, a in ops:
        if c == t:
            continue
        s.apply_controlled_unitary([c], t, ry_matrix(a))
        applied.append((c, t, a))
        assert abs(s.norm() - 1) < 1e-12
    for c, t, a in reversed(applied):
        s.apply_controlled_unitary([c], t, ry_matrix(-a))
    assert abs(s.amplitudes[start] - 1) < 1e-12
