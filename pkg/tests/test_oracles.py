import numpy as np
import pytest

from fibcode.oracles import bp_components, bp_oracle, bp_spectral_split, qv_expected_syndrome
from fibcode.tensors import PHI, fibonacci, tadpole_states


def test_tadpole_projector():
    b = bp_oracle(1)
    ones, zero_a, zero_b = tadpole_states()
    assert np.allclose(b, np.outer(ones, ones), atol=1e-12)
    assert abs(np.trace(b) - 1) < 1e-12
    assert np.linalg.norm(b @ zero_a) < 1e-12 and np.linalg.norm(b @ zero_b) < 1e-12


@pytest.mark.parametrize("n", range(2, 7))
def test_projector_rank(n):
    valid, b0, b1, bp = bp_components(n)
    assert len(valid) == fibonacci(2 * n - 1) + fibonacci(2 * n + 1)
    assert np.allclose(bp, bp.T, atol=1e-12)
    assert np.max(np.abs(bp @ bp - bp)) < 1e-10
    assert abs(np.trace(bp) - fibonacci(2 * n - 1)) < 1e-9
    assert bp_spectral_split(n) == (fibonacci(2 * n - 1), fibonacci(2 * n + 1))


def test_b0_is_identity():
    valid, b0, _, _ = bp_components(4)
    assert np.allclose(b0, np.eye(len(valid)))


def test_hexagon_trace():
    assert abs(np.trace(bp_oracle(6)) - 89) < 1e-9


def test_vertex_violating_states_vanish():
    b = bp_oracle(2)
    # |i1 i2 a1 a2> = |1000>: vertex (a1, i2, i1) = (0, 0, 1) is forbidden
    assert np.all(b[:, 1] == 0) and np.all(b[1, :] == 0)


def test_bp_quadratic_relation():
    # B^1 B^1 = 1 + B^1 on the valid space (loop fusion tau x tau = 1 + tau)
    _, b0, b1, _ = bp_components(3)
    assert np.max(np.abs(b1 @ b1 - b0 - b1)) < 1e-10
    assert abs(PHI ** 2 - PHI - 1) < 1e-12


def test_qv_expected():
    assert qv_expected_syndrome(1, 1, 1) == 0
    assert qv_expected_syndrome(1, 0, 0) == 1
