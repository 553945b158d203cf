"""Numeric data of the Fibonacci string-net: fusion rule, F and S tensors.

Labels are bits: 0 is the vacuum, 1 is the Fibonacci anyon.  Every tensor
entry is real.  The F tensor ``F^{abe}_{cde'}`` is stored as
``f_tensor[(a, b, c, d, e, e')]``; it is nonzero only when the four
triangles ``(a,b,e)``, ``(c,d,e)``, ``(a,d,e')`` and ``(b,c,e')`` are all
allowed by the fusion rule.  Before an F-move the edge ``e`` joins the
vertices ``(a,b,e)`` and ``(c,d,e)``; afterwards ``e'`` joins ``(a,d,e')``
and ``(b,c,e')``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping

import numpy as np

PHI = (1.0 + math.sqrt(5.0)) / 2.0

ALLOWED_TRIPLES = frozenset({(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)})

# (a, b, c, d) -> (e, e') for every sector whose outcome is fixed by the
# fusion rule, read off the F-move picture by hand.  Kept separate from the
# algorithmic enumeration in ``deterministic_sectors`` so the two can be
# compared.
FMOVE_TABLE = MappingProxyType({
    (0, 0, 0, 0): (0, 0),
    (0, 0, 1, 1): (0, 1),
    (0, 1, 0, 1): (1, 1),
    (0, 1, 1, 0): (1, 0),
    (0, 1, 1, 1): (1, 1),
    (1, 0, 0, 1): (1, 0),
    (1, 0, 1, 0): (1, 1),
    (1, 0, 1, 1): (1, 1),
    (1, 1, 0, 0): (0, 1),
    (1, 1, 0, 1): (1, 1),
    (1, 1, 1, 0): (1, 1),
})


def delta(i: int, j: int, k: int) -> int:
    """Vertex fusion tensor: 1 if the three labels may meet at a vertex."""
    return int((i, j, k) in ALLOWED_TRIPLES)


def fibonacci(n: int) -> int:
    """Fibonacci number with F_0 = 0, F_1 = 1."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"fibonacci index must be an integer, got {n!r}")
    if n < 0 or n > 92:
        raise ValueError(f"fibonacci index {n} outside 0..92 (64-bit range)")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def reflection_angle(m: np.ndarray) -> float:
    """Angle g with Ry(g) X Ry(-g) == m, for a real reflection m.

    Here Ry(g) = exp(i g sigma_y / 2), so Ry(g) X Ry(-g) equals
    [[sin g, cos g], [cos g, -sin g]].
    """
    m = np.asarray(m, dtype=float)
    return math.atan2(m[0, 0], m[0, 1])


def ry_matrix(angle: float) -> np.ndarray:
    """exp(i angle sigma_y / 2) as a real 2x2 array."""
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, s], [-s, c]])


def _allowed(*triples: tuple[int, int, int]) -> bool:
    return all(t in ALLOWED_TRIPLES for t in triples)


def deterministic_sectors() -> dict[tuple[int, int, int, int], tuple[int, int]]:
    """Enumerate (a,b,c,d) != (1,1,1,1) sectors admitting a valid (e, e').

    Raises if a sector admits more than one completion, which would mean the
    fusion rule does not fix the F-move there.
    """
    sectors = {}
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        if (a, b, c, d) == (1, 1, 1, 1):
            continue
        es = [e for e in (0, 1) if _allowed((a, b, e), (c, d, e))]
        eps = [e for e in (0, 1) if _allowed((a, d, e), (b, c, e))]
        if not es and not eps:
            continue
        if len(es) != 1 or len(eps) != 1:
            raise AssertionError(f"sector {(a, b, c, d)} is not deterministic: e={es}, e'={eps}")
        sectors[(a, b, c, d)] = (es[0], eps[0])
    return sectors


@dataclass(frozen=True)
class FibonacciTensorSet:
    """Immutable bundle of the Fibonacci tensor data.

    ``f_matrix`` may be replaced (see :meth:`with_f_matrix`) to build
    deliberately corrupted data for negative controls; everything derived
    from it is recomputed.
    """

    f_matrix: np.ndarray
    s_matrix: np.ndarray
    u_matrix: np.ndarray
    phi: float = PHI
    theta: float = field(init=False)
    rho: float = field(init=False)
    f_tensor: Mapping[tuple[int, ...], float] = field(init=False, repr=False)
    s_tensor: Mapping[tuple[int, int, int], float] = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("f_matrix", "s_matrix", "u_matrix"):
            m = np.array(getattr(self, name), dtype=float)
            if m.shape != (2, 2):
                raise ValueError(f"{name} must be 2x2")
            m.setflags(write=False)
            object.__setattr__(self, name, m)
        object.__setattr__(self, "theta", math.atan(self.phi ** -0.5))
        object.__setattr__(self, "rho", math.atan(1.0 / self.phi))

        sectors = deterministic_sectors()
        f = {}
        for idx in itertools.product((0, 1), repeat=6):
            a, b, c, d, e, ep = idx
            if (a, b, c, d) == (1, 1, 1, 1):
                f[idx] = float(self.f_matrix[e, ep])
            elif sectors.get((a, b, c, d)) == (e, ep):
                f[idx] = 1.0
            else:
                f[idx] = 0.0
        object.__setattr__(self, "f_tensor", MappingProxyType(f))

        s = {}
        for a, b, bp in itertools.product((0, 1), repeat=3):
            if a == 0:
                s[(a, b, bp)] = float(self.s_matrix[b, bp])
            else:
                s[(a, b, bp)] = 1.0 if (b, bp) == (1, 1) else 0.0
        object.__setattr__(self, "s_tensor", MappingProxyType(s))

    def delta(self, i: int, j: int, k: int) -> int:
        return delta(i, j, k)

    def f(self, a: int, b: int, c: int, d: int, e: int, ep: int) -> float:
        return self.f_tensor[(a, b, c, d, e, ep)]

    def s(self, a: int, b: int, bp: int) -> float:
        return self.s_tensor[(a, b, bp)]

    def named_matrix(self, name: str) -> np.ndarray:
        """Resolve a controlled-gate matrix name (F, S, U or XUX)."""
        if name == "F":
            return self.f_matrix
        if name == "S":
            return self.s_matrix
        if name == "U":
            return self.u_matrix
        if name == "XUX":
            x = np.array([[0.0, 1.0], [1.0, 0.0]])
            return x @ self.u_matrix @ x
        raise KeyError(f"unknown matrix name {name!r}; expected F, S, U or XUX")

    def with_f_matrix(self, f_matrix: np.ndarray) -> FibonacciTensorSet:
        return replace(self, f_matrix=np.array(f_matrix, dtype=float))

    def perturbed(self, row: int, col: int, eps: float = 1e-3) -> FibonacciTensorSet:
        """Copy with a single F-matrix entry shifted by ``eps``."""
        m = np.array(self.f_matrix, dtype=float)
        m[row, col] += eps
        return self.with_f_matrix(m)


def fibonacci_tensors() -> FibonacciTensorSet:
    phi = PHI
    f = np.array([[1 / phi, phi ** -0.5], [phi ** -0.5, -1 / phi]])
    s = np.array([[1.0, phi], [phi, -1.0]]) / math.sqrt(1 + phi * phi)
    off = math.sqrt(1 - phi ** -4)
    u = np.array([[-phi ** -2, off], [off, phi ** -2]])
    return FibonacciTensorSet(f_matrix=f, s_matrix=s, u_matrix=u, phi=phi)


FIB = fibonacci_tensors()


def tadpole_states(tensors: FibonacciTensorSet = FIB) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The tadpole's B_p = 1 state and the two spanning B_p = 0 states.

    Each is a length-4 real vector over (tail, head), little-endian: index
    ``tail + 2 * head``.
    """
    phi = tensors.phi
    norm = math.sqrt(1 + phi * phi)
    ones = np.zeros(4)
    ones[0], ones[2] = 1 / norm, phi / norm
    zero_a = np.zeros(4)
    zero_a[0], zero_a[2] = phi / norm, -1 / norm
    zero_b = np.zeros(4)
    zero_b[3] = 1.0
    return ones, zero_a, zero_b
