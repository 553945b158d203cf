"""Brute-force plaquette and vertex operators assembled from the tensor data."""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

import numpy as np

from .lattice import TrivalentLattice, build_plaquette, valid_indices, valid_mask
from .tensors import FIB, FibonacciTensorSet, delta

MAX_ORACLE_SIDES = 6


def _bit(i: int, q: int) -> int:
    return (i >> q) & 1


def plaquette_block(valid: np.ndarray, inner: Sequence[int], outer: Sequence[int], s: int,
                    tensors: FibonacciTensorSet = FIB) -> np.ndarray:
    """Matrix of B_p^s on the span of the ``valid`` basis states.

    ``inner`` lists the plaquette edge qubits in cyclic order and ``outer[k]``
    the leg meeting ``inner[k-1]`` and ``inner[k]``.  Entry ``[r, c]`` is
    ``<valid[r]| B^s |valid[c]>``: the product over vertices of
    ``F^{a_k i_{k-1} i_k}_{s i'_k i'_{k-1}}``, with every other qubit fixed.
    """
    n = len(inner)
    inner_mask = sum(1 << q for q in inner)
    groups: dict[int, list[int]] = defaultdict(list)
    for pos, idx in enumerate(valid):
        groups[int(idx) & ~inner_mask].append(pos)
    f = tensors.f_tensor
    block = np.zeros((len(valid), len(valid)))
    for members in groups.values():
        for c in members:
            src = int(valid[c])
            i_old = [_bit(src, q) for q in inner]
            legs = [_bit(src, q) for q in outer]
            for r in members:
                dst = int(valid[r])
                i_new = [_bit(dst, q) for q in inner]
                val = 1.0
                for k in range(n):
                    val *= f[(legs[k], i_old[k - 1], s, i_new[k], i_old[k], i_new[k - 1])]
                    if val == 0.0:
                        break
                block[r, c] = val
    return block


def lattice_bp_block(lattice: TrivalentLattice, tensors: FibonacciTensorSet = FIB):
    """(valid indices, B_p block) for the lattice's single closed plaquette."""
    valid = valid_indices(lattice)
    p = lattice.plaquette()
    inner = [lattice.edges[e] for e in p.inner]
    outer = [lattice.edges[e] for e in p.outer]
    b0 = plaquette_block(valid, inner, outer, 0, tensors)
    b1 = plaquette_block(valid, inner, outer, 1, tensors)
    phi = tensors.phi
    return valid, (b0 + phi * b1) / (1 + phi * phi)


def bp_components(n: int, tensors: FibonacciTensorSet = FIB):
    """(valid indices, B^0 block, B^1 block, B_p block) for the n-gon; n = 1 is the tadpole."""
    if n == 1:
        lattice = TrivalentLattice({"t": (("x", 0), ("y", 0), ("y", 1))}, {"x": 0, "y": 1})
        inner, outer = [1], [0]
    else:
        if not 2 <= n <= MAX_ORACLE_SIDES:
            raise ValueError(f"oracle limited to 1..{MAX_ORACLE_SIDES} sides, got {n}")
        lattice = build_plaquette(n)
        inner, outer = list(range(n)), list(range(n, 2 * n))
    valid = valid_indices(lattice)
    b0 = plaquette_block(valid, inner, outer, 0, tensors)
    b1 = plaquette_block(valid, inner, outer, 1, tensors)
    phi = tensors.phi
    return valid, b0, b1, (b0 + phi * b1) / (1 + phi * phi)


def embed(valid: np.ndarray, block: np.ndarray, num_qubits: int) -> np.ndarray:
    full = np.zeros((1 << num_qubits, 1 << num_qubits), dtype=block.dtype)
    full[np.ix_(valid, valid)] = block
    return full


def bp_oracle(n: int, tensors: FibonacciTensorSet = FIB) -> np.ndarray:
    """Dense 2^(2n) x 2^(2n) plaquette projector; zero on vertex-violating states.

    Qubits follow :func:`build_plaquette` (inner edges, then outer legs);
    ``n = 1`` gives the 4 x 4 tadpole projector over (tail, head).
    """
    valid, _, _, bp = bp_components(n, tensors)
    return embed(valid, bp, 2 if n == 1 else 2 * n)


def vertex_projector_diag(num_qubits: int, qubits: tuple[int, int, int]) -> np.ndarray:
    """Diagonal of Q_v for one vertex."""
    return valid_mask(num_qubits, [qubits]).astype(float)


def qv_expected_syndrome(v1: int, v2: int, v3: int) -> int:
    return 1 - delta(v1, v2, v3)


def bp_spectral_split(n: int, tensors: FibonacciTensorSet = FIB, threshold: float = 0.5) -> tuple[int, int]:
    """(Dim[B_p = 1], Dim[B_p = 0]) on the valid n-gon space from the oracle spectrum."""
    _, _, _, bp = bp_components(n, tensors)
    ev = np.linalg.eigvalsh((bp + bp.T) / 2)
    ones = int(np.count_nonzero(ev > threshold))
    return ones, ev.size - ones
