"""Dense state-vector simulation on up to 16 qubits.

Basis indexing is little-endian: qubit 0 is the least significant bit of
the amplitude index.  Bit strings are written qubit 0 first, so the string
``"110"`` is the basis index ``0b011 == 3``.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

MAX_QUBITS = 16
UNITARY_ATOL = 1e-10
BRANCH_EPS = 1e-12


def bits_to_index(bits: str) -> int:
    if any(ch not in "01" for ch in bits):
        raise ValueError(f"bit string may contain only 0 and 1: {bits!r}")
    return sum(1 << q for q, ch in enumerate(bits) if ch == "1")


def index_to_bits(index: int, num_qubits: int) -> str:
    return "".join("1" if (index >> q) & 1 else "0" for q in range(num_qubits))


def check_unitary(u: np.ndarray, atol: float = UNITARY_ATOL) -> None:
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {u.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(2), rtol=0.0, atol=atol):
        raise ValueError("matrix is not unitary")


def apply_controlled(psi: np.ndarray, num_qubits: int, controls: Iterable[int],
                     target: int, u: np.ndarray) -> None:
    """In-place kernel on ``psi`` of shape ``(2**n,)`` or ``(2**n, batch)``.

    No validation; callers check operands.
    """
    batch = psi.shape[1:]
    view = psi.reshape((2,) * num_qubits + batch)
    idx: list = [slice(None)] * view.ndim
    for c in controls:
        idx[num_qubits - 1 - c] = 1
    tax = num_qubits - 1 - target
    idx[tax] = 0
    lo = tuple(idx)
    idx[tax] = 1
    hi = tuple(idx)
    a0 = view[lo].copy()
    a1 = view[hi].copy()
    view[lo] = u[0, 0] * a0 + u[0, 1] * a1
    view[hi] = u[1, 0] * a0 + u[1, 1] * a1


class StateVector:
    """Amplitudes of an ``num_qubits``-qubit pure state.

    Gate application mutates the instance in place and returns it, so calls
    can be chained.
    """

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in 1..{MAX_QUBITS}, got {num_qubits}")
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.size != 1 << num_qubits:
            raise ValueError(f"expected {1 << num_qubits} amplitudes, got {amps.size}")
        self.num_qubits = num_qubits
        self.amplitudes = amps

    @classmethod
    def basis_state(cls, num_qubits: int, bits: str) -> StateVector:
        if len(bits) != num_qubits:
            raise ValueError(f"bit string {bits!r} has length {len(bits)}, expected {num_qubits}")
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in 1..{MAX_QUBITS}, got {num_qubits}")
        amps = np.zeros(1 << num_qubits, dtype=complex)
        amps[bits_to_index(bits)] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def from_index(cls, num_qubits: int, index: int) -> StateVector:
        amps = np.zeros(1 << num_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    def copy(self) -> StateVector:
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def apply_controlled_unitary(self, controls: Iterable[int], target: int, u: np.ndarray,
                                 check: bool = True) -> StateVector:
        controls = tuple(controls)
        n = self.num_qubits
        if not 0 <= target < n or any(not 0 <= c < n for c in controls):
            raise IndexError(f"qubit index out of range for {n} qubits")
        if target in controls or len(set(controls)) != len(controls):
            raise ValueError("target and control qubits must be distinct")
        u = np.asarray(u, dtype=complex)
        if check:
            check_unitary(u)
        apply_controlled(self.amplitudes, n, controls, target, u)
        return self

    def probability_zero(self, q: int) -> float:
        if not 0 <= q < self.num_qubits:
            raise IndexError(f"qubit {q} out of range")
        mask = (np.arange(self.amplitudes.size) >> q) & 1
        return float(np.sum(np.abs(self.amplitudes[mask == 0]) ** 2))

    def measure_qubit(self, q: int) -> tuple[float, Optional[StateVector], Optional[StateVector]]:
        """Projective measurement of qubit ``q`` in the computational basis.

        Returns ``(prob0, state0, state1)`` where each post-measurement state
        is renormalized, or ``None`` when its branch probability is below
        1e-12.
        """
        if not 0 <= q < self.num_qubits:
            raise IndexError(f"qubit {q} out of range")
        mask = ((np.arange(self.amplitudes.size) >> q) & 1).astype(bool)
        weights = np.abs(self.amplitudes) ** 2
        total = float(weights.sum())
        p1 = float(weights[mask].sum()) / total
        p0 = float(weights[~mask].sum()) / total
        branches = []
        for keep, p in ((~mask, p0), (mask, p1)):
            if p < BRANCH_EPS:
                branches.append(None)
                continue
            amps = np.where(keep, self.amplitudes, 0.0)
            branches.append(StateVector(self.num_qubits, amps / np.linalg.norm(amps)))
        return p0, branches[0], branches[1]

    def dumps(self, threshold: float = 0.0) -> str:
        """Text dump: one ``<bits> <re> <im>`` line per nonzero amplitude."""
        lines = []
        for i, a in enumerate(self.amplitudes):
            if abs(a) > threshold:
                lines.append(f"{index_to_bits(i, self.num_qubits)} {a.real:.17g} {a.imag:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> StateVector:
        num_qubits = None
        entries = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected '<bits> <re> <im>', got {raw!r}")
            bits = parts[0]
            if num_qubits is None:
                num_qubits = len(bits)
            elif len(bits) != num_qubits:
                raise ValueError(f"line {lineno}: bit string length {len(bits)} != {num_qubits}")
            try:
                amp = complex(float(parts[1]), float(parts[2]))
            except ValueError:
                raise ValueError(f"line {lineno}: bad amplitude in {raw!r}") from None
            entries.append((bits_to_index(bits), amp))
        if num_qubits is None:
            raise ValueError("state dump is empty")
        amps = np.zeros(1 << num_qubits, dtype=complex)
        for i, a in entries:
            amps[i] += a
        return cls(num_qubits, amps)

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


def basis_state(num_qubits: int, bits: str) -> StateVector:
    return StateVector.basis_state(num_qubits, bits)


def equal_up_to_global_phase(s1, s2, tol: float = 1e-10) -> bool:
    """True iff ``s1 == lam * s2`` within ``tol`` for a phase read off ``s2``'s largest entry."""
    return global_phase_deviation(s1, s2) <= tol


def global_phase_deviation(s1, s2) -> float:
    a = s1.amplitudes if isinstance(s1, StateVector) else np.asarray(s1)
    b = s2.amplitudes if isinstance(s2, StateVector) else np.asarray(s2)
    if a.shape != b.shape:
        raise ValueError("states have different sizes")
    j = int(np.argmax(np.abs(b)))
    if abs(b[j]) == 0.0:
        return float(np.max(np.abs(a))) if a.size else 0.0
    lam = a[j] / b[j]
    if abs(lam) > 0:
        lam = lam / abs(lam)
    return float(np.max(np.abs(a - lam * b)))
