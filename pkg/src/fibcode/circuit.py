"""Gate-list circuit IR: construction, simulation, inversion and counting."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .statevec import StateVector, apply_controlled, check_unitary
from .tensors import FIB, FibonacciTensorSet, ry_matrix

MATRIX_NAMES = ("F", "S", "U", "XUX")
UNITARY_QUBIT_LIMIT = 13

_X = np.array([[0.0, 1.0], [1.0, 0.0]])


class GateKind(enum.Enum):
    X = "x"
    CNOT = "cnot"
    NTOFFOLI = "ntoffoli"
    RY = "ry"
    CONTROLLED_2X2 = "cu"


@dataclass(frozen=True)
class Gate:
    """One gate.  ``qubits`` lists the controls first and the target last."""

    kind: GateKind
    qubits: tuple[int, ...]
    angle: Optional[float] = None
    matrix: Optional[str] = None

    def __post_init__(self):
        qs = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qs)
        if any(q < 0 for q in qs):
            raise ValueError(f"negative qubit index in {qs}")
        if len(set(qs)) != len(qs):
            raise ValueError(f"gate operands must be distinct, got {qs}")
        arity = {GateKind.X: 1, GateKind.RY: 1, GateKind.CNOT: 2}
        if self.kind in arity and len(qs) != arity[self.kind]:
            raise ValueError(f"{self.kind.value} takes {arity[self.kind]} qubit(s), got {len(qs)}")
        if self.kind is GateKind.NTOFFOLI and len(qs) < 3:
            raise ValueError("ntoffoli needs at least two controls")
        if self.kind is GateKind.CONTROLLED_2X2:
            if len(qs) < 2:
                raise ValueError("controlled 2x2 gate needs at least one control")
            if self.matrix not in MATRIX_NAMES:
                raise ValueError(f"matrix name must be one of {MATRIX_NAMES}, got {self.matrix!r}")
        elif self.matrix is not None:
            raise ValueError(f"{self.kind.value} takes no matrix name")
        if self.kind is GateKind.RY:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"ry angle must be finite, got {self.angle!r}")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind.value} takes no angle")

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def matrix_2x2(self, tensors: FibonacciTensorSet = FIB) -> np.ndarray:
        if self.kind is GateKind.RY:
            return ry_matrix(self.angle)
        if self.kind is GateKind.CONTROLLED_2X2:
            return tensors.named_matrix(self.matrix)
        return _X

    def inverse(self) -> Gate:
        if self.kind is GateKind.RY:
            return Gate(GateKind.RY, self.qubits, angle=-self.angle)
        # X, CNOT, Toffolis and the named reflections all square to one.
        return self

    def remap(self, mapping: Mapping[int, int]) -> Gate:
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.angle, self.matrix)


def x(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def toffoli(*qubits: int) -> Gate:
    """Multi-controlled X; the last argument is the target."""
    return Gate(GateKind.NTOFFOLI, tuple(qubits))


def ry(q: int, angle: float) -> Gate:
    return Gate(GateKind.RY, (q,), angle=angle)


def cu(name: str, controls: Sequence[int], target: int) -> Gate:
    return Gate(GateKind.CONTROLLED_2X2, (*controls, target), matrix=name)


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        for g in gates:
            if max(g.qubits) >= self.num_qubits:
                raise ValueError(f"gate {g} touches a qubit >= {self.num_qubits}")
        for q in self.labels:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"label on qubit {q} outside the register")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if not isinstance(other, Circuit):
            return NotImplemented
        n = max(self.num_qubits, other.num_qubits)
        labels = {**other.labels, **self.labels}
        return Circuit(n, self.gates + other.gates, labels)

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.num_qubits, tuple(gates), self.labels)

    def widened(self, num_qubits: int) -> Circuit:
        return Circuit(num_qubits, self.gates, self.labels)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (self.num_qubits == other.num_qubits and self.gates == other.gates
                and dict(self.labels) == dict(other.labels))

    __hash__ = None


def concat(num_qubits: int, parts: Iterable[Circuit | Sequence[Gate]],
           labels: Optional[Mapping[int, str]] = None) -> Circuit:
    gates: list[Gate] = []
    for p in parts:
        gates.extend(p.gates if isinstance(p, Circuit) else p)
    return Circuit(num_qubits, tuple(gates), labels or {})


def invert(circuit: Circuit) -> Circuit:
    return circuit.with_gates(g.inverse() for g in reversed(circuit.gates))


def _run(circuit: Circuit, psi: np.ndarray, tensors: FibonacciTensorSet, strict: bool) -> None:
    cache: dict[tuple, np.ndarray] = {}
    for g in circuit.gates:
        key = (g.kind, g.angle, g.matrix)
        u = cache.get(key)
        if u is None:
            u = np.asarray(g.matrix_2x2(tensors), dtype=complex)
            if strict:
                check_unitary(u)
            cache[key] = u
        apply_controlled(psi, circuit.num_qubits, g.controls, g.target, u)


def simulate(circuit: Circuit, state: StateVector, tensors: FibonacciTensorSet = FIB,
             strict: bool = True) -> StateVector:
    """Apply the gates in order to a copy of ``state``.

    With ``strict=False`` named matrices are not checked for unitarity, which
    lets verification suites run on deliberately corrupted tensor data.
    """
    if state.num_qubits != circuit.num_qubits:
        raise ValueError(f"state has {state.num_qubits} qubits, circuit has {circuit.num_qubits}")
    out = state.copy()
    _run(circuit, out.amplitudes, tensors, strict)
    return out


def simulate_batch(circuit: Circuit, columns: np.ndarray, tensors: FibonacciTensorSet = FIB,
                   strict: bool = True) -> np.ndarray:
    """Simulate every column of a ``(2**n, k)`` array at once."""
    psi = np.array(columns, dtype=complex)
    if psi.ndim != 2 or psi.shape[0] != 1 << circuit.num_qubits:
        raise ValueError(f"columns must have shape (2**{circuit.num_qubits}, k)")
    _run(circuit, psi, tensors, strict)
    return psi


def simulate_basis(circuit: Circuit, indices: Sequence[int], tensors: FibonacciTensorSet = FIB,
                   strict: bool = True) -> np.ndarray:
    """Output columns for the given computational-basis inputs."""
    psi = np.zeros((1 << circuit.num_qubits, len(indices)), dtype=complex)
    psi[np.asarray(indices, dtype=int), np.arange(len(indices))] = 1.0
    _run(circuit, psi, tensors, strict)
    return psi


def unitary_of(circuit: Circuit, tensors: FibonacciTensorSet = FIB, strict: bool = True) -> np.ndarray:
    if circuit.num_qubits > UNITARY_QUBIT_LIMIT:
        raise ValueError(f"unitary extraction limited to {UNITARY_QUBIT_LIMIT} qubits")
    dim = 1 << circuit.num_qubits
    return simulate_basis(circuit, range(dim), tensors, strict)


class CostModel(enum.Enum):
    DECOMPOSED = "decomposed"
    PRIMITIVE_NTOFFOLI = "primitive"


@dataclass(frozen=True)
class GateCounts:
    toffoli3: int = 0
    toffoli4: int = 0
    toffoli5: int = 0
    cnot: int = 0
    single_qubit_rotation: int = 0
    cost_model: CostModel = CostModel.DECOMPOSED
    # NOT gates are listed for completeness; the published tallies omit them.
    x: int = 0

    def as_dict(self) -> dict:
        return {
            "cost_model": self.cost_model.value,
            "toffoli3": self.toffoli3,
            "toffoli4": self.toffoli4,
            "toffoli5": self.toffoli5,
            "cnot": self.cnot,
            "rotations": self.single_qubit_rotation,
            "x": self.x,
        }

    def summary(self) -> str:
        if self.cost_model is CostModel.DECOMPOSED:
            return f"toffoli={self.toffoli3} cnot={self.cnot} rotations={self.single_qubit_rotation}"
        return (f"toffoli5={self.toffoli5} toffoli4={self.toffoli4} toffoli={self.toffoli3} "
                f"cnot={self.cnot} rotations={self.single_qubit_rotation}")


def barenco_toffoli_count(num_qubits: int) -> int:
    """Three-qubit Toffolis for an n-qubit Toffoli with n - 3 borrowed ancillas."""
    if num_qubits < 3:
        raise ValueError("a Toffoli gate has at least three qubits")
    return 1 if num_qubits == 3 else 4 * num_qubits - 12


def count_gates(circuit: Circuit, cost_model: CostModel = CostModel.DECOMPOSED) -> GateCounts:
    """Tally gates under one of the two cost models.

    A controlled 2x2 reflection with c controls counts as Ry, (c+1)-qubit
    Toffoli (a CNOT when c == 1), Ry.
    """
    tally = {3: 0, 4: 0, 5: 0}
    cnots = rotations = xs = 0

    def add_toffoli(arity: int):
        nonlocal cnots
        if arity == 2:
            cnots += 1
        elif cost_model is CostModel.DECOMPOSED:
            tally[3] += barenco_toffoli_count(arity)
        elif arity in tally:
            tally[arity] += 1
        else:
            raise ValueError(f"no primitive tally for a {arity}-qubit Toffoli")

    for g in circuit.gates:
        if g.kind is GateKind.X:
            xs += 1
        elif g.kind is GateKind.CNOT:
            cnots += 1
        elif g.kind is GateKind.RY:
            rotations += 1
        elif g.kind is GateKind.NTOFFOLI:
            add_toffoli(len(g.qubits))
        else:
            add_toffoli(len(g.qubits))
            rotations += 2
    return GateCounts(tally[3], tally[4], tally[5], cnots, rotations, cost_model, xs)
