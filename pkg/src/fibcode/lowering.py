"""Lowering of controlled reflections and large Toffolis to three-qubit Toffolis."""

from __future__ import annotations

from typing import Mapping, Sequence

from .circuit import Circuit, Gate, GateKind, cnot, ry, toffoli
from .tensors import FIB, FibonacciTensorSet, reflection_angle


def expand_controlled(gate: Gate, tensors: FibonacciTensorSet = FIB) -> list[Gate]:
    """Ry(-g), multi-controlled X, Ry(g) for a controlled reflection M = Ry(g) X Ry(-g)."""
    if gate.kind is not GateKind.CONTROLLED_2X2:
        return [gate]
    angle = reflection_angle(tensors.named_matrix(gate.matrix))
    t = gate.target
    middle = cnot(gate.controls[0], t) if len(gate.controls) == 1 else toffoli(*gate.qubits)
    return [ry(t, -angle), middle, ry(t, angle)]


def barenco_network(controls: Sequence[int], target: int, ancillas: Sequence[int]) -> list[Gate]:
    """Multi-controlled X from 4k - 8 Toffolis using k - 2 borrowed ancillas.

    The ancillas may be in any state and are returned to it.
    """
    k = len(controls)
    if k < 3:
        return [toffoli(*controls, target)]
    anc = list(ancillas[: k - 2])
    if len(anc) < k - 2:
        raise ValueError(f"{k}-control Toffoli needs {k - 2} ancillas, got {len(ancillas)}")
    operands = set(controls) | {target}
    if operands & set(anc) or len(set(anc)) != len(anc):
        raise ValueError("ancillas must be distinct and disjoint from the gate operands")

    c = list(controls)
    # ladder[j] writes c[j+2] AND anc[j] into anc[j+1] (or into the target for the last rung)
    rungs = [(c[j + 2], anc[j], anc[j + 1] if j + 1 < k - 2 else target) for j in range(k - 2)]
    top = rungs[-1]
    inner = rungs[:-1]
    base = (c[0], c[1], anc[0])

    def down_up(seq, core):
        return [toffoli(*r) for r in reversed(seq)] + [toffoli(*core)] + [toffoli(*r) for r in seq]

    first = [toffoli(*top)] + down_up(inner, base) + [toffoli(*top)]
    second = down_up(inner, base)
    return first + second


def lower_ntoffoli(circuit: Circuit, ancilla_assignment: Mapping[int, Sequence[int]],
                   tensors: FibonacciTensorSet = FIB) -> Circuit:
    """Replace every Toffoli with three or more controls by a Barenco network.

    ``ancilla_assignment`` maps the position of a gate in ``circuit.gates``
    to the borrowed qubits it may use.  Controlled reflections are expanded
    first; their ancillas are looked up under the reflection's own position.
    """
    out: list[Gate] = []
    for pos, gate in enumerate(circuit.gates):
        for g in expand_controlled(gate, tensors):
            if g.kind is GateKind.NTOFFOLI and len(g.controls) >= 3:
                if pos not in ancilla_assignment:
                    raise ValueError(f"gate {pos} ({len(g.qubits)}-qubit Toffoli) has no ancillas assigned")
                out.extend(barenco_network(g.controls, g.target, ancilla_assignment[pos]))
            else:
                out.append(g)
    return circuit.with_gates(out)


def idle_qubits(circuit: Circuit, pos: int) -> list[int]:
    """Qubits of ``circuit`` not touched by gate ``pos``, lowest first."""
    used = set(circuit.gates[pos].qubits)
    return [q for q in range(circuit.num_qubits) if q not in used]


def nearby_ancillas(circuit: Circuit) -> dict[int, list[int]]:
    """Assign idle register qubits to every gate that needs borrowed ancillas."""
    assignment = {}
    for pos, g in enumerate(circuit.gates):
        if g.kind in (GateKind.NTOFFOLI, GateKind.CONTROLLED_2X2) and len(g.controls) >= 3:
            need = len(g.controls) - 2
            free = idle_qubits(circuit, pos)
            if len(free) < need:
                raise ValueError(f"gate {pos} needs {need} ancillas but only {len(free)} qubits are idle")
            assignment[pos] = free[:need]
    return assignment
