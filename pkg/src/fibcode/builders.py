"""Circuit builders for the vertex, F-move, S and plaquette operations."""

from __future__ import annotations

from typing import Sequence

from .circuit import Circuit, Gate, concat, cnot, cu, invert, ry, toffoli, x
from .lattice import (
    PENTAGON_MOVES,
    PULL_MOVES,
    FMoveRecord,
    apply_fmove,
    build_line_with_tadpole,
    build_pentagon_tree,
    reduction_plan,
    tadpole_roles,
)
from .tensors import FIB


def qv_circuit() -> Circuit:
    """Vertex check on qubits 0-2 with the syndrome on qubit 3.

    The syndrome ends as ``1 - delta(v1, v2, v3)``.
    """
    gates = [cnot(0, 3), cnot(1, 3), cnot(2, 3), toffoli(0, 1, 2, 3)]
    return Circuit(4, gates, {0: "v1", 1: "v2", 2: "v3", 3: "syndrome"})


def fmove_gates(a: int, b: int, c: int, d: int, e: int) -> list[Gate]:
    """F-move on qubit ``e`` with neighbors a, b, c, d; ``d`` may equal ``a``.

    Off the all-ones sector the fusion rule forces ``e' = e xor (a xor c)(b xor d)``,
    computed with a CNOT-sandwiched Toffoli.  The all-ones sector gets the
    controlled F reflection.  Both parts are involutions on disjoint control
    sectors, so the circuit squares to one.
    """
    if a == d:
        if len({a, b, c, e}) != 4:
            raise ValueError("reduced F-move needs four distinct qubits")
    elif len({a, b, c, d, e}) != 5:
        raise ValueError("F-move needs five distinct qubits")
    # b ^= d must precede a ^= c so that the reduced (a == d) case reads the original a.
    parity = [cnot(d, b), cnot(c, a)]
    controls = tuple(dict.fromkeys((a, b, c, d)))
    return (parity + [toffoli(a, b, e)] + parity[::-1]
            + [cu("F", controls, e)])


def f_circuit(a: int = 0, b: int = 1, c: int = 2, d: int = 3, e: int = 4,
              num_qubits: int | None = None) -> Circuit:
    n = num_qubits if num_qubits is not None else 1 + max(a, b, c, d, e)
    labels = {a: "a", b: "b", c: "c", d: "d", e: "e"}
    return Circuit(n, fmove_gates(a, b, c, d, e), labels)


def reduced_f_circuit(a: int = 0, b: int = 1, c: int = 2, e: int = 3,
                      num_qubits: int | None = None) -> Circuit:
    """F-move with the a and d neighbors on one qubit."""
    n = num_qubits if num_qubits is not None else 1 + max(a, b, c, e)
    return Circuit(n, fmove_gates(a, b, c, a, e), {a: "a=d", b: "b", c: "c", e: "e"})


def s_gates(tail: int, head: int, tensors=FIB) -> list[Gate]:
    """S on ``head`` iff ``tail`` is 0: Ry(-rho), CNOT, X, Ry(rho).

    With tail = 1 the head sees Ry(rho) X X Ry(-rho) = 1; with tail = 0 it
    sees Ry(rho) X Ry(-rho) = S.
    """
    return [ry(head, -tensors.rho), cnot(tail, head), x(head), ry(head, tensors.rho)]


def s_circuit(tail: int = 0, head: int = 1, num_qubits: int | None = None) -> Circuit:
    n = num_qubits if num_qubits is not None else 1 + max(tail, head)
    return Circuit(n, s_gates(tail, head), {tail: "tail", head: "head"})


def emit_fmove(record: FMoveRecord) -> list[Gate]:
    a, b, c, d, e = record.role_qubits()
    return fmove_gates(a, b, c, d, e)


def pentagon_records():
    lattice = build_pentagon_tree()
    records = []
    for edge in PENTAGON_MOVES:
        lattice, rec = apply_fmove(lattice, edge)
        records.append(rec)
    return build_pentagon_tree(), records, lattice


def pentagon_circuit() -> Circuit:
    """Five F-moves around the pentagon on qubits 0..6 (edges 1..7)."""
    _, records, _ = pentagon_records()
    labels = {q: str(q + 1) for q in range(7)}
    return concat(7, [emit_fmove(r) for r in records], labels)


def pentagon_simple_circuit() -> Circuit:
    """Pentagon circuit with every leaf fixed to 1: alternating controlled-F on two qubits.

    Qubit 0 carries edge 5 and qubit 1 edge 6.
    """
    local = {"5": 0, "6": 1}
    gates = []
    for edge in PENTAGON_MOVES:
        tgt = local[edge]
        gates.append(cu("F", (1 - tgt,), tgt))
    return Circuit(2, gates, {0: "5", 1: "6"})


def bp_forward(n: int) -> tuple[list[Gate], int, int]:
    """Reduction of the n-gon followed by S on the tadpole; returns (gates, tail, head)."""
    records = reduction_plan(n)
    gates: list[Gate] = []
    for r in records:
        gates.extend(emit_fmove(r))
    tail_edge, head_edge = tadpole_roles(records[-1].lattice)
    edges = records[-1].lattice.edges
    tail, head = edges[tail_edge], edges[head_edge]
    gates.extend(s_gates(tail, head))
    return gates, tail, head


def bp_measure_circuit(n: int) -> Circuit:
    """Plaquette measurement on 2n qubits plus a syndrome qubit (index 2n).

    Palindromic: reduction and S, a CNOT from the tadpole head to the
    syndrome, then the inverse of the first half.
    """
    if not 2 <= n <= 6:
        raise ValueError(f"plaquette sides must be in 2..6, got {n}")
    fwd, _, head = bp_forward(n)
    syn = 2 * n
    half = Circuit(syn + 1, fwd)
    labels = {k - 1: f"i{k}" for k in range(1, n + 1)}
    labels.update({n + k - 1: f"a{k}" for k in range(1, n + 1)})
    labels[syn] = "syndrome"
    return concat(syn + 1, [half, [cnot(head, syn)], invert(half)], labels)


def pull_records():
    lattice = build_line_with_tadpole()
    records = []
    for edge in PULL_MOVES:
        lattice, rec = apply_fmove(lattice, edge)
        records.append(rec)
    return build_line_with_tadpole(), records, lattice


def tadpole_pull_circuit() -> Circuit:
    """S on tadpole (tail 3, head 4), two reduced F-moves, S on the new tadpole (tail 4, head 3).

    Qubits 0..3 carry edges 1..4.
    """
    _, records, final = pull_records()
    tail_edge, head_edge = tadpole_roles(final)
    parts: list[Sequence[Gate]] = [s_gates(2, 3)]
    parts += [emit_fmove(r) for r in records]
    parts.append(s_gates(final.edges[tail_edge], final.edges[head_edge]))
    return concat(4, parts, {q: str(q + 1) for q in range(4)})


def tadpole_pull_rhs() -> Circuit:
    """SWAP of the tadpole qubits, then U on qubit 4 when qubits 1, 2 and 3 are set."""
    swap = [cnot(2, 3), cnot(3, 2), cnot(2, 3)]
    return Circuit(4, swap + [cu("U", (0, 1, 2), 3)], {q: str(q + 1) for q in range(4)})


def pull_simple_circuit() -> Circuit:
    """Two-qubit pull-through with the line qubits fixed to 1; qubit 0 is edge 3, qubit 1 edge 4.

    Each reduced F-move collapses to "X on the moved edge if the other tadpole
    qubit is 0, F if it is 1", written as X, CNOT, controlled-F.
    """
    def moved(ctrl, tgt):
        return [x(tgt), cnot(ctrl, tgt), cu("F", (ctrl,), tgt)]

    gates = s_gates(0, 1) + moved(1, 0) + moved(0, 1) + s_gates(1, 0)
    return Circuit(2, gates, {0: "3", 1: "4"})


def pull_simple_rhs() -> Circuit:
    swap = [cnot(0, 1), cnot(1, 0), cnot(0, 1)]
    return Circuit(2, swap + [cu("U", (0,), 1)], {0: "3", 1: "4"})


def pull_calibration_circuit() -> Circuit:
    """Two-qubit pull-through with the NOT gates moved across: X on qubit 0 first, X on qubit 1 last."""
    inner = pull_simple_circuit()
    return Circuit(2, (x(0),) + inner.gates + (x(1),), inner.labels)


def pull_calibration_rhs() -> Circuit:
    swap = [cnot(0, 1), cnot(1, 0), cnot(0, 1)]
    return Circuit(2, swap + [cu("XUX", (0,), 1)], {0: "3", 1: "4"})
