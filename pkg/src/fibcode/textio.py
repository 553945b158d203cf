"""Line-oriented circuit text format.

::

    qubits 5
    # label 0 a
    cnot 3 1
    toffoli 0 1 4
    ntoffoli 0 1 2 3 4
    ry 4 -0.66623943249251527
    cu F 0 1 2 3 4
    x 2

Angles are radians written with 17 significant digits, which round-trips
every double exactly.  ``# label <q> <role>`` comments carry qubit labels;
other comments are ignored.
"""

from __future__ import annotations

import re

from .circuit import MATRIX_NAMES, Circuit, Gate, GateKind, cnot, cu, ry, toffoli, x

_LABEL = re.compile(r"#\s*label\s+(\d+)\s+(\S+)\s*$")


class CircuitParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def format_gate(g: Gate) -> str:
    qs = " ".join(str(q) for q in g.qubits)
    if g.kind is GateKind.X:
        return f"x {qs}"
    if g.kind is GateKind.CNOT:
        return f"cnot {qs}"
    if g.kind is GateKind.NTOFFOLI:
        return f"{'toffoli' if len(g.qubits) == 3 else 'ntoffoli'} {qs}"
    if g.kind is GateKind.RY:
        return f"ry {qs} {g.angle:.17g}"
    return f"cu {g.matrix} {qs}"


def export_text(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.num_qubits}"]
    for q in sorted(circuit.labels):
        lines.append(f"# label {q} {circuit.labels[q]}")
    lines.extend(format_gate(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def _columns(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def import_text(text: str) -> Circuit:
    num_qubits = None
    gates = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        m = _LABEL.match(raw.strip())
        if m:
            labels[int(m.group(1))] = m.group(2)
            continue
        body = raw.split("#", 1)[0]
        toks = _columns(body)
        if not toks:
            continue
        op, col = toks[0]
        args = toks[1:]

        def ints(items):
            out = []
            for tok, c in items:
                if not tok.isdigit():
                    raise CircuitParseError(f"expected a qubit index, got {tok!r}", lineno, c)
                out.append(int(tok))
            return out

        def need(count, exact=True):
            if (exact and len(args) != count) or (not exact and len(args) < count):
                want = f"{count}" if exact else f"at least {count}"
                raise CircuitParseError(f"'{op}' takes {want} operand(s), got {len(args)}", lineno, col)

        try:
            if op == "qubits":
                need(1)
                if num_qubits is not None:
                    raise CircuitParseError("duplicate 'qubits' header", lineno, col)
                num_qubits = ints(args)[0]
                continue
            if op == "x":
                need(1)
                gates.append(x(*ints(args)))
            elif op == "cnot":
                need(2)
                gates.append(cnot(*ints(args)))
            elif op == "toffoli":
                need(3)
                gates.append(toffoli(*ints(args)))
            elif op == "ntoffoli":
                need(3, exact=False)
                gates.append(toffoli(*ints(args)))
            elif op == "ry":
                need(2)
                (q,) = ints(args[:1])
                tok, c = args[1]
                try:
                    angle = float(tok)
                except ValueError:
                    raise CircuitParseError(f"bad angle {tok!r}", lineno, c) from None
                gates.append(ry(q, angle))
            elif op == "cu":
                need(3, exact=False)
                name, c = args[0]
                if name not in MATRIX_NAMES:
                    raise CircuitParseError(f"unknown matrix {name!r}", lineno, c)
                qs = ints(args[1:])
                gates.append(cu(name, qs[:-1], qs[-1]))
            else:
                raise CircuitParseError(f"unknown gate {op!r}", lineno, col)
        except CircuitParseError:
            raise
        except ValueError as exc:
            raise CircuitParseError(str(exc), lineno, col) from None
    if num_qubits is None:
        if not gates:
            raise CircuitParseError("missing 'qubits' header", 1, 1)
        num_qubits = 1 + max(max(g.qubits) for g in gates)
    try:
        return Circuit(num_qubits, tuple(gates), labels)
    except ValueError as exc:
        raise CircuitParseError(str(exc), 1, 1) from None
