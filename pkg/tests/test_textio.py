import pytest

from fibcode import builders
from fibcode.textio import CircuitParseError, export_text, import_text


@pytest.mark.parametrize("make", [
    builders.qv_circuit, builders.f_circuit, builders.reduced_f_circuit, builders.s_circuit,
    builders.pentagon_circuit, builders.tadpole_pull_circuit, builders.pull_calibration_circuit,
    lambda: builders.bp_measure_circuit(4),
])
def test_round_trip(make):
    c = make()
    text = export_text(c)
    back = import_text(text)
    assert back == c
    assert export_text(back) == text


def test_error_location():
    with pytest.raises(CircuitParseError, match="line 1"):
        import_text("toffoli 0")
    with pytest.raises(CircuitParseError) as info:
        import_text("qubits 3\ncnot 0 x\n")
    assert info.value.line == 2 and info.value.column == 8


def test_unknown_op_and_header():
    with pytest.raises(CircuitParseError, match="line 2"):
        import_text("qubits 2\nswap 0 1\n")
    assert import_text("cnot 0 2\n").num_qubits == 3
    with pytest.raises(CircuitParseError):
        import_text("\n")
    with pytest.raises(CircuitParseError):
        import_text("qubits 2\nry 0 abc\n")


def test_comments_ignored():
    c = import_text("qubits 2  # two qubits\n# a note\ncnot 0 1 # entangle\n")
    assert len(c) == 1
