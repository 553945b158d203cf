"""Command-line front end: verification suites, gate counts, dimensions, export and measurement.

Reports go to stdout as JSON lines (or a table with ``--pretty``);
diagnostics go to stderr.  Exit status is 0 on success, 1 when a
verification fails and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional, Sequence

import numpy as np

from . import builders, verify
from .circuit import Circuit, CostModel, count_gates, simulate
from .lattice import build_plaquette, enumerate_valid_states, plaquette_dimensions
from .oracles import bp_spectral_split
from .statevec import StateVector
from .textio import export_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CIRCUITS: dict[str, Callable[..., Circuit]] = {
    "qv": lambda n: builders.qv_circuit(),
    "f": lambda n: builders.f_circuit(),
    "reduced-f": lambda n: builders.reduced_f_circuit(),
    "s": lambda n: builders.s_circuit(),
    "bp": lambda n: builders.bp_measure_circuit(n),
    "pentagon": lambda n: builders.pentagon_circuit(),
    "pentagon-simple": lambda n: builders.pentagon_simple_circuit(),
    "tadpole-pull": lambda n: builders.tadpole_pull_circuit(),
    "pull-simple": lambda n: builders.pull_simple_circuit(),
    "pull-calibration": lambda n: builders.pull_calibration_circuit(),
}
COUNT_CIRCUITS = ("qv", "f", "reduced-f", "s", "bp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _sides(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"sides must be an integer, got {value!r}") from None
    if not 2 <= n <= 6:
        raise argparse.ArgumentTypeError(f"sides must be in 2..6, got {n}")
    return n


def _tol(value: str) -> float:
    try:
        t = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance must be a number, got {value!r}") from None
    if not t > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return t


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON lines")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized smoke tests (default 0)")
    common.add_argument("--tol", type=_tol, default=None, help="override the comparison tolerance")

    p = _Parser(prog="fibcode", description="Fibonacci code measurement circuits and their checks.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=["pentagon", "bp", "tadpole-pull", "commutation", "all"])
    v.add_argument("--sides", type=_sides, default=None)

    c = sub.add_parser("counts", parents=[common], help="gate counts under a cost model")
    c.add_argument("--circuit", required=True, choices=COUNT_CIRCUITS)
    c.add_argument("--sides", type=_sides, default=None)
    c.add_argument("--model", required=True, choices=[m.value for m in CostModel])

    d = sub.add_parser("dims", parents=[common], help="B_p eigenspace dimensions of an n-gon")
    d.add_argument("--sides", type=_sides, required=True)

    e = sub.add_parser("export", parents=[common], help="write a circuit in the text format")
    e.add_argument("--circuit", required=True, choices=sorted(CIRCUITS))
    e.add_argument("--sides", type=_sides, default=None)
    e.add_argument("--out", required=True)

    m = sub.add_parser("measure", parents=[common], help="measure Q_v or B_p on a state dump")
    m.add_argument("operator", choices=["qv", "bp"])
    m.add_argument("--state", required=True)
    m.add_argument("--sides", type=_sides, default=None)
    return p


def _emit(out, reports: Sequence[dict], pretty: bool) -> None:
    if not pretty:
        for r in reports:
            out.write(json.dumps(r, sort_keys=False) + "\n")
        return
    for r in reports:
        for key, val in r.items():
            if isinstance(val, dict):
                val = json.dumps(val)
            out.write(f"{key:<16} {val}\n")
        out.write("\n")


def _need_sides(args, what: str) -> int:
    if args.sides is None:
        raise UsageError(f"{what} needs --sides N")
    return args.sides


def _cmd_verify(args, out) -> int:
    suite = args.suite
    if suite == "pentagon":
        reports = [verify.verify_pentagon(tol=args.tol), verify.verify_pentagon_simple()]
    elif suite == "bp":
        reports = [verify.verify_bp(_need_sides(args, "verify bp"), seed=args.seed, tol=args.tol)]
    elif suite == "tadpole-pull":
        reports = [verify.verify_tadpole_pull(tol=args.tol), verify.verify_pull_simple()]
    elif suite == "commutation":
        reports = [verify.verify_commutation(tol=args.tol)]
    else:
        reports = verify.verify_all(seed=args.seed, tol=args.tol)
    rows = []
    for r in reports:
        d = r.to_dict()
        d["passed"] = r.passed
        rows.append(d)
    _emit(out, rows, args.pretty)
    failed = [r.name for r in reports if not r.passed]
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_counts(args, out) -> int:
    n = _need_sides(args, "counts --circuit bp") if args.circuit == "bp" else args.sides
    counts = count_gates(CIRCUITS[args.circuit](n), CostModel(args.model))
    if args.pretty:
        row = {"circuit": args.circuit, **({"sides": n} if args.circuit == "bp" else {}), **counts.as_dict()}
        _emit(out, [row], True)
    else:
        out.write(counts.summary() + "\n")
    return EXIT_OK


def _cmd_dims(args, out) -> int:
    n = args.sides
    ones, zeros = plaquette_dimensions(n)
    enumerated = len(enumerate_valid_states(build_plaquette(n)))
    split = bp_spectral_split(n)
    ok = enumerated == ones + zeros and split == (ones, zeros)
    if args.pretty:
        _emit(out, [{"sides": n, "bp1": ones, "bp0": zeros, "total": ones + zeros,
                     "enumerated": enumerated, "spectral_bp1": split[0], "spectral_bp0": split[1],
                     "match": ok}], True)
    else:
        out.write(f"{ones} {zeros} {ones + zeros}\n")
        out.write(f"enumerated={enumerated} spectral={split[0]}/{split[1]} match={'yes' if ok else 'no'}\n")
    if not ok:
        print("dimension cross-check failed", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_export(args, out) -> int:
    if args.circuit == "bp":
        _need_sides(args, "export --circuit bp")
    text = export_text(CIRCUITS[args.circuit](args.sides))
    with open(args.out, "w") as fh:
        fh.write(text)
    return EXIT_OK


def _data_state(state: StateVector, syndrome: int, outcome: int) -> StateVector:
    """Drop the syndrome qubit (the highest index) after it was found in ``outcome``."""
    half = 1 << syndrome
    amps = state.amplitudes[outcome * half:(outcome + 1) * half]
    return StateVector(syndrome, amps)


def _cmd_measure(args, out) -> int:
    with open(args.state) as fh:
        data = StateVector.loads(fh.read())
    if args.operator == "qv":
        circuit, want = builders.qv_circuit(), 3
    else:
        n = _need_sides(args, "measure bp")
        circuit, want = builders.bp_measure_circuit(n), 2 * n
    if data.num_qubits != want:
        raise UsageError(f"state has {data.num_qubits} qubits, {args.operator} expects {want}")
    norm = data.norm()
    if norm == 0.0:
        raise UsageError("state has zero norm")
    amps = np.concatenate([data.amplitudes / norm, np.zeros(1 << want, dtype=complex)])
    final = simulate(circuit, StateVector(want + 1, amps))
    p0, s0, s1 = final.measure_qubit(want)
    row = {"operator": args.operator, "num_qubits": want, "prob0": p0, "prob1": 1.0 - p0,
           "state0": _data_state(s0, want, 0).dumps(1e-15) if s0 is not None else None,
           "state1": _data_state(s1, want, 1).dumps(1e-15) if s1 is not None else None}
    if args.operator == "bp":
        row["sides"] = args.sides
    _emit(out, [row], args.pretty)
    return EXIT_OK


COMMANDS = {"verify": _cmd_verify, "counts": _cmd_counts, "dims": _cmd_dims,
            "export": _cmd_export, "measure": _cmd_measure}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"fibcode: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
