"""Acceptance criteria, one test each, with runtime limits.

Each criterion prints ``PASS`` or ``FAIL`` with its measured values.  The
lines are also collected into the pytest terminal summary, and running this
file directly (``python tests/test_acceptance.py``) prints them without pytest.
"""

import time

import numpy as np
import pytest

from fibcode import builders, verify
from fibcode.circuit import Circuit, CostModel, count_gates, simulate_basis, toffoli
from fibcode.lattice import build_plaquette, enumerate_valid_states
from fibcode.lowering import barenco_network
from fibcode.oracles import bp_spectral_split
from fibcode.tensors import FIB, fibonacci

D, P = CostModel.DECOMPOSED, CostModel.PRIMITIVE_NTOFFOLI
RESULTS: list[str] = []


def _prim(c):
    return (c.toffoli5, c.toffoli4, c.toffoli3, c.cnot, c.single_qubit_rotation)


def _dec(c):
    return (c.toffoli3, c.cnot, c.single_qubit_rotation)


def crit_qv_counts():
    d = count_gates(builders.qv_circuit(), D)
    p = count_gates(builders.qv_circuit(), P)
    ok = (d.toffoli3, d.cnot) == (4, 3) and (p.toffoli4, p.toffoli3, p.cnot) == (1, 0, 3)
    return ok, f"decomposed={_dec(d)} primitive={_prim(p)}"


def crit_f_counts():
    f_d = _dec(count_gates(builders.f_circuit(), D))
    f_p = _prim(count_gates(builders.f_circuit(), P))
    r_d = _dec(count_gates(builders.reduced_f_circuit(), D))
    ok = f_d == (9, 4, 2) and f_p == (1, 0, 1, 4, 2) and r_d == (5, 4, 2)
    return ok, f"F={f_d} F_primitive={f_p} reduced={r_d}"


def crit_bp_counts():
    bad = []
    for n in range(2, 7):
        c = builders.bp_measure_circuit(n)
        if _dec(count_gates(c, D)) != (18 * n - 26, 8 * n - 5, 4 * n):
            bad.append(f"n={n}:decomposed")
        if _prim(count_gates(c, P)) != (2 * n - 4, 2, 2 * n - 2, 8 * n - 5, 4 * n):
            bad.append(f"n={n}:primitive")
    return not bad, "n=2..6 exact" if not bad else " ".join(bad)


def crit_dimensions():
    rows = []
    ok = True
    for n in range(2, 7):
        count = len(enumerate_valid_states(build_plaquette(n)))
        want = fibonacci(2 * n - 1) + fibonacci(2 * n + 1)
        ok &= count == want
        rows.append(f"{n}:{count}")
    split = bp_spectral_split(6, threshold=0.5)
    ok &= split == (89, 233)
    return ok, f"valid={' '.join(rows)} hexagon_split={split[0]}/{split[1]}"


def crit_pentagon():
    full = verify.verify_pentagon()
    simple = verify.verify_pentagon_simple()
    ok = (full.passed and full.max_deviation <= 1e-10
          and simple.passed and simple.max_deviation <= 1e-12 and simple.cases_total == 4)
    return ok, (f"cases={full.cases_passed}/{full.cases_total} dev={full.max_deviation:.2e} "
                f"simple_dev={simple.max_deviation:.2e} witness={full.witness or simple.witness}")


def crit_bp_measure():
    devs = []
    ok = True
    for n in range(2, 7):
        r = verify.verify_bp(n)
        ok &= r.passed
        devs.append(f"{n}:{r.max_deviation:.1e}")
        if not r.passed:
            devs.append(f"witness={r.witness}")
    return ok, " ".join(devs)


def crit_lowering():
    ok = True
    parts = []
    for k in (3, 4):
        nq = 2 * k - 1
        net = Circuit(nq, barenco_network(list(range(k)), k, list(range(k + 1, nq))))
        ref = Circuit(nq, [toffoli(*range(k + 1))])
        inputs = range(1 << nq)
        dev = float(np.max(np.abs(simulate_basis(net, inputs) - simulate_basis(ref, inputs))))
        want = 4 if k == 3 else 8
        ok &= dev <= 1e-12 and len(net) == want and all(len(g.qubits) == 3 for g in net)
        parts.append(f"{k + 1}-qubit: {len(net)} toffolis over {1 << nq} inputs dev={dev:.1e}")
    return ok, "; ".join(parts)


def crit_pull_through():
    big = verify.verify_tadpole_pull()
    small = verify.verify_pull_simple()
    ok = big.passed and small.passed
    return ok, (f"pull={big.cases_passed}/{big.cases_total} dev={big.max_deviation:.1e} "
                f"simple={small.cases_passed}/{small.cases_total} witness={big.witness or small.witness}")


def crit_commutation():
    r = verify.verify_commutation((2, 3, 6))
    return r.passed, f"checks={r.cases_passed}/{r.cases_total} dev={r.max_deviation:.1e}"


def crit_mutation():
    caught = []
    for row in (0, 1):
        for col in (0, 1):
            for eps in (1e-3, -1e-3):
                bad = FIB.perturbed(row, col, eps)
                p = verify.verify_pentagon(bad)
                b = verify.verify_bp(2, bad)
                caught.append(not p.passed and p.witness is not None
                              and not b.passed and b.witness is not None)
    return all(caught), f"detected {sum(caught)}/{len(caught)} perturbations"


CRITERIA = [
    (1, "gate counts Q_v", crit_qv_counts, 1.0),
    (2, "gate counts F circuits", crit_f_counts, 1.0),
    (3, "gate counts B_p n=2..6", crit_bp_counts, 1.0),
    (4, "dimension counts", crit_dimensions, 10.0),
    (5, "pentagon identity", crit_pentagon, 5.0),
    (6, "B_p measurement equivalence", crit_bp_measure, 60.0),
    (7, "Barenco lowering", crit_lowering, 5.0),
    (8, "tadpole pull-through", crit_pull_through, 5.0),
    (9, "commutation suite", crit_commutation, 60.0),
    (10, "mutation sensitivity", crit_mutation, 10.0),
]


def evaluate(num, title, fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    ok = bool(ok) and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'} criterion {num:>2}: {title} ({detail}; {elapsed:.2f}s < {limit:g}s)"
    return ok, line


@pytest.mark.parametrize("num,title,fn,limit", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, limit):
    ok, line = evaluate(num, title, fn, limit)
    print(line)
    RESULTS.append(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for c in CRITERIA:
        ok, line = evaluate(*c)
        print(line)
        failures += not ok
    raise SystemExit(1 if failures else 0)
