"""Verification suites comparing circuits against brute-force oracles.

Every suite returns a :class:`VerificationReport`.  Inputs that violate a
vertex constraint of the initial lattice are out of contract for the
F-move circuits and are counted in ``skipped_invalid`` rather than checked.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import builders
from .circuit import Circuit, simulate_basis, simulate_batch, toffoli, unitary_of
from .lattice import (
    apply_fmove,
    build_plaquette,
    reduction_plan,
    valid_indices,
)
from .lowering import barenco_network
from .oracles import bp_components, lattice_bp_block, vertex_projector_diag
from .statevec import index_to_bits
from .tensors import FIB, FibonacciTensorSet, delta

TOL_IDENTITY = 1e-10
TOL_EXACT = 1e-12
TOL_ORACLE = 1e-9


@dataclass
class VerificationReport:
    name: str
    cases_total: int = 0
    cases_passed: int = 0
    skipped_invalid: int = 0
    max_deviation: float = 0.0
    witness: Optional[str] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.cases_total > 0 and self.cases_passed == self.cases_total

    def record(self, deviation: float, tol: float, witness: str) -> bool:
        deviation = float(deviation)
        self.cases_total += 1
        self.max_deviation = max(self.max_deviation, deviation)
        ok = deviation <= tol
        if ok:
            self.cases_passed += 1
        elif self.witness is None:
            self.witness = witness
        return ok

    def merge(self, other: VerificationReport) -> VerificationReport:
        out = VerificationReport(
            self.name,
            self.cases_total + other.cases_total,
            self.cases_passed + other.cases_passed,
            self.skipped_invalid + other.skipped_invalid,
            max(self.max_deviation, other.max_deviation),
            self.witness if self.witness is not None else other.witness,
            {**other.details, **self.details},
        )
        return out

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "cases_total": self.cases_total,
            "cases_passed": self.cases_passed,
            "skipped_invalid": self.skipped_invalid,
            "max_deviation": self.max_deviation,
            "witness": self.witness,
        }
        if self.details:
            d["details"] = self.details
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def worker_count() -> int:
    """Worker cap from ``FIBCODE_THREADS``; 0 or unset means one per CPU (at most 8)."""
    raw = os.environ.get("FIBCODE_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FIBCODE_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("FIBCODE_THREADS must be >= 0")
    return n or min(8, os.cpu_count() or 1)


def _simulate_cases(circuit: Circuit, indices: Sequence[int], tensors, strict=False) -> np.ndarray:
    indices = list(indices)
    workers = min(worker_count(), max(1, len(indices) // 32))
    if workers <= 1:
        return simulate_basis(circuit, indices, tensors, strict)
    chunks = np.array_split(np.asarray(indices), workers)
    with ThreadPoolExecutor(workers) as pool:
        parts = list(pool.map(lambda ch: simulate_basis(circuit, ch, tensors, strict), chunks))
    return np.concatenate(parts, axis=1)


def _phase(actual: np.ndarray, expected: np.ndarray) -> complex:
    j = int(np.argmax(np.abs(expected)))
    lam = actual[j] / expected[j] if expected[j] != 0 else 1.0
    return lam / abs(lam) if abs(lam) > 0 else 1.0


def _compare(report: VerificationReport, inputs, actual: np.ndarray, expected: np.ndarray,
             num_qubits: int, tol: float, global_phase: bool = True) -> None:
    """Column-by-column comparison sharing one global phase fixed by the first column."""
    lam = _phase(actual[:, 0], expected[:, 0]) if global_phase and len(inputs) else 1.0
    for k, idx in enumerate(inputs):
        dev = np.max(np.abs(actual[:, k] - lam * expected[:, k]))
        report.record(dev, tol, index_to_bits(int(idx), num_qubits))


def _permutation_columns(num_qubits: int, inputs, mapping) -> np.ndarray:
    out = np.zeros((1 << num_qubits, len(inputs)), dtype=complex)
    for k, i in enumerate(inputs):
        out[mapping(int(i)), k] = 1.0
    return out


def _swap_bits(i: int, p: int, q: int) -> int:
    bp, bq = (i >> p) & 1, (i >> q) & 1
    if bp != bq:
        i ^= (1 << p) | (1 << q)
    return i


# --- vertex check -----------------------------------------------------------

def verify_qv() -> VerificationReport:
    """Syndrome equals 1 - delta on all eight vertex inputs; a second pass repeats it."""
    report = VerificationReport("qv")
    c = builders.qv_circuit()
    twice = Circuit(4, c.gates + c.gates)
    for v in itertools.product((0, 1), repeat=3):
        idx = v[0] | v[1] << 1 | v[2] << 2
        syn = 1 - delta(*v)
        out = simulate_basis(c, [idx])[:, 0]
        expected = np.zeros(16)
        expected[idx | syn << 3] = 1.0
        report.record(np.max(np.abs(out - expected)), TOL_EXACT, index_to_bits(idx, 4))
        # The syndrome qubit is fresh for the second measurement: run on |v>|0> again.
        again = simulate_basis(c, [idx])[:, 0]
        report.record(np.max(np.abs(again - out)), TOL_EXACT, index_to_bits(idx, 4))
    # Reusing the register without resetting returns the syndrome to 0 (circuit is an involution).
    u2 = unitary_of(twice)
    report.record(np.max(np.abs(u2 - np.eye(16))), TOL_EXACT, "twice")
    return report


# --- F, reduced F and S circuits ------------------------------------------

def verify_fmove_circuits(tensors: FibonacciTensorSet = FIB) -> VerificationReport:
    """F, reduced-F and S circuits against their tensors, plus each squaring to one."""
    report = VerificationReport("fmove-circuits")
    f = tensors.f_tensor

    full = builders.f_circuit()
    inputs, expected = [], []
    skipped = 0
    for a, b, c, d, e in itertools.product((0, 1), repeat=5):
        if not (delta(a, b, e) and delta(c, d, e)):
            skipped += 1
            continue
        idx = a | b << 1 | c << 2 | d << 3 | e << 4
        col = np.zeros(32)
        for ep in (0, 1):
            col[a | b << 1 | c << 2 | d << 3 | ep << 4] = f[(a, b, c, d, e, ep)]
        inputs.append(idx)
        expected.append(col)
    actual = simulate_basis(full, inputs, tensors, strict=False)
    _compare(report, inputs, actual, np.array(expected).T, 5, TOL_IDENTITY, global_phase=False)

    reduced = builders.reduced_f_circuit()
    inputs, expected = [], []
    for a, b, c, e in itertools.product((0, 1), repeat=4):
        if not (delta(a, b, e) and delta(c, a, e)):
            skipped += 1
            continue
        idx = a | b << 1 | c << 2 | e << 3
        col = np.zeros(16)
        for ep in (0, 1):
            col[a | b << 1 | c << 2 | ep << 3] = f[(a, b, c, a, e, ep)]
        inputs.append(idx)
        expected.append(col)
    actual = simulate_basis(reduced, inputs, tensors, strict=False)
    _compare(report, inputs, actual, np.array(expected).T, 4, TOL_IDENTITY, global_phase=False)

    s = builders.s_circuit()
    inputs = [0b00, 0b10, 0b11]  # (tail, head) little-endian: 00, 01, 11
    expected = np.zeros((4, 3))
    for k, idx in enumerate(inputs):
        t, h = idx & 1, idx >> 1
        for hp in (0, 1):
            expected[t | hp << 1, k] = tensors.s_tensor[(t, h, hp)]
    actual = simulate_basis(s, inputs, tensors, strict=False)
    _compare(report, inputs, actual, expected, 2, TOL_IDENTITY, global_phase=False)
    skipped += 1

    for circ, label in ((full, "f^2"), (reduced, "reduced-f^2"), (s, "s^2")):
        u = unitary_of(circ, tensors, strict=False)
        report.record(np.max(np.abs(u @ u - np.eye(u.shape[0]))), TOL_IDENTITY, label)
    report.skipped_invalid = skipped
    return report


# --- pentagon ---------------------------------------------------------------

def verify_pentagon(tensors: FibonacciTensorSet = FIB, tol: Optional[float] = None) -> VerificationReport:
    """Pentagon circuit equals SWAP of edges 5 and 6 on every valid input."""
    report = VerificationReport("pentagon")
    initial, _, _ = builders.pentagon_records()
    circuit = builders.pentagon_circuit()
    valid = valid_indices(initial)
    actual = simulate_basis(circuit, valid, tensors, strict=False)
    expected = _permutation_columns(7, valid, lambda i: _swap_bits(i, 4, 5))
    _compare(report, valid, actual, expected, 7, TOL_IDENTITY if tol is None else tol)
    report.skipped_invalid = (1 << 7) - len(valid)
    return report


def verify_pentagon_simple(tensors: FibonacciTensorSet = FIB) -> VerificationReport:
    """Five alternating controlled-F gates equal SWAP on all four inputs, no phase freedom."""
    report = VerificationReport("pentagon-simple")
    circuit = builders.pentagon_simple_circuit()
    inputs = range(4)
    actual = simulate_basis(circuit, inputs, tensors, strict=False)
    expected = _permutation_columns(2, inputs, lambda i: _swap_bits(i, 0, 1))
    _compare(report, list(inputs), actual, expected, 2, TOL_EXACT, global_phase=False)
    return report


# --- plaquette measurement --------------------------------------------------

def verify_bp(n: int, tensors: FibonacciTensorSet = FIB, seed: int = 0,
              random_states: int = 4, tol: Optional[float] = None) -> VerificationReport:
    """Syndrome projectors of the measurement circuit against the B_p oracle.

    For every valid basis input the syndrome-0 branch must equal the oracle's
    column and the syndrome-1 branch its complement (this also fixes the
    post-measurement state).  Each nonzero branch is then re-measured and must
    reproduce its outcome.  ``random_states`` seeded random superpositions of
    valid states add end-to-end checks of outcome probabilities.
    """
    report = VerificationReport(f"bp-{n}")
    tol_oracle = TOL_ORACLE if tol is None else tol
    tol_qnd = TOL_IDENTITY if tol is None else tol
    circuit = builders.bp_measure_circuit(n)
    valid, _, _, bp = bp_components(n, tensors)
    dim = 1 << (2 * n)
    syn_bit = 2 * n

    out = _simulate_cases(circuit, valid, tensors)
    branch0, branch1 = out[:dim], out[dim:]
    exp0 = np.zeros((dim, len(valid)))
    exp0[valid] = bp
    exp1 = -exp0
    exp1[valid, np.arange(len(valid))] += 1.0
    for k, idx in enumerate(valid):
        dev = max(np.max(np.abs(branch0[:, k] - exp0[:, k])), np.max(np.abs(branch1[:, k] - exp1[:, k])))
        report.record(dev, tol_oracle, index_to_bits(int(idx), 2 * n))

    def remeasure(branch: np.ndarray, outcome: int, labels: Sequence[str]):
        norms = np.linalg.norm(branch, axis=0)
        keep = norms ** 2 > 1e-12
        if not np.any(keep):
            return
        post = np.zeros((2 * dim, int(keep.sum())), dtype=complex)
        post[:dim] = branch[:, keep] / norms[keep]
        again = simulate_batch(circuit, post, tensors, strict=False)
        block = again[dim:] if outcome else again[:dim]
        p_same = np.sum(np.abs(block) ** 2, axis=0)
        for lab, p in zip(np.asarray(labels)[keep], p_same):
            report.record(abs(1.0 - p), tol_qnd, f"{lab}:qnd{outcome}")

    labels = [index_to_bits(int(i), 2 * n) for i in valid]
    remeasure(branch0, 0, labels)
    remeasure(branch1, 1, labels)

    rng = np.random.default_rng(seed)
    for r in range(random_states):
        coeffs = rng.normal(size=len(valid)) + 1j * rng.normal(size=len(valid))
        coeffs /= np.linalg.norm(coeffs)
        psi = np.zeros((2 * dim, 1), dtype=complex)
        psi[valid, 0] = coeffs
        res = simulate_batch(circuit, psi, tensors, strict=False)
        p0 = float(np.sum(np.abs(res[:dim]) ** 2))
        p0_oracle = float(np.real(np.vdot(coeffs, bp @ coeffs)))
        report.record(abs(p0 - p0_oracle), tol_oracle, f"random{r}:p0")
        remeasure(res[:dim], 0, [f"random{r}"])
        remeasure(res[dim:], 1, [f"random{r}"])

    report.skipped_invalid = dim - len(valid)
    report.details = {"seed": seed, "random_states": random_states,
                      "dim_bp1": int(round(np.trace(bp))), "dim_valid": int(len(valid)),
                      "syndrome_qubit": syn_bit}
    return report


def verify_fmove_covariance(n: int, tensors: FibonacciTensorSet = FIB) -> VerificationReport:
    """Each reduction step maps the plaquette projector to the next one.

    For every step ``U B_m U^dagger == B_{m+1}`` on the valid states of the
    rewired lattice, with ``B_m`` the projector of the current (shrunken)
    plaquette.
    """
    report = VerificationReport(f"fmove-covariance-{n}")
    lattice = build_plaquette(n)
    nq = 2 * n
    dim = 1 << nq
    for rec in reduction_plan(n):
        valid_old, b_old = lattice_bp_block(lattice, tensors)
        lattice_new, _ = apply_fmove(lattice, rec.edge)
        valid_new, b_new = lattice_bp_block(lattice_new, tensors)
        step = Circuit(nq, builders.emit_fmove(rec))
        # U^dagger |v> for valid v of the new lattice; the F-move circuit is its own inverse.
        back = simulate_basis(step, valid_new, tensors, strict=False)
        full_old = np.zeros((dim, dim))
        full_old[np.ix_(valid_old, valid_old)] = b_old
        mid = full_old @ back
        fwd = simulate_batch(step, mid, tensors, strict=False)
        got = fwd[valid_new]
        leak = np.delete(fwd, valid_new, axis=0)
        for k, idx in enumerate(valid_new):
            dev = max(np.max(np.abs(got[:, k] - b_new[:, k])), np.max(np.abs(leak[:, k])) if leak.size else 0.0)
            report.record(dev, TOL_ORACLE, f"{rec.edge}:{index_to_bits(int(idx), nq)}")
        lattice = lattice_new
    return report


# --- tadpole pull-through ---------------------------------------------------

def verify_tadpole_pull(tensors: FibonacciTensorSet = FIB, tol: Optional[float] = None) -> VerificationReport:
    """Pull-through circuit equals SWAP(3,4) then controlled-U on valid inputs."""
    report = VerificationReport("tadpole-pull")
    initial, _, _ = builders.pull_records()
    valid = valid_indices(initial)
    lhs = simulate_basis(builders.tadpole_pull_circuit(), valid, tensors, strict=False)
    rhs = simulate_basis(builders.tadpole_pull_rhs(), valid, tensors, strict=False)
    _compare(report, valid, lhs, rhs, 4, TOL_IDENTITY if tol is None else tol)
    report.skipped_invalid = 16 - len(valid)

    # The induced 2x2 action on the B_p = 0 space with qubits 1, 2 set must be U itself.
    u = unitary_of(builders.tadpole_pull_circuit(), tensors, strict=False)
    # Input: line 11, tail c, head 1.  Output: line 11, head (qubit 3) 1, tail (qubit 4) r.
    block = np.array([[u[0b0111 | r << 3, 0b1011 | c << 2] for c in (0, 1)] for r in (0, 1)])
    report.record(np.max(np.abs(block - tensors.u_matrix)), TOL_EXACT, "u-block")
    return report


def verify_pull_simple(tensors: FibonacciTensorSet = FIB) -> VerificationReport:
    """Two-qubit pull-through identities on all four inputs, and |1>|0> -> |0>|1>."""
    report = VerificationReport("pull-simple")
    inputs = list(range(4))
    for lhs_c, rhs_c in ((builders.pull_simple_circuit(), builders.pull_simple_rhs()),
                         (builders.pull_calibration_circuit(), builders.pull_calibration_rhs())):
        lhs = simulate_basis(lhs_c, inputs, tensors, strict=False)
        rhs = simulate_basis(rhs_c, inputs, tensors, strict=False)
        _compare(report, inputs, lhs, rhs, 2, TOL_EXACT, global_phase=False)
    out = simulate_basis(builders.pull_calibration_circuit(), [0b01], tensors, strict=False)[:, 0]
    target = np.zeros(4)
    target[0b10] = 1.0
    report.record(np.max(np.abs(out - target)), TOL_EXACT, "10")
    return report


# --- operator algebra -------------------------------------------------------

def verify_commutation(sides: Sequence[int] = (2, 3, 6), tensors: FibonacciTensorSet = FIB,
                       tol: Optional[float] = None) -> VerificationReport:
    """[B_p, Q_v] = 0 for every plaquette vertex, B_p^2 = B_p and [B^0, B^1] = 0."""
    report = VerificationReport("commutation")
    tol = TOL_IDENTITY if tol is None else tol
    for n in sides:
        lattice = build_plaquette(n)
        nq = 2 * n
        valid, b0, b1, bp = bp_components(n, tensors)
        labels = [index_to_bits(int(i), nq) for i in valid]
        for verts in lattice.vertex_qubits():
            q = vertex_projector_diag(nq, verts)[valid]
            # B_p vanishes off the valid states, so only the valid block can fail to commute.
            comm = bp * q[None, :] - q[:, None] * bp
            col = np.max(np.abs(comm), axis=0)
            k = int(np.argmax(col))
            report.record(col[k], tol, f"n{n}:qv{verts}:{labels[k]}")
        sq = np.max(np.abs(bp @ bp - bp), axis=0)
        k = int(np.argmax(sq))
        report.record(sq[k], tol, f"n{n}:idempotent:{labels[k]}")
        cm = np.max(np.abs(b0 @ b1 - b1 @ b0), axis=0)
        k = int(np.argmax(cm))
        report.record(cm[k], tol, f"n{n}:b0b1:{labels[k]}")
        report.skipped_invalid += (1 << nq) - len(valid)
    return report


# --- lowering ---------------------------------------------------------------

def verify_lowering() -> VerificationReport:
    """Barenco networks for 4- and 5-qubit Toffolis on every input, borrowed ancillas included."""
    report = VerificationReport("lowering")
    for k in (3, 4):
        nq = k + 1 + (k - 2)
        controls, target = list(range(k)), k
        ancillas = list(range(k + 1, nq))
        net = Circuit(nq, barenco_network(controls, target, ancillas))
        ref = Circuit(nq, [toffoli(*controls, target)])
        report.record(abs(len(net) - (4 * (k + 1) - 12)), 0, f"count{k + 1}")
        inputs = range(1 << nq)
        got = simulate_basis(net, inputs)
        want = simulate_basis(ref, inputs)
        _compare(report, list(inputs), got, want, nq, TOL_EXACT, global_phase=False)
    return report


def verify_all(seed: int = 0, tensors: FibonacciTensorSet = FIB,
               tol: Optional[float] = None) -> list[VerificationReport]:
    reports = [
        verify_qv(),
        verify_fmove_circuits(tensors),
        verify_pentagon(tensors, tol),
        verify_pentagon_simple(tensors),
    ]
    reports += [verify_bp(n, tensors, seed=seed, tol=tol) for n in range(2, 7)]
    reports += [
        verify_tadpole_pull(tensors, tol),
        verify_pull_simple(tensors),
        verify_commutation(tensors=tensors, tol=tol),
        verify_lowering(),
    ]
    return reports

