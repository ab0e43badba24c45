"""Exit criteria. Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""

import io
import math
import subprocess
import sys
import time
from itertools import product

import numpy as np
import pytest

from qsteer import cli, formulas, states, verify
from qsteer.linalg import Ket, inner, sym_eigen
from qsteer.states import alpha_tilde, alpha_tilde_edge, omega, omega_minus_form, phi, structured_inner
from qsteer.steering import build_m_plus, measure_complete, project_alpha, steer_structured

DENSE_NS = range(3, 65)
STRUCTURED_NS = (10**3, 10**6, 10**9, 10**12)


def report(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")


@pytest.mark.criterion(1, "chaos effect: closeness (n-2)/(n+2) with strictly orthogonal steering, <5 s")
def test_chaos_effect():
    start = time.perf_counter()
    worst_close = worst_orth = 0.0
    for n in DENSE_NS:
        psi = omega(n)
        for i in range(1, n):
            a_plus, a_tilde = Ket.basis(n, i), alpha_tilde(n, i).to_dense()
            worst_close = max(worst_close, abs(inner(a_plus, a_tilde) ** 2 - (n - 2) / (n + 2)))
            collapsed = project_alpha(psi, a_tilde).collapsed
            worst_orth = max(worst_orth, abs(inner(phi(n, i, "+").to_dense(), collapsed)))
    elapsed = time.perf_counter() - start
    report(1, worst_close <= 1e-12 and worst_orth < 1e-12 and elapsed < 5,
           f"closeness err {worst_close:.1e}, orthogonality {worst_orth:.1e}, {elapsed:.2f} s")
    assert worst_close <= 1e-12
    assert worst_orth < 1e-12
    assert elapsed < 5


@pytest.mark.criterion(2, "Gram formulas for alpha-tilde overlaps, all index pairs, <5 s")
def test_gram_formulas():
    start = time.perf_counter()
    worst = 0.0
    for n in DENSE_NS:
        kets = [alpha_tilde(n, i).to_dense() for i in range(1, n)]
        edge = alpha_tilde_edge(n).to_dense()
        pair = -4 / (n * n - 4)
        edge_ov = math.sqrt(n - 2) / (math.sqrt(n - 1) * math.sqrt(n + 2))
        for a, x in enumerate(kets):
            worst = max(worst, abs(inner(x, edge) - edge_ov))
            for y in kets[a + 1:]:
                worst = max(worst, abs(inner(x, y) - pair))
    elapsed = time.perf_counter() - start
    report(2, worst <= 1e-12 and elapsed < 5, f"max err {worst:.1e}, {elapsed:.2f} s")
    assert worst <= 1e-12
    assert elapsed < 5


@pytest.mark.criterion(3, "omega equals its minus-basis re-expansion")
def test_state_identity():
    worst = max(np.abs(omega(n).coefficients - omega_minus_form(n).coefficients).max() for n in DENSE_NS)
    report(3, worst <= 1e-12, f"max elementwise gap {worst:.1e}")
    assert worst <= 1e-12


@pytest.mark.criterion(4, "trace distance 1/sqrt(n-1) and spectrum of the difference matrix")
def test_trace_distance():
    worst_d = worst_lam = 0.0
    for n in range(2, 65):
        plus, minus = verify.density_of_set(n, "+"), verify.density_of_set(n, "-")
        d = 1 / math.sqrt(n - 1)
        worst_d = max(worst_d, abs(verify.trace_distance_numeric(plus, minus) - d))
        lam = sym_eigen(plus - minus).eigenvalues
        expected = np.zeros(n)
        expected[0], expected[-1] = d, -d
        worst_lam = max(worst_lam, np.abs(lam - expected).max())
    report(4, worst_d <= 1e-10 and worst_lam <= 1e-10, f"D err {worst_d:.1e}, eigenvalue err {worst_lam:.1e}")
    assert worst_d <= 1e-10
    assert worst_lam <= 1e-10


@pytest.mark.criterion(5, "erratum rows for the printed c' and phi overlap")
def test_erratum_ledger():
    rep = verify.erratum_report(4)
    assert rep.c_prime_printed == 2.0
    assert rep.c_prime_oracle == pytest.approx(3 / math.sqrt(2), abs=1e-12)
    assert rep.c_prime_oracle == pytest.approx(2.1213203, abs=1e-7)
    assert rep.phi_overlap_printed == pytest.approx(2 / 3, abs=1e-15)
    assert rep.phi_overlap_oracle == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    worst = 0.0
    for n in DENSE_NS:
        rep = verify.erratum_report(n)
        worst = max(worst, abs(rep.c_prime_ratio - math.sqrt(n * n / (n * n + 2))))
        rows = {r.quantity: r for r in verify.verify_all(n, 1e-12)}
        assert rows["c_prime_paper"].status == verify.ERRATUM
        assert rows["phi_overlap_paper"].status == verify.ERRATUM
        assert not verify.failures(rows.values())
    # a printed constant that silently agreed with the oracle must fail
    assert verify._erratum_row("c_prime_paper", 4, rep.c_prime_oracle, rep.c_prime_oracle, 1e-12).status == verify.FAIL
    report(5, worst <= 1e-12, f"ratio err {worst:.1e}")
    assert worst <= 1e-12


@pytest.mark.criterion(6, "large-n convergence in structured mode, <1 ms per point")
def test_structured_convergence():
    rows = verify.convergence_scan(STRUCTURED_NS, "structured")
    for r in rows:
        assert r.measurement_distance == math.sqrt(4 / (r.n + 2))
        assert r.measurement_distance == pytest.approx(2 / math.sqrt(r.n + 2), rel=1e-15)
    by_n = {r.n: r for r in rows}
    assert by_n[10**9].measurement_distance <= 6.33e-5
    assert by_n[10**12].phi_overlap_derived >= 0.999999
    assert by_n[10**12].trace_distance <= 1.001e-6

    # the structured engine reproduces the same quantities in O(1)
    worst_time = 0.0
    for n in STRUCTURED_NS:
        start = time.perf_counter()
        verify.convergence_scan([n], "structured")
        fast = steer_structured(n, alpha_tilde(n, 1))
        overlap = structured_inner(phi(n, 1, "-"), fast.collapsed)
        defect = structured_inner(phi(n, 1, "+"), fast.collapsed)
        worst_time = max(worst_time, time.perf_counter() - start)
        assert fast.probability == pytest.approx(formulas.outcome_prob_tilde(n), rel=1e-9)
        assert overlap == pytest.approx(formulas.phi_overlap(n, "derived"), abs=1e-12)
        assert abs(defect) < 1e-12
    report(6, worst_time < 1e-3, f"slowest point {worst_time * 1e6:.0f} us")
    assert worst_time < 1e-3


def _family(n):
    idx = sorted({1, 2, n // 2, n - 1})
    out = [states.phi_edge(n, "+"), states.phi_edge(n, "-"), alpha_tilde_edge(n), states.basis_state(n, 0)]
    for i in idx:
        out += [phi(n, i, "+"), phi(n, i, "-"), alpha_tilde(n, i), states.phi_tilde(n, i), states.basis_state(n, i)]
    return out


@pytest.mark.criterion(7, "structured path equals the dense oracle")
def test_structured_dense_equivalence():
    worst_inner = worst_steer = 0.0
    for n in DENSE_NS:
        fam = _family(n)
        dense = [k.to_dense() for k in fam]
        for (x, dx), (y, dy) in product(zip(fam, dense), repeat=2):
            worst_inner = max(worst_inner, abs(structured_inner(x, y) - inner(dx, dy)))
        psi = omega(n)
        for a, da in zip(fam, dense):
            if abs(a.component_sum()) + abs(a.spike) + abs(a.tail) == 0:
                continue
            ref = project_alpha(psi, da)
            got = steer_structured(n, a)
            worst_steer = max(
                worst_steer,
                abs(got.probability - ref.probability),
                np.abs(got.collapsed.to_dense().amplitudes - ref.collapsed.amplitudes).max(),
            )
    report(7, worst_inner <= 1e-12 and worst_steer <= 1e-12, f"inner {worst_inner:.1e}, steering {worst_steer:.1e}")
    assert worst_inner <= 1e-12
    assert worst_steer <= 1e-12


@pytest.mark.criterion(8, "complete M+ measurement of omega")
def test_measurement_completeness():
    worst_p = worst_sum = 0.0
    for n in DENSE_NS:
        probs = [o.probability for o in measure_complete(omega(n), build_m_plus(n))]
        assert probs[0] == 0.0
        worst_p = max(worst_p, max(abs(p - 1 / (n - 1)) for p in probs[1:]))
        worst_sum = max(worst_sum, abs(sum(probs) - 1))
    report(8, worst_p <= 1e-12 and worst_sum <= 1e-12, f"prob err {worst_p:.1e}, sum err {worst_sum:.1e}")
    assert worst_p <= 1e-12
    assert worst_sum <= 1e-12


EXIT_MATRIX = [
    (["verify", "--n", "16", "--tol", "1e-12"], 0),
    (["verify", "--n", "5", "--tol", "1e-30"], 1),
    (["verify", "--n", "2"], 2),
    (["verify"], 2),
    (["scan", "--from", "3", "--to", "8"], 0),
    (["scan", "--from", "8", "--to", "3"], 2),
    (["scan", "--from", "3", "--to", "5000", "--mode", "dense"], 2),
    (["scan", "--from", "1000", "--to", "1000000000000", "--geometric", "1000", "--mode", "structured"], 0),
    (["collapse", "--n", "4", "--i", "1", "--target", "plus"], 0),
    (["collapse", "--n", "4", "--i", "5", "--target", "plus"], 2),
    (["collapse", "--n", "4", "--i", "1", "--target", "sideways"], 2),
    (["trace-distance", "--n", "3", "--method", "numeric"], 0),
    (["trace-distance", "--n", "100000", "--method", "numeric"], 2),
    (["trace-distance", "--n", "1"], 2),
    (["frobnicate"], 2),
]


@pytest.mark.criterion(9, "byte-identical scans and the 0/1/2 exit-code contract")
def test_cli_determinism_and_exit_codes():
    scan = [sys.executable, "-m", "qsteer", "scan", "--from", "3", "--to", "40", "--step", "1", "--format", "csv"]
    first = subprocess.run(scan, capture_output=True, check=True).stdout
    second = subprocess.run(scan, capture_output=True, check=True).stdout
    assert first == second and first.count(b"\n") == 39

    structured = ["scan", "--from", "1000", "--to", "1000000000000", "--geometric", "10", "--mode", "structured"]
    runs = []
    for _ in range(2):
        buf = io.StringIO()
        assert cli.main(structured, out=buf, environ={}) == 0
        runs.append(buf.getvalue().encode("utf-8"))
    assert runs[0] == runs[1]

    mismatches = []
    for argv, expected in EXIT_MATRIX:
        code = cli.main(argv, out=io.StringIO(), environ={})
        if code != expected:
            mismatches.append((argv, code, expected))
    proc = subprocess.run([sys.executable, "-m", "qsteer", "verify", "--n", "2"], capture_output=True)
    if proc.returncode != 2:
        mismatches.append((["subprocess verify --n 2"], proc.returncode, 2))
    report(9, first == second and not mismatches, f"{len(EXIT_MATRIX) + 1} invocations checked")
    assert not mismatches
