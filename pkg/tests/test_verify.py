import math

import numpy as np
import pytest

from qsteer import verify
from qsteer.exceptions import DenseCapExceeded, DegenerateDimension
from qsteer.linalg import sym_eigen
from qsteer.verify import (
    ERRATUM,
    FAIL,
    PASS,
    convergence_scan,
    density_of_set,
    erratum_report,
    trace_distance_numeric,
    verify_all,
)

R2 = math.sqrt(0.5)


class TestDensity:
    def test_n3_rows(self):
        rho = density_of_set(3, "+").entries
        assert np.allclose(rho[0], [0.5, 0.25, 0.25], atol=1e-15)
        assert np.allclose(np.diag(rho), [0.5, 0.25, 0.25], atol=1e-15)
        assert np.allclose(density_of_set(3, "-").entries[0], [0.5, -0.25, -0.25], atol=1e-15)

    def test_n2_pure(self):
        for s, v in (("+", [R2, R2]), ("-", [R2, -R2])):
            assert np.allclose(density_of_set(2, s).entries, np.outer(v, v), atol=1e-15)

    @pytest.mark.parametrize("n", range(2, 65))
    def test_valid_density(self, n):
        for s in "+-":
            rho = density_of_set(n, s)
            assert abs(rho.trace() - 1) < 1e-12
            assert rho.min_eigenvalue() >= -1e-12
            e = rho.entries
            assert e[0, 0] == pytest.approx(0.5, abs=1e-15)
            assert e[1, 1] == pytest.approx(1 / (2 * (n - 1)), abs=1e-15)

    def test_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            verify.DensityMatrix(np.eye(2))


class TestTraceDistance:
    def test_n3(self):
        assert trace_distance_numeric(density_of_set(3, "+"), density_of_set(3, "-")) == pytest.approx(R2, abs=1e-10)

    def test_n2(self):
        assert trace_distance_numeric(density_of_set(2, "+"), density_of_set(2, "-")) == pytest.approx(1.0, abs=1e-12)

    def test_identical(self):
        rho = density_of_set(5, "+")
        assert trace_distance_numeric(rho, rho) == 0.0

    @pytest.mark.parametrize("n", range(2, 65))
    def test_difference_spectrum(self, n):
        lam = sym_eigen(density_of_set(n, "+") - density_of_set(n, "-")).eigenvalues
        d = 1 / math.sqrt(n - 1)
        assert abs(lam[0] - d) < 1e-10
        assert abs(lam[-1] + d) < 1e-10
        assert np.abs(lam[1:-1]).max(initial=0.0) < 1e-10


class TestVerifyAll:
    def test_n4_all_pass(self):
        rows = verify_all(4, 1e-12)
        assert not verify.failures(rows)
        statuses = {r.quantity: r.status for r in rows}
        assert statuses["c_prime_paper"] == ERRATUM
        assert statuses["phi_overlap_paper"] == ERRATUM
        assert sum(s == PASS for s in statuses.values()) == len(rows) - 2

    def test_row_invariants(self):
        for r in verify_all(9, 1e-12, i=4):
            assert r.abs_error == abs(r.analytic - r.numeric)
            if r.status != ERRATUM:
                assert (r.status == PASS) == (r.abs_error <= r.tolerance)

    def test_orthogonality_row(self):
        row = next(r for r in verify_all(16) if r.quantity == "steered_orthogonality")
        assert row.numeric < 1e-12 and row.status == PASS

    def test_phi_overlap_paper_row(self):
        row = next(r for r in verify_all(4) if r.quantity == "phi_overlap_paper")
        assert row.analytic == pytest.approx(2 / 3, abs=1e-15)
        assert row.numeric == pytest.approx(R2, abs=1e-15)
        assert row.status == ERRATUM

    def test_erratum_that_vanishes_fails(self):
        assert verify._erratum_row("c_prime_paper", 4, 2.0, 2.0, 1e-12).status == FAIL

    def test_erratum_with_wrong_ratio_fails(self):
        assert verify._erratum_row("c_prime_paper", 4, 1.0, 3 / math.sqrt(2), 1e-12).status == FAIL

    def test_tight_tolerance_fails_eigen_rows_only(self):
        rows = verify_all(16, 1e-30)
        assert verify.failures(rows)

    @pytest.mark.parametrize("n", range(3, 65))
    def test_no_failures(self, n):
        assert not verify.failures(verify_all(n, 1e-12))

    def test_index_independence(self):
        ref = verify_all(7, i=1)
        for i in range(2, 7):
            for a, b in zip(ref, verify_all(7, i=i)):
                assert abs(a.numeric - b.numeric) <= a.tolerance

    def test_errors(self):
        with pytest.raises(DegenerateDimension):
            verify_all(2)
        with pytest.raises(DenseCapExceeded):
            verify_all(10, dense_cap=8)


class TestErratumReport:
    def test_n4(self):
        rep = erratum_report(4)
        assert rep.c_prime_printed == pytest.approx(2.0, abs=1e-15)
        assert rep.c_prime_oracle == pytest.approx(3 / math.sqrt(2), abs=1e-12)
        assert rep.c_prime_ratio == pytest.approx(math.sqrt(8 / 9), abs=1e-12)
        assert rep.converges

    def test_n3(self):
        rep = erratum_report(3)
        assert rep.c_prime_printed == pytest.approx(math.sqrt(30 / 11), abs=1e-12)
        assert rep.c_prime_oracle == pytest.approx(math.sqrt(10 / 3), abs=1e-12)
        assert rep.c_prime_printed == pytest.approx(1.65145, abs=1e-5)

    def test_n64(self):
        assert abs(erratum_report(64).c_prime_ratio - 1) < 2.5e-4

    def test_lines(self):
        text = "\n".join(erratum_report(5).lines())
        assert "c_prime printed=" in text and "converges" in text


class TestScan:
    def test_dense(self):
        rows = convergence_scan(range(3, 65), "dense")
        assert [r.n for r in rows] == list(range(3, 65))
        for r in rows:
            assert abs(r.trace_distance - 1 / math.sqrt(r.n - 1)) < 1e-10
            assert r.orthogonality_defect < 1e-12

    def test_structured(self):
        rows = convergence_scan([10**12, 10**3, 10**9, 10**6], "structured")
        assert [r.n for r in rows] == [10**3, 10**6, 10**9, 10**12]
        for r in rows:
            assert r.measurement_distance == math.sqrt(4 / (r.n + 2))
            assert r.orthogonality_defect is None

    def test_rejects_dense_overflow(self):
        with pytest.raises(DenseCapExceeded):
            convergence_scan([3, 100], "dense", dense_cap=64)

    def test_rejects_mode(self):
        with pytest.raises(ValueError):
            convergence_scan([3], "auto")
