import math

import numpy as np
import pytest

from perfectchain.eigensolve import (
    DegenerateClusterWarning,
    eigensystem,
    eigenvalues,
    eigenvalues_bisect,
    sturm_count,
)
from perfectchain.jacobi import JacobiMatrix, square_spectrum_matrix, target_spectrum


def random_jacobi(rng, n):
    return JacobiMatrix(rng.uniform(-1, 1, n), rng.uniform(1e-3, 1.0, n - 1))


class TestEigenvalues:
    def test_1x1(self):
        m = JacobiMatrix([5.0], [])
        assert list(eigenvalues(m)) == [5.0]
        # bisection tolerance is rel_tol * scale = 5e-12 here
        assert list(eigenvalues_bisect(m)) == pytest.approx([5.0], abs=1e-11)

    def test_2x2_closed_form(self):
        m = JacobiMatrix([1.0, 1.0], [1.0])
        assert list(eigenvalues(m)) == pytest.approx([0.0, 2.0], abs=1e-14)

    def test_square_spectrum_n3(self):
        vals = eigenvalues(square_spectrum_matrix(3))
        assert np.max(np.abs(vals - [0.0, 2.0, 8.0])) < 1e-12

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 10, 50])
    def test_family_spectrum_both_methods(self, n):
        m = square_spectrum_matrix(n)
        target = target_spectrum(n)
        bound = 1e-10 * max(2.0 * (n - 1) ** 2, 1.0)
        assert np.max(np.abs(eigenvalues(m) - target)) <= bound
        assert np.max(np.abs(eigenvalues(m, method="bisect") - target)) <= bound

    def test_methods_agree_on_random_matrices(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            n = int(rng.integers(2, 65))
            m = random_jacobi(rng, n)
            d = np.abs(eigenvalues(m) - eigenvalues(m, method="bisect"))
            assert np.max(d) <= 1e-10 * m.inf_norm()

    def test_family_spectrum_full_sweep(self):
        for n in range(1, 201):
            m = square_spectrum_matrix(n)
            err = np.max(np.abs(eigenvalues(m) - target_spectrum(n)))
            assert err <= 1e-10 * max(2.0 * (n - 1) ** 2, 1.0)

    def test_sum_rule(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(2, 40))
            m = random_jacobi(rng, n)
            trace = float(np.sum(m.diag))
            total = float(np.sum(eigenvalues(m)))
            assert abs(total - trace) <= 1e-12 * max(1.0, abs(trace), m.inf_norm())

    def test_interlacing_strict_on_family(self):
        # Strict interlacing of the leading (n-1) principal submatrix.  The
        # top gaps underflow doubles, so strictness is certified exactly:
        # the submatrix characteristic polynomial det(xI - A_sub), evaluated
        # in integer arithmetic at the n integer eigenvalues 2k^2, must be
        # nonzero with alternating signs -- exactly one of its n-1 roots in
        # each open spectral gap.
        for n in range(3, 41):
            m = square_spectrum_matrix(n)
            a = m.diag_exact
            b2 = m.offdiag_sq_exact
            for k in range(n):
                x = 2 * k * k
                p_prev, p = 1, x - a[0]
                for i in range(1, n - 1):
                    p_prev, p = p, (x - a[i]) * p - b2[i - 1] * p_prev
                assert p != 0
                expected_sign = (-1) ** (n - 1 - k)
                assert (p > 0) == (expected_sign > 0)

    def test_interlacing_weak_float(self):
        for n in (10, 25, 40):
            m = square_spectrum_matrix(n)
            sub = JacobiMatrix(m.diag[:-1], m.offdiag[:-1])
            lam = eigenvalues(m)
            mu = eigenvalues(sub)
            slack = 1e-12 * m.inf_norm()
            assert np.all(lam[:-1] <= mu + slack) and np.all(mu <= lam[1:] + slack)

    def test_bad_method(self):
        with pytest.raises(ValueError):
            eigenvalues(square_spectrum_matrix(3), method="magic")

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            eigenvalues(square_spectrum_matrix(3), rel_tol=0.0)


class TestSturmCount:
    def test_counts_below_shift(self):
        m = square_spectrum_matrix(5)  # spectrum {0, 2, 8, 18, 32}
        assert sturm_count(m, 7.0) == 2
        assert sturm_count(m, 33.0) == 5

    def test_below_gershgorin_bound(self):
        m = square_spectrum_matrix(5)
        assert sturm_count(m, -100.0) == 0

    def test_each_gap(self):
        m = square_spectrum_matrix(6)
        target = [0, 2, 8, 18, 32, 50]
        for idx in range(1, 6):
            mid = 0.5 * (target[idx - 1] + target[idx])
            assert sturm_count(m, mid) == idx


class TestEigensystem:
    def test_2x2_hand_solve(self):
        es = eigensystem(square_spectrum_matrix(2))
        r = 1 / math.sqrt(2)
        # realized matrix has -b off-diagonal: lambda=0 -> (1,1), lambda=2 -> (1,-1)
        assert np.allclose(es.vectors[:, 0], [r, r], atol=1e-12)
        assert np.allclose(es.vectors[:, 1], [r, -r], atol=1e-12)

    def test_diagonal_matrix_identity_columns(self):
        m = JacobiMatrix([3.0, 1.0, 2.0], [0.0, 0.0])
        es = eigensystem(m)
        assert np.allclose(es.values, [1.0, 2.0, 3.0])
        expected = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
        assert np.allclose(np.abs(es.vectors), expected, atol=1e-12)
        assert np.all(es.vectors.max(axis=0) > 0.99)  # positive sign convention

    @pytest.mark.parametrize("n", [2, 5, 17, 51])
    def test_alternate_persymmetry(self, n):
        es = eigensystem(square_spectrum_matrix(n))
        for k in range(n):
            v = es.vectors[:, k]
            assert np.max(np.abs(v[::-1] - (-1.0) ** k * v)) < 1e-8

    @pytest.mark.parametrize("n", [3, 20, 100, 200])
    def test_residual_and_orthogonality(self, n):
        m = square_spectrum_matrix(n)
        es = eigensystem(m)
        dense = m.to_dense()
        resid = dense @ es.vectors - es.vectors * es.values
        assert np.max(np.abs(resid)) <= 1e-12 * m.inf_norm()
        gram = es.vectors.T @ es.vectors - np.eye(n)
        assert np.max(np.abs(gram)) <= 1e-10

    def test_random_matrices_orthogonal(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            n = int(rng.integers(2, 64))
            m = random_jacobi(rng, n)
            es = eigensystem(m)
            gram = es.vectors.T @ es.vectors - np.eye(n)
            assert np.max(np.abs(gram)) <= 1e-10
            resid = m.to_dense() @ es.vectors - es.vectors * es.values
            assert np.max(np.abs(resid)) <= 1e-10 * max(1.0, m.inf_norm())

    def test_degenerate_cluster_warns(self):
        m = JacobiMatrix([1.0, 1.0], [1e-18])
        with pytest.warns(DegenerateClusterWarning):
            eigensystem(m)

    def test_deterministic(self):
        m = square_spectrum_matrix(11)
        a = eigensystem(m)
        b = eigensystem(m)
        assert np.array_equal(a.vectors, b.vectors)
        assert np.array_equal(a.values, b.values)
