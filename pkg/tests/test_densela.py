import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from lyapdecay import densela
from lyapdecay.errors import NotHermitian, Singular


def random_complex(rng, m, n=None):
    n = m if n is None else n
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def test_as_matrix_promotes_and_rejects():
    M = densela.as_matrix([1, 2, 3])
    assert M.shape == (3, 1) and M.dtype == np.complex128
    with pytest.raises(ValueError):
        densela.as_matrix([[1.0, np.nan]])


class TestHermitianEig:
    def test_scalar(self):
        assert_allclose(densela.hermitian_eig([[-1.0]]).eigenvalues, [-1.0])

    def test_swap(self):
        assert_allclose(densela.hermitian_eig([[0, 1], [1, 0]]).eigenvalues, [1, -1], atol=1e-15)

    def test_matches_characteristic_roots(self):
        rng = np.random.default_rng(1)
        Z = random_complex(rng, 8)
        H = (Z + Z.conj().T) / 2
        es = densela.hermitian_eig(H)
        roots = np.sort(np.roots(np.poly(H)).real)[::-1]
        assert_allclose(es.eigenvalues, roots, atol=1e-8)
        resid = H @ es.eigenvectors - es.eigenvectors * es.eigenvalues
        assert np.linalg.norm(resid) <= 1e-10 * np.linalg.norm(H, 2)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            densela.hermitian_eig([[0, 1], [0, 0]])


class TestSvd:
    def test_identity(self):
        assert_allclose(densela.singular_values(np.eye(3)), [1, 1, 1])

    def test_jordan_closed_form(self):
        s = densela.singular_values([[-1, 2], [0, -1]])
        assert_allclose(s[0], 1 + np.sqrt(2), rtol=1e-14)

    def test_squares_match_gram_eigenvalues(self):
        M = random_complex(np.random.default_rng(2), 6, 4)
        s = densela.singular_values(M)
        lam = densela.hermitian_eig(M.conj().T @ M).eigenvalues
        assert_allclose(s**2, lam, rtol=1e-10)

    def test_reconstruction(self):
        M = random_complex(np.random.default_rng(3), 5, 3)
        res = densela.svd(M)
        assert np.linalg.norm(res.U * res.singular_values @ res.Vh - M) <= 1e-12 * res.singular_values[0]

    def test_norms(self):
        assert densela.spectral_norm(np.zeros((3, 3))) == 0
        assert_allclose(densela.spectral_norm([[-1, 2], [0, -1]]), 1 + np.sqrt(2))
        A = -np.eye(64) + 4 * np.eye(64, k=1)
        assert 3 <= densela.spectral_norm(A) <= 5


class TestEigGeneral:
    def test_normal(self):
        res = densela.eig_general(np.diag([-1.0, -2.0]))
        assert_allclose(np.sort(res.eigenvalues.real), [-2, -1])
        assert_allclose(res.condition, 1.0)
        assert not res.defective

    def test_jordan_defective(self):
        assert densela.eig_general([[-1, 2], [0, -1]]).defective

    def test_constructed_spectrum(self):
        rng = np.random.default_rng(4)
        lam = -rng.uniform(1, 5, 8) + 1j * rng.uniform(-2, 2, 8)
        V = random_complex(rng, 8)
        M = V @ np.diag(lam) @ np.linalg.inv(V)
        got = densela.eig_general(M).eigenvalues
        # match each target eigenvalue to its nearest computed one
        assert max(np.min(np.abs(got - z)) for z in lam) <= 1e-8


class TestLinearSolve:
    def test_identity(self):
        b = np.array([1.0, 2.0, 3.0])
        assert_allclose(densela.linear_solve(np.eye(3), b), b)

    def test_diagonal(self):
        assert_allclose(densela.linear_solve(np.diag([2.0, 4.0]), [2.0, 4.0]), [1, 1])

    def test_random_residual(self):
        rng = np.random.default_rng(5)
        M = random_complex(rng, 10) + 10 * np.eye(10)
        b = random_complex(rng, 10, 2)
        x = densela.linear_solve(M, b)
        assert np.linalg.norm(M @ x - b) <= 1e-12 * np.linalg.norm(b)

    def test_singular(self):
        with pytest.raises(Singular):
            densela.linear_solve(np.zeros((2, 2)), [1.0, 1.0])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31 - 1))
def test_weyl_inequalities(n, seed):
    # s_{i+j-1}(M + N) <= s_i(M) + s_j(N)
    rng = np.random.default_rng(seed)
    M, N = random_complex(rng, n), random_complex(rng, n)
    sm, sn, ss = (densela.singular_values(x) for x in (M, N, M + N))
    for i in range(n):
        for j in range(n - i):
            assert ss[i + j] <= sm[i] + sn[j] + 1e-10 * (sm[0] + sn[0])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31 - 1), st.floats(0.01, 100))
def test_unitary_and_scale_invariance(n, seed, c):
    rng = np.random.default_rng(seed)
    M = random_complex(rng, n)
    Q, _ = np.linalg.qr(random_complex(rng, n))
    s = densela.singular_values(M)
    assert_allclose(densela.singular_values(Q @ M @ Q.conj().T), s, rtol=1e-10, atol=1e-12 * s[0])
    assert_allclose(densela.singular_values(c * M), c * s, rtol=1e-10, atol=1e-12 * c * s[0])
