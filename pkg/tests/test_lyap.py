import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from lyapdecay import densela, models
from lyapdecay.errors import NotControllable, TooLarge, Unstable
from lyapdecay.lyap import (
    LyapunovProblem,
    controllability_rank,
    norm_identity_check,
    relative_residual,
    solve_lyapunov,
    solve_lyapunov_oracle,
)

SOLVERS = [solve_lyapunov, solve_lyapunov_oracle]


def test_problem_checks():
    with pytest.raises(Unstable):
        LyapunovProblem(np.diag([-1.0, 0.0]), np.ones((2, 1)))
    with pytest.raises(NotControllable):
        LyapunovProblem(np.diag([-1.0, -2.0]), np.array([[1.0], [0.0]]))
    p = LyapunovProblem(np.diag([-1.0, -2.0, -3.0]), np.ones((3, 2)))
    assert p.n == 3 and p.r == 1


def test_controllability_survives_large_norms():
    # the raw Krylov matrix overflows here
    A = -np.eye(40) + 1e3 * np.eye(40, k=1)
    B = np.zeros((40, 1))
    B[-1] = 1.0
    assert controllability_rank(A, B) == 40


@pytest.mark.parametrize("solve", SOLVERS)
class TestKnownSolutions:
    def test_scalar(self, solve):
        sol = solve(LyapunovProblem([[-1.0]], [[1.0]]))
        assert_allclose(sol.X, [[0.5]])
        assert_allclose(sol.singular_values, [0.5])

    def test_scalar_scaled(self, solve):
        assert_allclose(solve(LyapunovProblem([[-1.0]], [[2.0]])).X, [[2.0]])

    def test_two_by_two_worst_case(self, solve):
        sol = solve(models.two_by_two(2.0, -1.0).problem)
        assert_allclose(sol.X, 0.5 * np.eye(2), atol=1e-14)
        assert_allclose(sol.singular_values, [0.5, 0.5])

    def test_diagonal(self, solve):
        sol = solve(LyapunovProblem(np.diag([-1.0, -4.0]), [[1.0], [1.0]]))
        assert_allclose(sol.X, [[1 / 2, 1 / 5], [1 / 5, 1 / 8]], atol=1e-15)


def test_random_against_oracle():
    p = models.random_stable(8, 2, seed=7)
    X, Xo = solve_lyapunov(p).X, solve_lyapunov_oracle(p).X
    assert densela.spectral_norm(X - Xo) <= 1e-8 * densela.spectral_norm(Xo)


def test_solution_invariants():
    p = models.random_stable(12, 3, seed=8, alpha=2.0, rotate=True)
    sol = solve_lyapunov(p)
    assert_allclose(sol.X, sol.X.conj().T)
    assert relative_residual(p.A, p.B, sol.X) <= 1e-10
    eig = densela.hermitian_eig(sol.X).eigenvalues
    assert_allclose(sol.singular_values, eig, atol=1e-12 * eig[0])
    assert np.all(np.diff(sol.singular_values) <= 0)
    assert sol.ratios[0] == 1


def test_factored_solver_resolves_fast_decay():
    # eigenvalues of X below eps * s_1 are still ordered and positive
    sol = solve_lyapunov(models.jordan_family(64, 0.5).problem)
    assert np.all(sol.singular_values > 0)
    assert sol.ratios[20] < 1e-20


def test_oracle_size_cap():
    with pytest.raises(TooLarge):
        solve_lyapunov_oracle(models.fd_operator(65).problem)


class TestNormIdentity:
    def test_scalar_equality(self):
        p = LyapunovProblem([[-1.0]], [[1.0]])
        lhs, rhs = norm_identity_check(p, solve_lyapunov(p))
        assert_allclose((lhs, rhs), (1.0, 1.0))

    def test_two_by_two(self):
        p = models.two_by_two(2.0, -1.0).problem
        lhs, rhs = norm_identity_check(p, solve_lyapunov(p))
        assert_allclose(lhs, 2.0)
        assert_allclose(rhs, 1 + np.sqrt(2))

    def test_random(self):
        p = models.random_stable(10, 1, seed=11, alpha=3.0)
        lhs, rhs = norm_identity_check(p, solve_lyapunov(p))
        assert lhs <= rhs * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1), st.floats(0.1, 10))
def test_scale_covariance(n, seed, c):
    # (cA, sqrt(c) B) has the same solution
    p = models.random_stable(n, 1, seed=seed)
    X = solve_lyapunov(p).X
    Xc = solve_lyapunov(LyapunovProblem(c * p.A, np.sqrt(c) * p.B)).X
    assert densela.spectral_norm(X - Xc) <= 1e-9 * densela.spectral_norm(X)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_unitary_covariance(n, seed):
    p = models.random_stable(n, 2 if n > 1 else 1, seed=seed)
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    s = solve_lyapunov(p).singular_values
    sq = solve_lyapunov(LyapunovProblem(Q @ p.A @ Q.conj().T, Q @ p.B)).singular_values
    assert_allclose(sq, s, rtol=1e-8, atol=1e-12 * s[0])
