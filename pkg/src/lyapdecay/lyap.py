"""Dense solvers for the stable Lyapunov equation ``A X + X A* = -B B*``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as spla

from . import densela
from .errors import NoConvergence, NotControllable, SolveFailure, TooLarge, Unstable

CONTROLLABILITY_TOL = 1e-12
RESIDUAL_TOL = 1e-10
ORACLE_MAX_N = 64


def krylov_matrix(A, B, steps=None):
    """Return ``[B, A B, ..., A^(steps-1) B]`` (``steps`` defaults to ``n``)."""
    A = densela.as_matrix(A, "A")
    B = densela.as_matrix(B, "B")
    steps = A.shape[0] if steps is None else steps
    blocks = [B]
    for _ in range(steps - 1):
        blocks.append(A @ blocks[-1])
    return np.hstack(blocks)


def controllability_rank(A, B, tol=CONTROLLABILITY_TOL):
    """Numerical rank of the Krylov space generated by ``(A, B)``.

    The Krylov sequence is orthonormalised block by block (block Arnoldi with
    a second Gram-Schmidt pass), and a direction counts towards the rank only
    if its singular value after orthogonalisation exceeds
    ``tol * max(1, ||A||)`` times the scale of the block it came from. This is
    the rank test ``s_k > tol * s_1`` applied to a column-normalised Krylov
    matrix; the raw matrix ``[B AB ...]`` is graded like ``||A||^k`` and
    overflows long before ``n`` reaches the sizes used here.
    """
    A = densela.as_matrix(A, "A")
    B = densela.as_matrix(B, "B")
    n = A.shape[0]
    scale = max(1.0, densela.spectral_norm(A))
    U, s, _ = np.linalg.svd(B, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return 0
    keep = s > tol * s[0]
    Q = U[:, keep]
    block = Q
    while Q.shape[1] < n and block.shape[1] > 0:
        W = A @ block
        for _ in range(2):
            W = W - Q @ (Q.conj().T @ W)
        U, s, _ = np.linalg.svd(W, full_matrices=False)
        keep = s > tol * scale
        block = U[:, keep]
        Q = np.hstack([Q, block])
    return min(Q.shape[1], n)


def is_controllable(A, B, tol=CONTROLLABILITY_TOL):
    A = densela.as_matrix(A, "A")
    return controllability_rank(A, B, tol) == A.shape[0]


@dataclass
class LyapunovProblem:
    """Coefficient ``A`` (n x n, stable) and input matrix ``B`` (n x r).

    Construction checks stability through the eigenvalues of ``A`` and
    controllability through :func:`controllability_rank`; pass
    ``check=False`` to skip both (the solvers still reject unstable ``A``).
    """

    A: np.ndarray
    B: np.ndarray
    check: bool = field(default=True, repr=False)
    eigenvalues: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.A = densela.as_matrix(self.A, "A")
        self.B = densela.as_matrix(self.B, "B")
        n = self.A.shape[0]
        if self.A.shape != (n, n):
            raise ValueError(f"A must be square, got shape {self.A.shape}")
        if self.B.shape[0] != n:
            raise ValueError(f"B must have {n} rows, got shape {self.B.shape}")
        self.eigenvalues = densela.eigvals(self.A)
        if self.check:
            if np.any(self.eigenvalues.real >= 0):
                raise Unstable(
                    f"A has an eigenvalue with real part {self.eigenvalues.real.max():.3e} >= 0"
                )
            if not is_controllable(self.A, self.B):
                raise NotControllable("(A, B) is not controllable")

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def r(self):
        return int(np.linalg.matrix_rank(self.B))


@dataclass(frozen=True)
class SolutionSpectrum:
    """Solution ``X`` with its singular values ``s_1 >= ... >= s_n``.

    ``residual`` is the relative residual
    ``||A X + X A* + B B*|| / (2 ||A|| ||X|| + ||B||^2)``. ``factor`` is a
    matrix ``L`` with ``X = L L*`` when the solver produced one.
    """

    X: np.ndarray
    singular_values: np.ndarray
    residual: float
    factor: np.ndarray | None = None

    @property
    def ratios(self):
        """Normalised decay profile ``s_k / s_1``."""
        return self.singular_values / self.singular_values[0]


def relative_residual(A, B, X):
    R = A @ X + X @ A.conj().T + B @ B.conj().T
    scale = 2 * densela.spectral_norm(A) * densela.spectral_norm(X) + densela.spectral_norm(B) ** 2
    return float(densela.spectral_norm(R) / scale) if scale > 0 else 0.0


def _finish(p, X, tol, s=None, factor=None):
    X = (X + X.conj().T) / 2
    if s is None:
        s = densela.hermitian_eig(X).eigenvalues
    res = relative_residual(p.A, p.B, X)
    if not np.isfinite(res) or res > tol:
        raise SolveFailure(f"relative residual {res:.3e} exceeds {tol:.1e}")
    return SolutionSpectrum(X, s, res, factor)


def _check_stable(p):
    if np.any(p.eigenvalues.real >= 0):
        raise Unstable("A is not stable")


def triangular_factor(T, B):
    """Upper-triangular ``U`` with ``T (U U*) + (U U*) T* = -B B*``.

    ``T`` is upper triangular with eigenvalues in the open left half-plane.
    The last row and column are peeled off at each step: with ``tau = T[j, j]``
    and ``b`` the ``j``-th row of the current right-hand side factor,

        nu = ||b|| / sqrt(-2 Re tau)
        (T[:j, :j] + conj(tau) I) u = -(B[:j] b* / nu + nu T[:j, j])
        B[:j] <- B[:j] - u b / nu

    and ``(u, nu)`` becomes column ``j`` of ``U``. Working with the factor
    keeps the trailing singular values of ``X = U U*`` resolvable well below
    ``eps * ||X||``.
    """
    n = T.shape[0]
    U = np.zeros((n, n), dtype=complex)
    Bc = np.array(B, dtype=complex, copy=True)
    for j in range(n - 1, -1, -1):
        tau = T[j, j]
        rho = -2.0 * tau.real
        if rho <= 0:
            raise Unstable("triangular factor has an eigenvalue with Re >= 0")
        b = Bc[j]
        nu = np.linalg.norm(b) / np.sqrt(rho)
        U[j, j] = nu
        if j == 0 or nu == 0:
            continue
        M = T[:j, :j] + np.conj(tau) * np.eye(j)
        rhs = -(Bc[:j] @ b.conj() / nu + nu * T[:j, j])
        u = spla.solve_triangular(M, rhs, lower=False, check_finite=False)
        U[:j, j] = u
        Bc[:j] -= np.outer(u, b) / nu
    return U


def solve_lyapunov(p, tol=RESIDUAL_TOL):
    """Solve ``A X + X A* = -B B*`` by complex Schur reduction.

    ``A = Q T Q*`` with ``T`` upper triangular; the transformed equation is
    solved column by column for a triangular factor (:func:`triangular_factor`)
    and mapped back, ``X = (Q U)(Q U)*``. The singular values of ``X`` are the
    squared singular values of ``Q U``.

    Raises
    ------
    Unstable, SolveFailure
    """
    _check_stable(p)
    try:
        T, Q = spla.schur(p.A, output="complex")
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    U = triangular_factor(T, Q.conj().T @ p.B)
    L = Q @ U
    if not np.all(np.isfinite(L)):
        raise SolveFailure("non-finite solution factor")
    s = densela.singular_values(U) ** 2
    return _finish(p, L @ L.conj().T, tol, s, L)


def solve_lyapunov_oracle(p, tol=RESIDUAL_TOL, max_n=ORACLE_MAX_N):
    """Reference solver through the ``n^2 x n^2`` Kronecker system.

    ``(I kron A + conj(A) kron I) vec(X) = -vec(B B*)`` with column-major
    ``vec``. Memory grows like ``n^4``, hence the size cap.
    """
    _check_stable(p)
    n = p.n
    if n > max_n:
        raise TooLarge(f"n = {n} exceeds the oracle limit {max_n}")
    I = np.eye(n)
    K = np.kron(I, p.A) + np.kron(p.A.conj(), I)
    rhs = -(p.B @ p.B.conj().T).reshape(-1, order="F")
    x = densela.linear_solve(K, rhs, tol=1e-6)
    X = x.reshape(n, n, order="F")
    return _finish(p, X, tol)


def norm_identity_check(p, sol):
    """Both sides of ``||B||^2 = ||A X + X A*|| <= 2 ||A|| s_1``."""
    lhs = densela.spectral_norm(p.B) ** 2
    rhs = 2 * densela.spectral_norm(p.A) * float(sol.singular_values[0])
    return lhs, rhs
