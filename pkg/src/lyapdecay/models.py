"""Matrix families with closed-form reference values.

* ``fd_operator``: forward-difference discretisation of ``d/dx - 1``.
* ``jordan_family``: ``-I + alpha * S`` with ``S`` the shift matrix.
* ``two_by_two``: the 2 x 2 Jordan block with ``B = [t, 1]``, solvable by hand.
* ``random_stable``: seeded ``Lambda + alpha * S`` test problems.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import GenerationFailed, NotControllable, TooLarge
from .lyap import LyapunovProblem, is_controllable, krylov_matrix, solve_lyapunov

KRYLOV_MAX_N = 12


@dataclass
class ModelProblem:
    """A realised Lyapunov problem plus whatever is known about it in closed form.

    ``closed_form`` keys used here: ``wa_center``, ``wa_radius`` (numerical
    range disk), ``omega`` (numerical abscissa), ``omega_k`` (array),
    ``X`` and ``ratio`` (2 x 2 family only), ``norm`` (2 x 2 family only).
    """

    family: str
    params: dict
    problem: LyapunovProblem
    closed_form: dict = field(default_factory=dict)

    @property
    def A(self):
        return self.problem.A

    @property
    def B(self):
        return self.problem.B


def bidiagonal(n, diag, offdiag):
    return diag * np.eye(n) + offdiag * np.eye(n, k=1)


def fd_operator(n):
    """Forward differences for ``d/dx - 1`` on ``n`` cells with ``u(1) = 0``.

    ``B`` is the constant vector scaled to unit norm.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    A = bidiagonal(n, -1.0 - n, float(n))
    B = np.ones((n, 1)) / np.sqrt(n)
    c = np.cos(np.pi / (n + 1))
    k = np.arange(1, n + 1)
    closed = {
        "wa_center": -1.0 - n,
        "wa_radius": n * c,
        "omega": -1.0 - n * (1 - c),
        "omega_k": -1.0 - n * (1 - np.cos(k * np.pi / (n + 1))),
        "eigenvalue": -1.0 - n,
    }
    return ModelProblem("fd-operator", {"n": n}, LyapunovProblem(A, B), closed)


def jordan_family(n, alpha, B=None):
    """``-I + alpha S`` of order ``n``; ``B`` defaults to the all-ones vector."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    A = bidiagonal(n, -1.0, float(alpha))
    B = np.ones((n, 1)) if B is None else B
    k = np.arange(1, n + 1)
    closed = {
        "wa_center": -1.0,
        "wa_radius": alpha * np.cos(np.pi / (n + 1)),
        "omega": -1.0 + alpha * np.cos(np.pi / (n + 1)),
        "omega_k": -1.0 + alpha * np.cos(k * np.pi / (n + 1)),
        "eigenvalue": -1.0,
    }
    return ModelProblem("jordan", {"n": n, "alpha": alpha}, LyapunovProblem(A, B), closed)


def two_by_two_X(alpha, t):
    return 0.25 * np.array(
        [[2 * t**2 + 2 * alpha * t + alpha**2, alpha + 2 * t], [alpha + 2 * t, 2.0]]
    )


def trace_det_ratio(X):
    """``s_2 / s_1`` of a 2 x 2 Hermitian positive definite matrix."""
    tr = np.trace(X).real
    det = np.linalg.det(X).real
    root = np.sqrt(max(tr * tr - 4 * det, 0.0))
    return (tr - root) / (tr + root)


def two_by_two_ratio(alpha, t):
    return trace_det_ratio(two_by_two_X(alpha, t))


def piecewise_ratio(alpha):
    """Worst-case ``s_2/s_1`` over ``t``: ``alpha^2/4`` up to 2, then ``4/alpha^2``."""
    alpha = np.asarray(alpha, dtype=float)
    return np.where(alpha <= 2, alpha**2 / 4, 4 / alpha**2)


def jordan2_norm(alpha):
    """``||[[-1, alpha], [0, -1]]||`` in closed form."""
    alpha = np.asarray(alpha, dtype=float)
    return np.sqrt(1 + alpha**2 / 2 + alpha * np.sqrt(alpha**2 / 4 + 1))


def two_by_two(alpha, t):
    """``A = [[-1, alpha], [0, -1]]``, ``B = [t, 1]`` with its exact solution."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    A = np.array([[-1.0, alpha], [0.0, -1.0]])
    B = np.array([[t], [1.0]])
    X = two_by_two_X(alpha, t)
    closed = {
        "X": X,
        "ratio": trace_det_ratio(X),
        "wa_center": -1.0,
        "wa_radius": alpha / 2,
        "omega": alpha / 2 - 1,
        "omega_k": np.array([alpha / 2 - 1, -alpha / 2 - 1]),
        "norm": float(jordan2_norm(alpha)),
    }
    return ModelProblem(
        "two-by-two", {"alpha": alpha, "t": t}, LyapunovProblem(A, B), closed
    )


def worst_case_t(alpha, numeric=True):
    """Right-hand side ``t`` giving the slowest decay for the 2 x 2 family.

    Returns ``(t, ratio)`` with ``t = -alpha/2`` and the piecewise ratio. With
    ``numeric=True`` a third entry holds ``(t, ratio)`` from bounded scalar
    maximisation of the trace/determinant ratio over ``[-10 alpha, 10 alpha]``.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    t_star, ratio = -alpha / 2, float(piecewise_ratio(alpha))
    if not numeric:
        return t_star, ratio
    res = optimize.minimize_scalar(
        lambda t: -two_by_two_ratio(alpha, t),
        bounds=(-10 * alpha, 10 * alpha),
        method="bounded",
        options={"xatol": 1e-12 * max(1.0, alpha), "maxiter": 2000},
    )
    return t_star, ratio, (float(res.x), float(-res.fun))


def companion_matrix(coeffs):
    """Companion matrix with ones on the subdiagonal and ``-c`` in the last column.

    ``coeffs`` are ``c_0, ..., c_{n-1}`` of the monic polynomial
    ``c_0 + c_1 z + ... + c_{n-1} z^{n-1} + z^n``.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = c.size
    Ac = np.zeros((n, n), dtype=complex)
    Ac[1:, :-1] = np.eye(n - 1)
    Ac[:, -1] = -c
    return Ac


def companion_krylov(p, cap=KRYLOV_MAX_N, cap_override=False):
    """Factor the solution as ``X = K G K*`` for single-input problems.

    ``K`` is the Krylov matrix, ``A_c`` the companion matrix of the
    characteristic polynomial (expanded from the eigenvalues of ``A``) and
    ``G`` solves ``A_c G + G A_c* = -e_1 e_1*``.

    Returns
    -------
    K, A_c, G : ndarray
    """
    n = p.n
    if p.B.shape[1] != 1:
        raise ValueError("the Krylov factorisation needs a single input column")
    if n > cap and not cap_override:
        raise TooLarge(f"n = {n} exceeds the Krylov cap {cap}")
    if not is_controllable(p.A, p.B):
        raise NotControllable("(A, B) is not controllable")
    K = krylov_matrix(p.A, p.B)
    poly = np.poly(p.eigenvalues)  # highest degree first, leading 1
    Ac = companion_matrix(poly[::-1][:-1])
    e1 = np.zeros((n, 1))
    e1[0] = 1.0
    G = solve_lyapunov(LyapunovProblem(Ac, e1, check=False), tol=1e-8).X
    return K, Ac, G


def random_stable(
    n,
    r=1,
    seed=None,
    alpha=1.0,
    real=False,
    rotate=False,
    max_attempts=10,
):
    """Seeded problem ``A = Lambda + alpha S`` with a controllable ``B``.

    ``Lambda`` has real parts ``-10**U(-1, 1)`` and imaginary parts
    ``U(-5, 5)``; ``S`` is strictly upper triangular with standard normal
    entries. ``real=True`` pairs eigenvalues in conjugates and builds a real
    block-triangular ``A`` and real ``B``. ``rotate=True`` applies a random
    unitary (orthogonal if real) similarity so ``A`` is dense.
    """
    if n < 1 or not 1 <= r <= n:
        raise ValueError("need n >= 1 and 1 <= r <= n")
    rng = np.random.default_rng(seed)
    re = -(10.0 ** rng.uniform(-1, 1, n))
    im = rng.uniform(-5, 5, n)
    if real:
        D = np.zeros((n, n))
        S = np.triu(rng.standard_normal((n, n)), 1)
        i = 0
        while i < n:
            if i + 1 < n and rng.random() < 0.5:
                a, b = re[i], im[i]
                D[i:i + 2, i:i + 2] = [[a, b], [-b, a]]
                S[i, i + 1] = 0.0
                i += 2
            else:
                D[i, i] = re[i]
                i += 1
        A = D + alpha * S
    else:
        S = np.triu(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)), 1)
        A = np.diag(re + 1j * im) + alpha * S
    if rotate:
        Z = rng.standard_normal((n, n))
        if not real:
            Z = Z + 1j * rng.standard_normal((n, n))
        Q, R = np.linalg.qr(Z)
        Q = Q * (np.diag(R) / np.abs(np.diag(R)))
        A = Q @ A @ Q.conj().T
        if real:
            A = A.real
    for _ in range(max_attempts):
        B = rng.standard_normal((n, r))
        if not real:
            B = B + 1j * rng.standard_normal((n, r))
        if is_controllable(A, B):
            return LyapunovProblem(A, B)
    raise GenerationFailed(f"no controllable B found in {max_attempts} attempts")


def gerschgorin_norm_window(alpha):
    """``alpha - 1 <= ||A|| <= alpha + 1`` for the Jordan family, valid for ``alpha > 3``."""
    return alpha - 1.0, alpha + 1.0


__all__ = [
    "ModelProblem",
    "companion_krylov",
    "companion_matrix",
    "fd_operator",
    "gerschgorin_norm_window",
    "jordan2_norm",
    "jordan_family",
    "piecewise_ratio",
    "random_stable",
    "trace_det_ratio",
    "two_by_two",
    "two_by_two_ratio",
    "two_by_two_X",
    "worst_case_t",
]
