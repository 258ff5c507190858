"""Dense complex linear algebra used throughout the package.

Every routine accepts anything :func:`numpy.asarray` understands and works in
``complex128``. The heavy lifting is delegated to LAPACK through
:mod:`scipy.linalg`; this module pins down ordering conventions, tolerances
and the error types.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as spla

from .errors import NoConvergence, NotHermitian, Singular

DEFAULT_TOL = 1e-10
DEFECTIVE_CAP = 1e12


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D ``complex128`` array.

    Vectors are promoted to a single column.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    elif M.ndim == 1:
        M = M.reshape(-1, 1)
    elif M.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def _require_square(M, name="matrix"):
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Eigenvalues in descending order with matching unitary eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SvdResult:
    singular_values: np.ndarray
    U: np.ndarray
    Vh: np.ndarray


@dataclass(frozen=True)
class EigResult:
    """Eigen-decomposition ``M V = V diag(eigenvalues)``.

    Columns of ``V`` have unit 2-norm. ``defective`` is set when
    ``condition`` (the 2-norm condition number of ``V``) reaches
    ``DEFECTIVE_CAP``.
    """

    eigenvalues: np.ndarray
    V: np.ndarray
    condition: float
    defective: bool


def hermitian_part(M):
    M = as_matrix(M)
    return (M + M.conj().T) / 2


def hermitian_eig(H, tol=DEFAULT_TOL):
    """Full eigensystem of a Hermitian matrix, eigenvalues descending.

    Raises
    ------
    NotHermitian
        If ``||H - H*|| > tol * ||H||``.
    NoConvergence
        If LAPACK fails to converge.
    """
    H = as_matrix(H, "H")
    _require_square(H, "H")
    scale = np.linalg.norm(H, 2) if H.size else 0.0
    if np.linalg.norm(H - H.conj().T, 2) > tol * max(scale, np.finfo(float).tiny):
        raise NotHermitian("matrix is not Hermitian to the requested tolerance")
    H = (H + H.conj().T) / 2
    try:
        w, V = spla.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return HermitianEigenSystem(w[::-1].copy(), V[:, ::-1].copy())


def svd(M):
    """Singular value decomposition with descending singular values."""
    M = as_matrix(M)
    try:
        U, s, Vh = spla.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        try:
            U, s, Vh = spla.svd(M, full_matrices=False, lapack_driver="gesvd")
        except np.linalg.LinAlgError:
            raise NoConvergence(str(exc)) from exc
    return SvdResult(s, U, Vh)


def singular_values(M):
    M = as_matrix(M)
    if M.size == 0:
        return np.zeros(0)
    try:
        return spla.svdvals(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def spectral_norm(M):
    """Largest singular value of ``M`` (the induced 2-norm)."""
    s = singular_values(M)
    return float(s[0]) if s.size else 0.0


def eig_general(M, cap=DEFECTIVE_CAP):
    """Eigenvalues and unit-column eigenvectors of a square matrix.

    The eigenvector condition number ``||V|| ||V^-1||`` is measured through
    the singular values of ``V``; a numerically singular ``V`` reports an
    infinite condition number and sets ``defective``.
    """
    M = as_matrix(M)
    _require_square(M)
    try:
        w, V = spla.eig(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    V = V / np.linalg.norm(V, axis=0, keepdims=True)
    s = singular_values(V)
    kappa = float(s[0] / s[-1]) if s[-1] > 0 else np.inf
    return EigResult(w, V, kappa, bool(kappa >= cap))


def eigvals(M):
    M = as_matrix(M)
    _require_square(M)
    try:
        return spla.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def linear_solve(M, rhs, tol=DEFAULT_TOL, strict=True):
    """Solve ``M X = rhs`` with LU and partial pivoting.

    Raises :class:`Singular` when ``M`` is exactly singular or the result is
    not finite. With ``strict=True`` (default) it also raises when the
    reciprocal condition estimate falls below machine precision or the
    residual ``||M X - rhs||`` exceeds ``tol * ||M|| ||X||``.
    """
    M = as_matrix(M, "M")
    _require_square(M, "M")
    rhs_arr = np.asarray(rhs, dtype=complex)
    vector = rhs_arr.ndim == 1
    rhs_m = as_matrix(rhs_arr, "rhs")
    try:
        with warnings.catch_warnings():
            # exact singularity is reported below as an exception
            warnings.simplefilter("ignore", spla.LinAlgWarning)
            lu, piv = spla.lu_factor(M, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise Singular(str(exc)) from exc
    if np.any(np.diag(lu) == 0):
        raise Singular("matrix is exactly singular")
    if strict:
        anorm = np.linalg.norm(M, 1)
        rcond, _ = spla.lapack.zgecon(lu, anorm, norm="1")
        if rcond < np.finfo(float).eps:
            raise Singular(f"reciprocal condition number {rcond:.1e} below machine precision")
    X = spla.lu_solve((lu, piv), rhs_m)
    if not np.all(np.isfinite(X)):
        raise Singular("solution is not finite")
    if not strict:
        return X.ravel() if vector else X
    res = np.linalg.norm(M @ X - rhs_m, 2)
    if res > tol * np.linalg.norm(M, 2) * np.linalg.norm(X, 2):
        raise Singular(f"residual {res:.3e} too large; matrix numerically singular")
    return X.ravel() if vector else X
