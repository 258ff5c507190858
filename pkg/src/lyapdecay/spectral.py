"""Numerical range, Hermitian-part spectrum and pseudospectra."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as spla
from skimage import measure

from . import densela
from .errors import LevelOutOfRange, NoConvergence, OpenContour

DEFAULT_ANGLES = 256
DEFAULT_RESOLUTION = 256


@dataclass(frozen=True)
class NumericalRangeBoundary:
    """Support points of ``W(A)`` sampled at ``m`` uniformly spaced angles.

    ``points[j]`` maximises ``Re(exp(-i theta_j) z)`` over ``W(A)``.
    ``omega`` holds every eigenvalue of the Hermitian part, descending, so
    ``omega[0]`` is the numerical abscissa.
    """

    angles: np.ndarray
    points: np.ndarray
    omega: np.ndarray
    degenerate: bool

    @property
    def abscissa(self):
        return float(self.omega[0])

    def contains(self, z, inflate=1e-8):
        """True where ``z`` lies in the polygon spanned by the support points.

        Uses the supporting half-planes ``Re(exp(-i theta_j) (z - p_j)) <= 0``,
        each relaxed by ``inflate`` times the polygon diameter.
        """
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        rot = np.exp(-1j * self.angles)
        slack = inflate * max(1.0, np.ptp(self.points.real) + np.ptp(self.points.imag))
        proj = (rot[None, :] * (z[:, None] - self.points[None, :])).real
        return np.all(proj <= slack, axis=1)


def hermitian_part_spectrum(A):
    """All eigenvalues of ``(A + A*) / 2`` in descending order."""
    return densela.hermitian_eig(densela.hermitian_part(A)).eigenvalues


def numerical_abscissa(A):
    """Rightmost point of the numerical range, ``max eig((A + A*)/2)``."""
    return float(hermitian_part_spectrum(A)[0])


def _top_eigvec(H):
    n = H.shape[0]
    try:
        _, v = spla.eigh(H, subset_by_index=[n - 1, n - 1])
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return v[:, 0]


def polygon_area(points):
    x, y = points.real, points.imag
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def numerical_range(A, m=DEFAULT_ANGLES):
    """Boundary of the field of values by the rotation method.

    For ``theta_j = 2 pi j / m`` the top eigenvector ``v`` of the Hermitian
    part of ``exp(-i theta_j) A`` gives the boundary point ``v* A v``.
    """
    A = densela.as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    if m < 8:
        raise ValueError("need at least 8 angles")
    angles = 2 * np.pi * np.arange(m) / m
    AH = A.conj().T
    points = np.empty(m, dtype=complex)
    for j, th in enumerate(angles):
        rot = np.exp(-1j * th)
        H = (rot * A + np.conj(rot) * AH) / 2
        v = _top_eigvec(H)
        points[j] = np.vdot(v, A @ v)
    omega = hermitian_part_spectrum(A)
    norm = densela.spectral_norm(A)
    degenerate = polygon_area(points) < 1e-12 * max(norm, np.finfo(float).tiny) ** 2
    return NumericalRangeBoundary(angles, points, omega, bool(degenerate))


def is_convex_polygon(points, tol=1e-9):
    """Cross products of consecutive edges never turn clockwise beyond ``tol``.

    Repeated points (zero-length edges) are ignored.
    """
    e = np.diff(np.append(points, points[0]))
    scale = np.abs(e).max()
    if scale == 0:
        return True
    e = e[np.abs(e) > 1e-14 * scale]
    f = np.roll(e, -1)
    cross = e.real * f.imag - e.imag * f.real
    return bool(np.all(cross >= -tol * scale**2))


@dataclass(frozen=True)
class PseudospectrumGrid:
    """Values ``sigma_min(z I - A)`` on a rectangular grid.

    ``values[i, j]`` belongs to ``z = re[j] + 1j * im[i]``.
    """

    re: np.ndarray
    im: np.ndarray
    values: np.ndarray

    @property
    def box(self):
        return (self.re[0], self.re[-1], self.im[0], self.im[-1])

    @property
    def spacing(self):
        return max(self.re[1] - self.re[0], self.im[1] - self.im[0])


def default_box(A, eps_max, nr=None):
    """Bounding box of ``W(A)`` padded by ``max(2 eps_max, 0.1 ||A||)``."""
    A = densela.as_matrix(A, "A")
    if nr is None:
        nr = numerical_range(A, m=64)
    pad = max(2 * eps_max, 0.1 * densela.spectral_norm(A))
    pts = np.concatenate([nr.points, densela.eigvals(A)])
    return (
        pts.real.min() - pad,
        pts.real.max() + pad,
        pts.imag.min() - pad,
        pts.imag.max() + pad,
    )


def resolvent_grid(A, box, resolution=DEFAULT_RESOLUTION, chunk=None):
    """Smallest singular value of ``z I - A`` at every node of ``box``.

    ``box = (re_min, re_max, im_min, im_max)``; each axis gets
    ``resolution`` points. Rows of the grid are evaluated in batches and
    assembled in order, so the result does not depend on ``chunk``.
    """
    A = densela.as_matrix(A, "A")
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    n = A.shape[0]
    re = np.linspace(box[0], box[1], resolution)
    im = np.linspace(box[2], box[3], resolution)
    # Schur form: same singular values, triangular structure for LAPACK.
    T, _ = spla.schur(A, output="complex")
    I = np.eye(n)
    if chunk is None:
        chunk = max(1, min(resolution, 2**22 // (n * n * resolution) or 1))
    values = np.empty((resolution, resolution))
    for i0 in range(0, resolution, chunk):
        rows = im[i0:i0 + chunk]
        z = re[None, :] + 1j * rows[:, None]
        M = z[..., None, None] * I - T
        try:
            s = np.linalg.svd(M, compute_uv=False)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from exc
        values[i0:i0 + chunk] = s[..., -1]
    return PseudospectrumGrid(re, im, values)


def sigma_min_at(A, z):
    """``sigma_min(z I - A)`` for each point of ``z``."""
    A = densela.as_matrix(A, "A")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    M = z[:, None, None] * np.eye(A.shape[0]) - A
    return np.linalg.svd(M, compute_uv=False)[:, -1]


@dataclass(frozen=True)
class EpsilonContour:
    """Closed polylines bounding ``sigma_eps(A)``; ``total_length`` estimates L_eps."""

    epsilon: float
    polylines: list
    total_length: float

    @property
    def points(self):
        return np.concatenate([p[:-1] for p in self.polylines])

    def contains(self, z):
        """Even-odd point-in-region test against all polylines."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        inside = np.zeros(z.shape, dtype=bool)
        for poly in self.polylines:
            inside ^= _crossings_odd(poly, z)
        return inside


def _crossings_odd(poly, z):
    a, b = poly[:-1], poly[1:]
    x, y = z.real[:, None], z.imag[:, None]
    ay, by = a.imag[None, :], b.imag[None, :]
    straddle = (ay > y) != (by > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = a.real[None, :] + (y - ay) * (b.real - a.real)[None, :] / (by - ay)
    hits = straddle & (x < xc)
    return (hits.sum(axis=1) % 2).astype(bool)


def winding_number(poly, z):
    """Winding number of a closed polyline around each point of ``z``."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    d = poly[None, :] - z[:, None]
    ang = np.angle(d[:, 1:] / d[:, :-1])
    return np.rint(ang.sum(axis=1) / (2 * np.pi)).astype(int)


def epsilon_contour(grid, eps):
    """Level set ``sigma_min(z I - A) = eps`` by marching squares.

    Raises
    ------
    LevelOutOfRange
        If ``eps`` is not strictly inside the range of grid values.
    OpenContour
        If a level curve leaves the grid, i.e. the box is too small.
    """
    vmin, vmax = grid.values.min(), grid.values.max()
    if not (vmin < eps < vmax):
        raise LevelOutOfRange(f"eps = {eps:g} outside grid value range ({vmin:g}, {vmax:g})")
    raw = measure.find_contours(grid.values, eps)
    res = len(grid.re)
    polylines = []
    for c in raw:
        if not np.array_equal(c[0], c[-1]):
            raise OpenContour(f"eps = {eps:g} level set reaches the grid edge; enlarge the box")
        rows, cols = c[:, 0], c[:, 1]
        x = np.interp(cols, np.arange(res), grid.re)
        y = np.interp(rows, np.arange(len(grid.im)), grid.im)
        polylines.append(x + 1j * y)
    length = float(sum(np.abs(np.diff(p)).sum() for p in polylines))
    return EpsilonContour(float(eps), polylines, length)
