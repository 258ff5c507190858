"""Upper bounds on the singular value decay of Lyapunov solutions.

Each ``*_bound`` function returns a :class:`BoundReport` whose entries pair
a singular value index ``i`` with an upper bound on ``s_i / s_1`` and, when a
solved instance is supplied, the realised ratio. Bounds whose hypotheses fail
(defective ``A``, a pole inside ``W(A)``, ...) are reported with
``valid=False`` rather than raised.

The rational function behind the ADI-type bounds is

    phi(z) = prod_j (z + mu_j) / (z - conj(mu_j)),   Re mu_j > 0,

and every such bound estimates ``||phi(A)||^2``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import densela, spectral
from .errors import (
    LevelOutOfRange,
    NotInRightHalfPlane,
    OpenContour,
    SoundnessViolation,
    TooLarge,
)
from .lyap import LyapunovProblem
from .models import KRYLOV_MAX_N, companion_krylov

CROUZEIX = 11.08
SOUNDNESS_TOL = 1e-9


@dataclass(frozen=True)
class ShiftSet:
    shifts: np.ndarray
    strategy: str = "user"

    def __post_init__(self):
        mu = np.atleast_1d(np.asarray(self.shifts, dtype=complex))
        if np.any(mu.real <= 0):
            raise NotInRightHalfPlane("shifts must have positive real part")
        object.__setattr__(self, "shifts", mu)

    def __len__(self):
        return self.shifts.size

    @property
    def poles(self):
        return self.shifts.conj()

    def prefix(self, j):
        return ShiftSet(self.shifts[:j], self.strategy)


@dataclass
class BoundEntry:
    index: int
    bound: float
    actual: float | None = None
    valid: bool = True
    vacuous: bool = False

    @property
    def slack(self):
        if self.actual is None:
            return None
        return self.bound - self.actual


@dataclass
class BoundReport:
    name: str
    params: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)
    valid: bool = True
    reason: str = ""

    def bound_at(self, index):
        """Tightest valid bound on ``s_index / s_1`` implied by this report.

        Singular values are sorted, so an entry at a smaller index also bounds
        every later ratio.
        """
        vals = [e.bound for e in self.entries if e.valid and e.index <= index]
        return min(vals) if vals else None

    def violations(self, tol=SOUNDNESS_TOL):
        return [
            e
            for e in self.entries
            if e.valid and e.actual is not None and e.bound < e.actual - tol
        ]


def _invalid(name, reason, params=None):
    return BoundReport(name, params or {}, [], valid=False, reason=reason)


def check_soundness(reports, tol=SOUNDNESS_TOL):
    """Raise :class:`SoundnessViolation` if any valid entry undercuts its ratio."""
    for rep in reports:
        bad = rep.violations(tol)
        if bad:
            e = bad[0]
            raise SoundnessViolation(
                f"{rep.name}: bound {e.bound:.6e} < actual {e.actual:.6e} at index {e.index}"
            )


def make_shifts(A, strategy="single-point", k=1, shifts=None):
    """Choose ADI shifts from the real extent ``[-b, -a]`` of the spectrum.

    ``single-point`` repeats ``sqrt(a b)`` ``k`` times, ``log-spaced`` spreads
    ``k`` shifts geometrically over ``[a, b]`` and ``user`` validates
    ``shifts``.
    """
    if strategy == "user":
        return ShiftSet(shifts, "user")
    lam = densela.eigvals(A)
    if np.any(lam.real >= 0):
        raise NotInRightHalfPlane("spectrum of A is not in the open left half-plane")
    a, b = float(np.min(-lam.real)), float(np.max(-lam.real))
    if strategy == "single-point":
        mu = np.full(k, np.sqrt(a * b))
    elif strategy == "log-spaced":
        mu = np.geomspace(a, b, k) if k > 1 else np.full(k, np.sqrt(a * b))
    else:
        raise ValueError(f"unknown shift strategy {strategy!r}")
    return ShiftSet(mu, strategy)


def phi_scalar(z, shifts):
    z = np.asarray(z, dtype=complex)
    out = np.ones_like(z)
    for mu in shifts.shifts:
        out = out * (z + mu) / (z - np.conj(mu))
    return out


def phi_matrices(A, shifts):
    """``[phi_0(A), phi_1(A), ..., phi_k(A)]`` for the prefixes of ``shifts``.

    Strongly nonnormal ``A`` can make ``A - conj(mu) I`` extremely
    ill-conditioned without being singular; the solve is then accepted as is,
    since the resulting norm is far above one anyway.
    """
    A = densela.as_matrix(A, "A")
    I = np.eye(A.shape[0])
    F = I.astype(complex)
    out = [F]
    with np.errstate(over="ignore", invalid="ignore"):
        for mu in shifts.shifts:
            F = (A + mu * I) @ densela.linear_solve(A - np.conj(mu) * I, F, strict=False)
            out.append(F)
    return out


def phi_norm(A, shifts):
    """``||phi(A)||`` with every factor applied as a multiply and a solve."""
    return densela.spectral_norm(phi_matrices(A, shifts)[-1])


def _indices(nshifts, r, n):
    """Pairs ``(j, j r + 1)`` for prefixes ``j`` whose index fits in ``1..n``."""
    return [(j, j * r + 1) for j in range(nshifts + 1) if j * r + 1 <= n]


def _actual(sol, index):
    if sol is None:
        return None
    return float(sol.ratios[index - 1])


def adi_error_bound(sol, A, shifts, r=1):
    """``s_{jr+1} / s_1 <= ||phi_j(A)||^2`` for every prefix ``j`` of the shifts."""
    A = densela.as_matrix(A, "A")
    F = phi_matrices(A, shifts)
    entries = []
    for j, i in _indices(len(shifts), r, A.shape[0]):
        b = densela.spectral_norm(F[j]) ** 2
        entries.append(BoundEntry(i, b, _actual(sol, i), vacuous=b >= 1))
    return BoundReport("adi", {"shifts": shifts.shifts, "r": r}, entries)


def _max_phi2(points, shifts, j):
    if j == 0:
        return 1.0
    with np.errstate(over="ignore"):
        return float(np.max(np.abs(phi_scalar(points, shifts.prefix(j))) ** 2))


def eig_bound(A, shifts, r=1, sol=None):
    """Eigenvector-conditioning bound ``kappa(V)^2 max_lambda |phi(lambda)|^2``."""
    A = densela.as_matrix(A, "A")
    eig = densela.eig_general(A)
    params = {"shifts": shifts.shifts, "r": r, "kappa": eig.condition}
    if eig.defective:
        return _invalid("eig", "A is defective (eigenvector matrix numerically singular)", params)
    kappa2 = eig.condition**2
    entries = []
    for j, i in _indices(len(shifts), r, A.shape[0]):
        b = kappa2 * _max_phi2(eig.eigenvalues, shifts, j)
        entries.append(BoundEntry(i, b, _actual(sol, i), vacuous=b >= 1))
    return BoundReport("eig", params, entries)


def nr_bound(A, shifts, r=1, nr=None, crouzeix_c=CROUZEIX, sol=None):
    """Field-of-values bound ``C^2 max_{z in W(A)} |phi(z)|^2``.

    The maximum is taken over the sampled boundary of ``W(A)``. The report is
    invalid when a pole ``conj(mu_j)`` lies in the sampled ``W(A)`` polygon.
    """
    A = densela.as_matrix(A, "A")
    if nr is None:
        nr = spectral.numerical_range(A)
    params = {"shifts": shifts.shifts, "r": r, "C": crouzeix_c, "omega": nr.abscissa}
    if nr.abscissa >= 0 and len(shifts) and np.any(nr.contains(shifts.poles)):
        return _invalid("nr", "a pole of phi lies in W(A)", params)
    entries = []
    for j, i in _indices(len(shifts), r, A.shape[0]):
        b = crouzeix_c**2 * _max_phi2(nr.points, shifts, j)
        entries.append(BoundEntry(i, b, _actual(sol, i), vacuous=b >= 1))
    return BoundReport("nr", params, entries)


def psa_bound(A, shifts, r=1, contour=None, sol=None):
    """Pseudospectral bound ``(L_eps / (2 pi eps))^2 max_{sigma_eps} |phi|^2``.

    Invalid when a pole of ``phi`` lies inside the ``eps``-contour, tested both
    by parity against the contour polylines and by evaluating
    ``sigma_min(conj(mu) I - A)`` directly. Also invalid when some eigenvalue
    falls outside the contour, which means the grid missed a component.
    """
    A = densela.as_matrix(A, "A")
    eps, L = contour.epsilon, contour.total_length
    params = {"shifts": shifts.shifts, "r": r, "eps": eps, "L": L}
    if not np.all(contour.contains(densela.eigvals(A))):
        return _invalid("psa", f"the {eps:g}-contour misses part of the spectrum", params)
    if len(shifts):
        poles = shifts.poles
        if np.any(contour.contains(poles)) or np.any(spectral.sigma_min_at(A, poles) <= eps):
            return _invalid("psa", f"a pole of phi lies in the {eps:g}-pseudospectrum", params)
    const = (L / (2 * np.pi * eps)) ** 2
    pts = contour.points
    entries = []
    for j, i in _indices(len(shifts), r, A.shape[0]):
        b = const * _max_phi2(pts, shifts, j)
        entries.append(BoundEntry(i, b, _actual(sol, i), vacuous=b >= 1))
    return BoundReport("psa", params, entries)


PSA_EPS_FRACTIONS = (0.3, 0.1, 0.03)


def psa_sweep(A, shifts, r=1, eps_list=None, sol=None, resolution=None, box=None):
    """Evaluate :func:`psa_bound` for several ``eps`` on one resolvent grid.

    ``eps_list`` defaults to ``PSA_EPS_FRACTIONS`` times ``||A||``. Levels
    finer than the grid spacing are reported invalid.

    Returns ``(reports, best)`` where ``best`` keeps, index by index, the
    smallest valid bound over the sweep.
    """
    A = densela.as_matrix(A, "A")
    if eps_list is None:
        eps_list = densela.spectral_norm(A) * np.array(PSA_EPS_FRACTIONS)
    eps_list = sorted(float(e) for e in eps_list)
    if box is None:
        box = spectral.default_box(A, max(eps_list))
    grid = spectral.resolvent_grid(A, box, resolution or spectral.DEFAULT_RESOLUTION)
    reports = []
    for eps in eps_list:
        if grid.spacing > eps:
            reports.append(_invalid("psa", f"grid spacing {grid.spacing:.3g} exceeds eps = {eps:g}", {"eps": eps}))
            continue
        try:
            contour = spectral.epsilon_contour(grid, eps)
        except (LevelOutOfRange, OpenContour) as exc:
            reports.append(_invalid("psa", str(exc), {"eps": eps}))
            continue
        reports.append(psa_bound(A, shifts, r, contour, sol))
    best = {}
    for rep in reports:
        for e in rep.entries:
            if rep.valid and e.valid and (e.index not in best or e.bound < best[e.index][0].bound):
                best[e.index] = (e, rep.params["eps"])
    entries = [best[i][0] for i in sorted(best)]
    params = {"shifts": shifts.shifts, "r": r, "eps": [best[i][1] for i in sorted(best)]}
    if not entries:
        return reports, _invalid("psa", "no valid epsilon in the sweep", params)
    return reports, BoundReport("psa", params, entries)


def asz_delta(lam, order):
    """``delta_k`` for the eigenvalues taken in ``order``."""
    lam = np.asarray(lam, dtype=complex)[list(order)]
    out = np.empty(lam.size)
    for k in range(lam.size):
        prev = lam[:k]
        out[k] = -1.0 / (2 * lam[k].real) * np.prod(
            np.abs(lam[k] - prev) ** 2 / np.abs(lam[k] + prev.conj()) ** 2
        )
    return out


def asz_order(lam):
    """Greedy ordering: each next eigenvalue maximises its own ``delta``.

    Candidate values can only shrink as eigenvalues are added (every factor
    ``|l - l_j| / |l + conj(l_j)|`` is at most one in the left half-plane), so
    the resulting sequence is non-increasing.
    """
    lam = np.asarray(lam, dtype=complex)
    remaining = list(range(lam.size))
    cand = -1.0 / (2 * lam.real)
    order = []
    while remaining:
        best = max(remaining, key=lambda i: cand[i])
        order.append(best)
        remaining.remove(best)
        for i in remaining:
            cand[i] *= abs(lam[i] - lam[best]) ** 2 / abs(lam[i] + np.conj(lam[best])) ** 2
    return order


def asz_order_exhaustive(lam):
    """Lexicographically largest non-increasing ``delta`` sequence over all orders."""
    best, best_delta = None, None
    for perm in itertools.permutations(range(len(lam))):
        d = asz_delta(lam, perm)
        if np.any(np.diff(d) > 1e-14 * d[0]):
            continue
        if best is None or tuple(d) > tuple(best_delta):
            best, best_delta = list(perm), d
    return best


def asz_bound(sol, A, B):
    """``s_{k+1} <= (n-k)^2 kappa(V)^2 ||B||^2 delta_{k+1}`` for a single input.

    Entry bounds use the relative form
    ``s_{k+1}/s_1 <= 2 (n-k)^2 ||A|| kappa(V)^2 delta_{k+1}``; the absolute
    bounds are kept in ``params["absolute"]``.
    """
    A = densela.as_matrix(A, "A")
    B = densela.as_matrix(B, "B")
    n = A.shape[0]
    if B.shape[1] != 1:
        return _invalid("asz", "only single-input problems are covered")
    eig = densela.eig_general(A)
    if eig.defective:
        return _invalid("asz", "A is defective", {"kappa": eig.condition})
    order = asz_order(eig.eigenvalues)
    delta = asz_delta(eig.eigenvalues, order)
    kappa2 = eig.condition**2
    m = (n - np.arange(n)) ** 2
    absolute = m * kappa2 * densela.spectral_norm(B) ** 2 * delta
    relative = 2 * m * densela.spectral_norm(A) * kappa2 * delta
    entries = [
        BoundEntry(k + 1, float(relative[k]), _actual(sol, k + 1), vacuous=relative[k] >= 1)
        for k in range(n)
    ]
    params = {
        "kappa": eig.condition,
        "delta": delta,
        "order": eig.eigenvalues[order],
        "absolute": absolute,
    }
    return BoundReport("asz", params, entries)


def krylov_bound(sol, A, B, cap=KRYLOV_MAX_N, cap_override=False, problem=None):
    """``s_k/s_1 <= sigma_k(K)^2 ||A|| (2 ||G|| / ||B B*||)`` via ``X = K G K*``.

    ``params["factorisation_error"]`` records ``||K G K* - X|| / ||X||``.
    """
    A = densela.as_matrix(A, "A")
    B = densela.as_matrix(B, "B")
    if B.shape[1] != 1:
        return _invalid("krylov", "only single-input problems are covered")
    p = problem if problem is not None else LyapunovProblem(A, B)
    try:
        K, Ac, G = companion_krylov(p, cap=cap, cap_override=cap_override)
    except TooLarge as exc:
        return _invalid("krylov", str(exc))
    KG = K @ G @ K.conj().T
    err = densela.spectral_norm(KG - sol.X) / densela.spectral_norm(sol.X) if sol is not None else None
    sk = densela.singular_values(K)
    const = densela.spectral_norm(A) * 2 * densela.spectral_norm(G) / densela.spectral_norm(B @ B.conj().T)
    entries = []
    for k in range(A.shape[0]):
        b = float(sk[k] ** 2 * const)
        entries.append(BoundEntry(k + 1, b, _actual(sol, k + 1), vacuous=b >= 1))
    return BoundReport("krylov", {"factorisation_error": err, "G_norm": densela.spectral_norm(G)}, entries)


@dataclass(frozen=True)
class AbscissaEntry:
    """Two-sided bound ``lower <= omega_k / ||A|| <= upper``."""

    k: int
    lower: float
    value: float
    upper: float

    def holds(self, tol=SOUNDNESS_TOL):
        return self.lower <= self.value + tol and self.value <= self.upper + tol


def abscissa_bounds(sol, A, B):
    """Bracket every Hermitian-part eigenvalue by the singular values of ``X``.

    For ``k = 1..n``::

        s_k/s_1 - 1 - ||B||^2 / (2 s_1 ||A||) <= omega_k / ||A|| <= 1 - s_{n-k+1}/s_1
    """
    A = densela.as_matrix(A, "A")
    s = sol.singular_values
    n = s.size
    normA = densela.spectral_norm(A)
    normB2 = densela.spectral_norm(B) ** 2
    omega = spectral.hermitian_part_spectrum(A)
    out = []
    for k in range(1, n + 1):
        lower = s[k - 1] / s[0] - 1 - normB2 / (2 * s[0] * normA)
        upper = 1 - s[n - k] / s[0]
        out.append(AbscissaEntry(k, float(lower), float(omega[k - 1] / normA), float(upper)))
    return out


def cor_s1n(sol, A, B):
    """``-||B||^2/(2 s_1) <= omega(A) <= (s_1 - s_n)/(s_1 + s_n) ||A||``."""
    s = sol.singular_values
    lower = -densela.spectral_norm(B) ** 2 / (2 * s[0])
    upper = (s[0] - s[-1]) / (s[0] + s[-1]) * densela.spectral_norm(A)
    return float(lower), spectral.numerical_abscissa(A), float(upper)


def strip(normA, normB, s1, sn):
    """Interval that must contain ``omega(A)`` given norms and extreme singular values."""
    return -(normB**2) / (2 * s1), (s1 - sn) / (s1 + sn) * normA


def cor_genbnd(sol, A):
    """``s_{n-k+1} / s_1 <= 1 - omega_k / ||A||`` for ``k = 1..n``.

    Entries are listed by singular value index ``n - k + 1``; those with
    ``omega_k <= 0`` are vacuous.
    """
    A = densela.as_matrix(A, "A")
    n = A.shape[0]
    omega = spectral.hermitian_part_spectrum(A)
    normA = densela.spectral_norm(A)
    entries = []
    for k in range(1, n + 1):
        b = float(1 - omega[k - 1] / normA)
        i = n - k + 1
        entries.append(BoundEntry(i, b, _actual(sol, i), vacuous=omega[k - 1] <= 0))
    entries.sort(key=lambda e: e.index)
    return BoundReport("cor_genbnd", {"omega": omega, "norm": normA}, entries)
