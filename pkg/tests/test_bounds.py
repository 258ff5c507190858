import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from lyapdecay import bounds, models, spectral
from lyapdecay.errors import NotInRightHalfPlane, SoundnessViolation
from lyapdecay.lyap import LyapunovProblem, solve_lyapunov

DIAG = np.diag([-1.0, -4.0])
ONES = np.ones((2, 1))


def diag_problem():
    p = LyapunovProblem(DIAG, ONES)
    return p, solve_lyapunov(p)


def shifts(*mu):
    return bounds.ShiftSet(np.array(mu, dtype=complex))


class TestShifts:
    def test_single_point(self):
        assert_allclose(bounds.make_shifts(DIAG, "single-point", 1).shifts, [2])

    def test_log_spaced(self):
        assert_allclose(bounds.make_shifts(np.diag([-1.0, -100.0]), "log-spaced", 3).shifts, [1, 10, 100])

    def test_user_rejects_left_half_plane(self):
        with pytest.raises(NotInRightHalfPlane):
            bounds.make_shifts(DIAG, "user", shifts=[-1.0])

    def test_prefix_and_poles(self):
        s = shifts(1 + 1j, 2)
        assert len(s.prefix(1)) == 1
        assert_allclose(s.poles, [1 - 1j, 2])


class TestPhi:
    def test_kills_scalar(self):
        assert bounds.phi_norm([[-1.0]], shifts(1)) == 0

    def test_normal(self):
        assert_allclose(bounds.phi_norm(DIAG, shifts(2)), 1 / 3)

    def test_nonnormal_positive(self):
        assert bounds.phi_norm([[-1, 2], [0, -1]], shifts(1)) > 0


class TestAdi:
    def test_empty_shift_set(self):
        p, sol = diag_problem()
        rep = bounds.adi_error_bound(sol, DIAG, bounds.ShiftSet(np.array([])))
        assert [(e.index, e.bound) for e in rep.entries] == [(1, 1.0)]

    def test_diagonal(self):
        p, sol = diag_problem()
        rep = bounds.adi_error_bound(sol, DIAG, shifts(2))
        e = rep.entries[1]
        assert e.index == 2
        assert_allclose(e.bound, 1 / 9)
        assert_allclose(e.actual, 0.06538, atol=1e-5)

    def test_fd_log_spaced(self):
        mp = models.fd_operator(16)
        sol = solve_lyapunov(mp.problem)
        # a single eigenvalue, so the log-spaced set collapses to one repeated shift
        rep = bounds.adi_error_bound(sol, mp.A, bounds.make_shifts(mp.A, "log-spaced", 4))
        assert rep.bound_at(5) >= sol.ratios[4]
        assert not rep.violations()


class TestEig:
    def test_normal_matches_adi(self):
        p, sol = diag_problem()
        rep = bounds.eig_bound(DIAG, shifts(2), sol=sol)
        assert_allclose(rep.params["kappa"], 1.0)
        assert_allclose(rep.entries[1].bound, 1 / 9)

    def test_defective(self):
        assert not bounds.eig_bound([[-1, 2], [0, -1]], shifts(1)).valid

    def test_conditioned(self):
        c = 99 / 101  # unit columns at this cosine give kappa(V) = 10
        V = np.array([[1, c], [0, np.sqrt(1 - c * c)]])
        A = V @ DIAG @ np.linalg.inv(V)
        rep = bounds.eig_bound(A, shifts(2))
        assert_allclose(rep.params["kappa"], 10, rtol=1e-8)
        assert_allclose(rep.entries[1].bound, 100 / 9, rtol=1e-7)
        assert rep.entries[1].vacuous


class TestNr:
    def test_fd(self):
        mp = models.fd_operator(16)
        rep = bounds.nr_bound(mp.A, shifts(16), sol=solve_lyapunov(mp.problem))
        assert rep.valid and np.isfinite(rep.entries[1].bound)
        assert rep.params["omega"] < 0

    def test_jordan_invalid(self):
        mp = models.jordan_family(64, 4.0)
        s = bounds.make_shifts(mp.A, "single-point", 3)
        assert not bounds.nr_bound(mp.A, s, nr=spectral.numerical_range(mp.A, 64)).valid

    def test_scalar_zero(self):
        nr = spectral.numerical_range([[-1.0]], 16)
        assert bounds.CROUZEIX**2 * np.max(np.abs(bounds.phi_scalar(nr.points, shifts(1))) ** 2) == 0


class TestPsa:
    def grid(self, A, eps):
        return spectral.resolvent_grid(A, spectral.default_box(A, eps), 256)

    def test_scalar_disk(self):
        A = np.diag([-1.0])
        c = spectral.epsilon_contour(self.grid(A, 0.1), 0.1)
        rep = bounds.psa_bound(A, shifts(1), contour=c)
        assert rep.valid
        assert_allclose((rep.params["L"] / (2 * np.pi * 0.1)) ** 2, 1, rtol=0.04)
        phi_max = np.max(np.abs(bounds.phi_scalar(c.points, shifts(1))) ** 2)
        assert_allclose(phi_max, (0.1 / 1.9) ** 2, rtol=0.05)

    def test_pole_inside(self):
        A = np.diag([-1.0])
        c = spectral.epsilon_contour(self.grid(A, 2.0), 2.0)
        assert not bounds.psa_bound(A, shifts(0.5), contour=c).valid

    def test_sweep_keeps_minimum(self):
        mp = models.jordan_family(8, 0.5)
        sol = solve_lyapunov(mp.problem)
        s = bounds.make_shifts(mp.A, "single-point", 7)
        reports, best = bounds.psa_sweep(mp.A, s, eps_list=[0.1, 0.2, 0.3], sol=sol, resolution=128)
        assert best.valid
        for e in best.entries:
            cands = [x.bound for r in reports if r.valid for x in r.entries if x.index == e.index]
            assert e.bound == min(cands)
        assert not best.violations()

    def test_under_resolved_levels_rejected(self):
        mp = models.fd_operator(32)
        s = bounds.make_shifts(mp.A, "single-point", 4)
        reports, best = bounds.psa_sweep(mp.A, s, eps_list=[1e-1, 1e-2, 1e-3], resolution=64)
        assert not any(r.valid for r in reports) and not best.valid


class TestAsz:
    def test_scalar_equality(self):
        p = LyapunovProblem([[-1.0]], [[1.0]])
        sol = solve_lyapunov(p)
        rep = bounds.asz_bound(sol, p.A, p.B)
        assert_allclose(rep.params["delta"], [0.5])
        assert_allclose(rep.params["absolute"][0], sol.singular_values[0])

    def test_diagonal_ordering(self):
        p, sol = diag_problem()
        rep = bounds.asz_bound(sol, DIAG, ONES)
        lam = np.diag(DIAG).astype(complex)
        assert bounds.asz_order(lam) == bounds.asz_order_exhaustive(lam)
        assert np.all(np.diff(rep.params["delta"]) <= 0)
        assert rep.params["absolute"][1] >= sol.singular_values[1]
        assert not rep.violations()

    def test_greedy_matches_exhaustive(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            lam = -rng.uniform(0.1, 10, 5) + 1j * rng.uniform(-5, 5, 5)
            g, x = bounds.asz_order(lam), bounds.asz_order_exhaustive(lam)
            assert_allclose(bounds.asz_delta(lam, g), bounds.asz_delta(lam, x), rtol=1e-12)

    def test_defective(self):
        mp = models.two_by_two(2.0, -1.0)
        assert not bounds.asz_bound(solve_lyapunov(mp.problem), mp.A, mp.B).valid


class TestKrylov:
    def test_scalar(self):
        p = LyapunovProblem([[-1.0]], [[1.0]])
        rep = bounds.krylov_bound(solve_lyapunov(p), p.A, p.B)
        assert_allclose(rep.entries[0].bound, 1.0)

    def test_two_by_two(self):
        mp = models.two_by_two(2.0, -1.0)
        rep = bounds.krylov_bound(solve_lyapunov(mp.problem), mp.A, mp.B)
        assert rep.params["factorisation_error"] <= 1e-10

    def test_random(self):
        p = models.random_stable(6, seed=6)
        rep = bounds.krylov_bound(solve_lyapunov(p), p.A, p.B)
        assert rep.params["factorisation_error"] <= 1e-6
        assert not rep.violations()

    def test_cap_is_reported(self):
        mp = models.fd_operator(16)
        rep = bounds.krylov_bound(solve_lyapunov(mp.problem), mp.A, mp.B)
        assert not rep.valid and "cap" in rep.reason


class TestAbscissa:
    def test_sharp_two_by_two(self):
        mp = models.two_by_two(2.0, -1.0)
        e = bounds.abscissa_bounds(solve_lyapunov(mp.problem), mp.A, mp.B)[0]
        assert abs(e.upper) <= 1e-14 and abs(e.value) <= 1e-14

    def test_scalar(self):
        p = LyapunovProblem([[-1.0]], [[1.0]])
        sol = solve_lyapunov(p)
        e = bounds.abscissa_bounds(sol, p.A, p.B)[0]
        assert_allclose((e.lower, e.value, e.upper), (-1, -1, 0))
        assert_allclose(bounds.cor_s1n(sol, p.A, p.B), (-1, -1, 0))

    def test_random(self):
        p = models.random_stable(12, 2, seed=12, alpha=3.0)
        entries = bounds.abscissa_bounds(solve_lyapunov(p), p.A, p.B)
        assert len(entries) == 12 and all(e.holds() for e in entries)

    def test_s1n_equal(self):
        mp = models.two_by_two(2.0, -1.0)
        lower, omega, upper = bounds.cor_s1n(solve_lyapunov(mp.problem), mp.A, mp.B)
        assert abs(upper) <= 1e-14 and abs(omega) <= 1e-14 and lower < 0

    def test_strip(self):
        assert_allclose(bounds.strip(1, 1, 1, 0.5), (-0.5, 1 / 3))
        assert_allclose(bounds.strip(1, 1, 1, 1), (-0.5, 0))
        assert_allclose(bounds.strip(2, 1, 1, 1e-14)[1], 2, rtol=1e-12)


class TestCorGenbnd:
    def test_alpha_100(self):
        mp = models.two_by_two(100.0, -50.0)
        rep = bounds.cor_genbnd(solve_lyapunov(mp.problem), mp.A)
        assert abs(rep.entries[1].bound - 0.51005) <= 1e-4

    def test_normal_vacuous(self):
        p, sol = diag_problem()
        assert all(e.vacuous for e in bounds.cor_genbnd(sol, DIAG).entries)

    def test_jordan_nonvacuous(self):
        mp = models.jordan_family(64, 4.0)
        rep = bounds.cor_genbnd(solve_lyapunov(mp.problem), mp.A)
        omega = rep.params["omega"]
        live = [e for e in rep.entries if not e.vacuous]
        assert len(live) == int(np.sum(omega > 0)) > 0
        assert all(e.bound < 1 for e in live)
        assert not rep.violations()


def test_check_soundness_raises():
    bad = bounds.BoundReport("x", entries=[bounds.BoundEntry(2, 0.1, 0.5)])
    with pytest.raises(SoundnessViolation):
        bounds.check_soundness([bad])
    bounds.check_soundness([bounds.BoundReport("y", entries=[bounds.BoundEntry(2, 0.1, 0.5, valid=False)])])


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**31 - 1), st.floats(0, 3), st.sampled_from(["single-point", "log-spaced"]))
def test_random_soundness(n, seed, alpha, strategy):
    p = models.random_stable(n, 1, seed=seed, alpha=alpha)
    sol = solve_lyapunov(p)
    s = bounds.make_shifts(p.A, strategy, n - 1)
    reports = [
        bounds.adi_error_bound(sol, p.A, s),
        bounds.eig_bound(p.A, s, sol=sol),
        bounds.nr_bound(p.A, s, sol=sol, nr=spectral.numerical_range(p.A, 64)),
        bounds.asz_bound(sol, p.A, p.B),
        bounds.krylov_bound(sol, p.A, p.B, problem=p),
        bounds.cor_genbnd(sol, p.A),
    ]
    bounds.check_soundness(reports)
