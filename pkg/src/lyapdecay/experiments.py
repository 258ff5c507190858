"""Experiment drivers that write CSV tables and SVG figures.

Each ``run_*`` function takes an :class:`ExperimentConfig`, writes its files
under ``config.out`` and returns an :class:`ExperimentResult` carrying both
the paths and the numbers that went into them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bounds, densela, io, models, plotting, spectral
from .errors import LyapDecayError, SoundnessViolation
from .lyap import LyapunovProblem, solve_lyapunov

EXPERIMENTS = ("fig1", "fig2", "two-by-two-sweep", "strip", "bounds-compare", "custom")
FORMATS = ("csv", "svg")
STRATEGIES = ("single-point", "log-spaced", "user")
MODELS = ("fd", "jordan", "two-by-two", "random", "file")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    experiment: str = "custom"
    n: list = field(default_factory=list)
    alpha: list = field(default_factory=list)
    t: float | None = None
    r: int = 1
    strategy: str = "single-point"
    shifts: list = field(default_factory=list)
    eps: list = field(default_factory=list)
    m: int = spectral.DEFAULT_ANGLES
    grid: int = spectral.DEFAULT_RESOLUTION
    out: Path = Path("out")
    formats: tuple = FORMATS
    seed: int = 0
    cap_override: bool = False
    model: str = "fd"
    a_path: Path | None = None
    b_path: Path | None = None
    strip: tuple = (1.0, 1.0, 1.0, 0.5)

    def __post_init__(self):
        self.out = Path(self.out)
        self.formats = tuple(self.formats)
        self.validate()

    def validate(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        bad = set(self.formats) - set(FORMATS)
        if bad:
            raise ConfigError(f"unknown formats {sorted(bad)}")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}")
        if any(int(v) < 1 for v in self.n):
            raise ConfigError("n values must be positive")
        if any(float(a) <= 0 for a in self.alpha):
            raise ConfigError("alpha values must be positive")
        if any(float(e) <= 0 for e in self.eps):
            raise ConfigError("eps values must be positive")
        if self.m < 8:
            raise ConfigError("m must be at least 8")
        if self.grid < 16:
            raise ConfigError("grid must be at least 16")
        if self.r < 1:
            raise ConfigError("r must be positive")
        if self.strategy == "user" and not self.shifts:
            raise ConfigError("strategy 'user' needs --shifts")
        if len(self.strip) != 4 or any(float(v) <= 0 for v in self.strip):
            raise ConfigError("strip needs four positive numbers ||A|| ||B|| s_1 s_n")
        if self.model == "file" and self.a_path is None:
            raise ConfigError("model 'file' needs an A matrix file")


@dataclass
class ExperimentResult:
    files: list = field(default_factory=list)
    data: dict = field(default_factory=dict)


def _want(config, fmt):
    return fmt in config.formats


def _decay_rows(key, ratios):
    return [(key, k, r) for k, r in enumerate(ratios, start=1)]


def _boundary_rows(key, nr):
    return [(key, j, th, z.real, z.imag) for j, (th, z) in enumerate(zip(nr.angles, nr.points))]


def run_fig1(config):
    """Decay and numerical ranges for the finite-difference operator."""
    ns = [int(n) for n in config.n] or [16, 32, 64, 128, 256]
    res = ExperimentResult()
    ratios, nranges = {}, {}
    for n in ns:
        mp = models.fd_operator(n)
        ratios[n] = solve_lyapunov(mp.problem).ratios
        nranges[n] = spectral.numerical_range(mp.A, config.m)
    out = config.out
    if _want(config, "csv"):
        rows = [r for n in ns for r in _decay_rows(n, ratios[n])]
        res.files.append(io.write_csv(out / "fig1_decay.csv", ["n", "k", "ratio"], rows))
        rows = [r for n in ns for r in _boundary_rows(n, nranges[n])]
        res.files.append(io.write_csv(out / "fig1_boundary.csv", ["n", "j", "theta", "re", "im"], rows))
        rows = [(n, nranges[n].abscissa) for n in ns]
        res.files.append(io.write_csv(out / "fig1_abscissa.csv", ["n", "omega"], rows))
    if _want(config, "svg"):
        res.files.append(
            plotting.decay_and_boundaries(
                out / "fig1.svg",
                ratios,
                {n: nranges[n].points for n in ns},
                lambda n: f"n = {n}",
            )
        )
    res.data = {"ratios": ratios, "nranges": nranges}
    return res


def run_fig2(config):
    """Decay and numerical ranges for ``-I + alpha S`` at ``n = 64``."""
    n = int(config.n[0]) if config.n else 64
    alphas = [float(a) for a in config.alpha] or [0.5, 1.0, 2.0, 4.0]
    res = ExperimentResult()
    ratios, nranges = {}, {}
    for a in alphas:
        mp = models.jordan_family(n, a)
        ratios[a] = solve_lyapunov(mp.problem).ratios
        nranges[a] = spectral.numerical_range(mp.A, config.m)
    radii = {a: float(np.mean(np.abs(nranges[a].points + 1.0))) for a in alphas}
    out = config.out
    if _want(config, "csv"):
        rows = [r for a in alphas for r in _decay_rows(a, ratios[a])]
        res.files.append(io.write_csv(out / "fig2_decay.csv", ["alpha", "k", "ratio"], rows))
        rows = [r for a in alphas for r in _boundary_rows(a, nranges[a])]
        res.files.append(io.write_csv(out / "fig2_boundary.csv", ["alpha", "j", "theta", "re", "im"], rows))
        rows = [(a, radii[a], a * np.cos(np.pi / (n + 1)), nranges[a].abscissa) for a in alphas]
        res.files.append(
            io.write_csv(out / "fig2_radius.csv", ["alpha", "radius", "radius_exact", "omega"], rows)
        )
    if _want(config, "svg"):
        res.files.append(
            plotting.decay_and_boundaries(
                out / "fig2.svg",
                ratios,
                {a: nranges[a].points for a in alphas},
                lambda a: f"alpha = {a:g}",
            )
        )
    res.data = {"n": n, "ratios": ratios, "nranges": nranges, "radii": radii}
    return res


def run_two_by_two_sweep(config):
    """Worst-case ``s_2/s_1`` of the 2 x 2 family across ``alpha``.

    The default grid is 200 points on ``[0.1, 10]`` with ``alpha = 2`` added.
    Raises :class:`SoundnessViolation` if the solver departs from the closed
    form by more than ``1e-10`` or the abscissa bound falls below the ratio.
    """
    if config.alpha:
        alphas = np.array(sorted(float(a) for a in config.alpha))
    else:
        alphas = np.union1d(np.linspace(0.1, 10, 200), [2.0])
    exact = models.piecewise_ratio(alphas)
    solver = np.empty_like(alphas)
    bound = np.empty_like(alphas)
    for i, a in enumerate(alphas):
        mp = models.two_by_two(a, -a / 2)
        sol = solve_lyapunov(mp.problem)
        solver[i] = sol.ratios[1]
        rep = bounds.cor_genbnd(sol, mp.A)
        bound[i] = next(e.bound for e in rep.entries if e.index == 2)
    res = ExperimentResult()
    out = config.out
    if _want(config, "csv"):
        rows = list(zip(alphas, exact, solver, bound))
        res.files.append(
            io.write_csv(
                out / "sweep2x2.csv", ["alpha", "exact_ratio", "solver_ratio", "cor_genbnd_bound"], rows
            )
        )
    if _want(config, "svg"):
        res.files.append(plotting.sweep_plot(out / "sweep2x2.svg", alphas, exact, solver, bound))
    err = float(np.max(np.abs(exact - solver)))
    res.data = {"alpha": alphas, "exact": exact, "solver": solver, "bound": bound, "max_error": err}
    if err > 1e-10:
        raise SoundnessViolation(f"solver ratio deviates from closed form by {err:.3e}")
    if np.any(bound < solver - bounds.SOUNDNESS_TOL):
        raise SoundnessViolation("abscissa bound below the realised ratio")
    return res


def run_strip(config):
    """Interval for ``omega(A)`` allowed by ``||A||, ||B||, s_1, s_n``."""
    normA, normB, s1, sn = (float(v) for v in config.strip)
    lower, upper = bounds.strip(normA, normB, s1, sn)
    res = ExperimentResult()
    out = config.out
    if _want(config, "csv"):
        res.files.append(
            io.write_csv(
                out / "strip.csv",
                ["normA", "normB", "s1", "sn", "lower", "upper"],
                [(normA, normB, s1, sn, lower, upper)],
            )
        )
    if _want(config, "svg"):
        res.files.append(plotting.strip_plot(out / "strip.svg", lower, upper, normA))
    res.data = {"lower": lower, "upper": upper}
    return res


def build_problem(config):
    """Realise the problem named by ``config.model``; returns a :class:`ModelProblem`."""
    n = int(config.n[0]) if config.n else 16
    alpha = float(config.alpha[0]) if config.alpha else 1.0
    if config.model == "fd":
        return models.fd_operator(n)
    if config.model == "jordan":
        return models.jordan_family(n, alpha)
    if config.model == "two-by-two":
        t = -alpha / 2 if config.t is None else config.t
        return models.two_by_two(alpha, t)
    if config.model == "random":
        p = models.random_stable(n, config.r, seed=config.seed, alpha=alpha)
        return models.ModelProblem("custom", {"n": n, "alpha": alpha, "seed": config.seed}, p)
    A = io.read_matrix(config.a_path)
    B = io.read_matrix(config.b_path) if config.b_path else np.ones((A.shape[0], 1))
    return models.ModelProblem("custom", {"A": str(config.a_path)}, LyapunovProblem(A, B))


def shift_set(config, A, r=1):
    n = A.shape[0]
    k = max(1, -(-(n - 1) // r))
    if config.strategy == "user":
        return bounds.make_shifts(A, "user", shifts=[complex(s) for s in config.shifts])
    return bounds.make_shifts(A, config.strategy, k)


COMPARE_COLUMNS = ("adi", "eig", "nr", "psa", "asz", "krylov", "cor_genbnd")


def all_bounds(mp, sol, config):
    """Every bound report for one solved problem, keyed by name."""
    A, B = mp.A, mp.B
    r = mp.problem.r
    shifts = shift_set(config, A, r)
    eps = [float(e) for e in config.eps] or None
    reports = {
        "adi": bounds.adi_error_bound(sol, A, shifts, r),
        "eig": bounds.eig_bound(A, shifts, r, sol=sol),
        "nr": bounds.nr_bound(A, shifts, r, nr=spectral.numerical_range(A, config.m), sol=sol),
        "psa": bounds.psa_sweep(A, shifts, r, eps_list=eps, sol=sol, resolution=config.grid)[1],
        "asz": bounds.asz_bound(sol, A, B),
        "krylov": bounds.krylov_bound(sol, A, B, cap_override=config.cap_override, problem=mp.problem),
        "cor_genbnd": bounds.cor_genbnd(sol, A),
    }
    return reports


def run_bounds_compare(mp, config, check=True):
    """Tabulate every bound next to the realised ratios ``s_k / s_1``.

    Columns hold the bound reported exactly at index ``k`` (blank if none),
    each followed by a ``*_valid`` flag. The table is written before the
    soundness check so a failing run can still be inspected.
    """
    sol = solve_lyapunov(mp.problem)
    reports = all_bounds(mp, sol, config)
    n = mp.problem.n
    header = ["k", "actual"]
    for name in COMPARE_COLUMNS:
        header += [name, f"{name}_valid"]
    table = {name: np.full(n, np.nan) for name in COMPARE_COLUMNS}
    rows = []
    for k in range(1, n + 1):
        row = [k, float(sol.ratios[k - 1])]
        for name in COMPARE_COLUMNS:
            rep = reports[name]
            e = next((e for e in rep.entries if e.index == k), None)
            valid = rep.valid and e is not None and e.valid
            row += [e.bound if e is not None else None, valid]
            if valid:
                table[name][k - 1] = e.bound
        rows.append(row)
    res = ExperimentResult()
    out = config.out
    if _want(config, "csv"):
        res.files.append(io.write_csv(out / "compare.csv", header, rows))
    if _want(config, "svg"):
        res.files.append(plotting.bounds_plot(out / "compare.svg", np.arange(1, n + 1), sol.ratios, table))
    res.data = {"solution": sol, "reports": reports, "table": table}
    if check:
        bounds.check_soundness(reports.values())
    return res


def run_solve(mp, config):
    sol = solve_lyapunov(mp.problem)
    lhs, rhs = (densela.spectral_norm(mp.B) ** 2, 2 * densela.spectral_norm(mp.A) * sol.singular_values[0])
    res = ExperimentResult(data={"solution": sol, "norm_identity": (lhs, rhs)})
    if _want(config, "csv"):
        rows = [(k, s, s / sol.singular_values[0]) for k, s in enumerate(sol.singular_values, 1)]
        res.files.append(io.write_csv(config.out / "singular_values.csv", ["k", "s", "ratio"], rows))
        res.files.append(
            io.write_csv(
                config.out / "solve_summary.csv",
                ["n", "r", "residual", "normB2", "two_normA_s1"],
                [(mp.problem.n, mp.problem.r, sol.residual, lhs, rhs)],
            )
        )
    if _want(config, "svg"):
        res.files.append(
            plotting.decay_and_boundaries(
                config.out / "solve.svg",
                {"X": sol.ratios},
                {"A": spectral.numerical_range(mp.A, config.m).points},
                str,
            )
        )
    return res


def run_nrange(mp, config):
    nr = spectral.numerical_range(mp.A, config.m)
    res = ExperimentResult(data={"nrange": nr})
    if _want(config, "csv"):
        res.files.append(
            io.write_csv(config.out / "nrange.csv", ["j", "theta", "re", "im"], [r[1:] for r in _boundary_rows(0, nr)])
        )
        res.files.append(
            io.write_csv(config.out / "omega.csv", ["k", "omega"], list(enumerate(nr.omega, 1)))
        )
    return res


def run_psa(mp, config):
    eps = sorted(float(e) for e in config.eps) or sorted(
        densela.spectral_norm(mp.A) * np.array(bounds.PSA_EPS_FRACTIONS)
    )
    box = spectral.default_box(mp.A, max(eps))
    grid = spectral.resolvent_grid(mp.A, box, config.grid)
    contours = {}
    for e in eps:
        try:
            contours[e] = spectral.epsilon_contour(grid, e)
        except LyapDecayError as exc:
            contours[e] = exc
    res = ExperimentResult(data={"grid": grid, "contours": contours})
    if _want(config, "csv"):
        rows = [
            (e, c.total_length if not isinstance(c, Exception) else None, len(c.polylines) if not isinstance(c, Exception) else 0, "" if not isinstance(c, Exception) else type(c).__name__)
            for e, c in contours.items()
        ]
        res.files.append(io.write_csv(config.out / "psa_lengths.csv", ["eps", "length", "pieces", "error"], rows))
        rows = []
        for e, c in contours.items():
            if isinstance(c, Exception):
                continue
            for i, poly in enumerate(c.polylines):
                rows += [(e, i, j, z.real, z.imag) for j, z in enumerate(poly)]
        res.files.append(io.write_csv(config.out / "psa_contours.csv", ["eps", "piece", "j", "re", "im"], rows))
    if _want(config, "svg"):
        res.files.append(plotting.pseudospectra_plot(config.out / "psa.svg", grid, eps))
    return res


def run_bounds(mp, config):
    """Long-format table of every bound report (one row per entry)."""
    sol = solve_lyapunov(mp.problem)
    reports = all_bounds(mp, sol, config)
    rows = []
    for name, rep in reports.items():
        if not rep.entries:
            rows.append((name, None, None, None, False, False, rep.reason))
        for e in rep.entries:
            rows.append((name, e.index, e.bound, e.actual, rep.valid and e.valid, e.vacuous, rep.reason))
    absc = bounds.abscissa_bounds(sol, mp.A, mp.B)
    res = ExperimentResult(data={"solution": sol, "reports": reports, "abscissa": absc})
    if _want(config, "csv"):
        res.files.append(
            io.write_csv(
                config.out / "bounds.csv",
                ["bound", "index", "value", "actual", "valid", "vacuous", "reason"],
                rows,
            )
        )
        res.files.append(
            io.write_csv(
                config.out / "abscissa_bounds.csv",
                ["k", "lower", "omega_over_normA", "upper"],
                [(a.k, a.lower, a.value, a.upper) for a in absc],
            )
        )
    bounds.check_soundness(reports.values())
    if not all(a.holds() for a in absc):
        raise SoundnessViolation("two-sided abscissa bound violated")
    return res
