"""Static SVG figures. Plots consume already-computed arrays only."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

plt.rcParams["svg.hashsalt"] = "lyapdecay"

_TINY = 1e-300


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def _closed(z):
    z = np.asarray(z)
    return np.append(z, z[:1])


def decay_and_boundaries(path, curves, boundaries, label_fmt, title=""):
    """Two panels: numerical range boundaries (left), ``s_k/s_1`` on a log axis (right).

    ``curves`` and ``boundaries`` map a parameter value to an array of ratios
    and to boundary points respectively.
    """
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 4.2))
    for key, z in boundaries.items():
        zc = _closed(z)
        ax0.plot(zc.real, zc.imag, label=label_fmt(key))
    ax0.axvline(0.0, color="0.6", lw=0.8)
    ax0.set_aspect("equal", adjustable="datalim")
    ax0.set_xlabel("Re z")
    ax0.set_ylabel("Im z")
    ax0.legend(fontsize=8)
    for key, ratios in curves.items():
        k = np.arange(1, len(ratios) + 1)
        ax1.semilogy(k, np.maximum(ratios, _TINY), ".-", ms=3, label=label_fmt(key))
    ax1.set_xlabel("k")
    ax1.set_ylabel("s_k / s_1")
    ax1.set_ylim(bottom=1e-18, top=2)
    ax1.legend(fontsize=8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return _save(fig, path)


def sweep_plot(path, alpha, exact, solver, bound):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(alpha, exact, "-", label="closed form")
    ax.semilogy(alpha, solver, ".", ms=3, label="solver")
    ax.semilogy(alpha, bound, "--", label="1 - omega_1/||A||")
    ax.set_xlabel("alpha")
    ax.set_ylabel("s_2 / s_1")
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def strip_plot(path, lower, upper, normA):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.axvspan(lower, upper, color="0.85")
    ax.axvline(0.0, color="k", lw=0.8)
    ax.axvline(lower, color="0.4", lw=0.8)
    ax.axvline(upper, color="0.4", lw=0.8)
    ax.set_xlim(-1.5 * normA, 1.5 * normA)
    ax.set_ylim(-normA, normA)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(f"omega(A) in [{lower:.4g}, {upper:.4g}]")
    fig.tight_layout()
    return _save(fig, path)


def bounds_plot(path, index, actual, columns):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(index, np.maximum(actual, _TINY), "k.-", label="actual")
    for name, vals in columns.items():
        vals = np.asarray(vals, dtype=float)
        vals = np.where(vals < 1e200, vals, np.nan)
        if np.any(np.isfinite(vals)):
            ax.semilogy(index, vals, ".--", ms=3, label=name)
    ax.set_xlabel("k")
    ax.set_ylabel("bound on s_k / s_1")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def pseudospectra_plot(path, grid, eps_list):
    fig, ax = plt.subplots(figsize=(6, 5))
    levels = sorted(eps_list)
    ax.contour(grid.re, grid.im, grid.values, levels=levels)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    fig.tight_layout()
    return _save(fig, path)
