"""Plain-text matrix files and CSV tables.

Matrix files start with a header line ``n <rows> <cols> real|complex``
followed by whitespace-separated entries in row-major order; complex files
interleave real and imaginary parts. Lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

FLOAT_FMT = "{:.17g}"


class MatrixFormatError(ValueError):
    pass


def format_float(x):
    return FLOAT_FMT.format(float(x))


def read_matrix(path):
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixFormatError(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "n" or head[3] not in ("real", "complex"):
        raise MatrixFormatError(f"{path}: bad header {lines[0]!r}; want 'n rows cols real|complex'")
    try:
        rows, cols = int(head[1]), int(head[2])
        vals = np.array(" ".join(lines[1:]).split(), dtype=float)
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc
    per = 2 if head[3] == "complex" else 1
    if vals.size != rows * cols * per:
        raise MatrixFormatError(f"{path}: expected {rows * cols * per} numbers, found {vals.size}")
    if per == 2:
        M = vals[0::2] + 1j * vals[1::2]
    else:
        M = vals.astype(complex)
    M = M.reshape(rows, cols)
    if not np.all(np.isfinite(M)):
        raise MatrixFormatError(f"{path}: non-finite entries")
    return M


def write_matrix(path, M, kind=None):
    M = np.atleast_2d(np.asarray(M))
    if kind is None:
        kind = "real" if np.isrealobj(M) or np.all(np.imag(M) == 0) else "complex"
    lines = [f"n {M.shape[0]} {M.shape[1]} {kind}"]
    for row in M:
        if kind == "complex":
            parts = [f"{format_float(z.real)} {format_float(z.imag)}" for z in row.astype(complex)]
        else:
            parts = [format_float(np.real(z)) for z in row]
        lines.append(" ".join(parts))
    Path(path).write_text("\n".join(lines) + "\n")


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return str(v)


def write_csv(path, header, rows):
    """Write ``rows`` under ``header`` with 17 significant digits for floats."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
    return path


def read_csv(path):
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))
