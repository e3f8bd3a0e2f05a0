"""On-disk formats: matrix JSON files, boundary and sweep CSV tables, and
analysis reports.

All floating-point text is written with repr-faithful 17-significant-digit
formatting so that write -> read round-trips bit-exactly; negative zero is
normalized to "0". Complex values are serialized as [re, im] pairs.
"""
from __future__ import annotations

import csv
import json
import math
from typing import Any, Iterable, Sequence

import numpy as np

BOUNDARY_HEADER = ["psi", "h", "re(z)", "im(z)"]
SWEEP_HEADER = ["N", "norm", "ess_estimate", "major_computed", "major_predicted"]


class MatrixFormatError(ValueError):
    """Matrix file is malformed: wrong keys, ragged rows, or bad entries."""


def format_float(x: float) -> str:
    """Shortest round-trip decimal text for a float; -0.0 becomes "0"."""
    x = float(x)
    if x == 0:
        return "0"
    return format(x, ".17g")


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "null"
        return format_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return f"[{format_float(z.real)}, {format_float(z.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f"{inner}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        scalar = all(
            isinstance(v, (int, float, complex, bool, np.integer, np.floating, np.complexfloating))
            for v in seq
        )
        if scalar:
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in seq) + "]"
        parts = [f"{inner}{_emit(v, indent, level + 1)}" for v in seq]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_json(obj: Any, indent: int = 2) -> str:
    """JSON text with deterministic float formatting (see format_float)."""
    return _emit(obj, indent, 0) + "\n"


def write_matrix(path, A) -> None:
    """Write a square complex matrix as {"n": ..., "entries": [[[re, im], ...]]}."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise MatrixFormatError(f"expected a square matrix, got shape {A.shape}")
    doc = {
        "n": A.shape[0],
        "entries": [[complex(A[i, j]) for j in range(A.shape[1])] for i in range(A.shape[0])],
    }
    with open(path, "w") as f:
        f.write(emit_json(doc))


def load_matrix(path) -> np.ndarray:
    """Read a matrix file back into a complex ndarray.

    Raises MatrixFormatError for anything that is not an n x n grid of
    two-element [re, im] number pairs consistent with the declared "n".
    """
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise MatrixFormatError('matrix file needs top-level "n" and "entries"')
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise MatrixFormatError(f'"n" must be a positive integer, got {n!r}')
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != n:
        raise MatrixFormatError(f'"entries" must be a list of {n} rows')
    A = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row {i} is not a list of {n} entries")
        for j, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(v, (int, float)) for v in cell)
            ):
                raise MatrixFormatError(f"entry ({i},{j}) is not a [re, im] pair")
            A[i, j] = complex(cell[0], cell[1])
    return A


def write_boundary_csv(path, angles, support_values, boundary_points) -> None:
    """Boundary table: one row per grid angle, columns psi,h,re(z),im(z)."""
    angles = np.asarray(angles, dtype=float)
    h = np.asarray(support_values, dtype=float)
    z = np.asarray(boundary_points, dtype=complex)
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(BOUNDARY_HEADER)
        for i in range(angles.shape[0]):
            w.writerow(
                [
                    format_float(angles[i]),
                    format_float(h[i]),
                    format_float(z[i].real),
                    format_float(z[i].imag),
                ]
            )


def read_boundary_csv(path):
    """Inverse of write_boundary_csv: (angles, support_values, points)."""
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0] != BOUNDARY_HEADER:
        raise MatrixFormatError(f"unexpected boundary header: {rows[:1]!r}")
    body = rows[1:]
    angles = np.array([float(r[0]) for r in body])
    h = np.array([float(r[1]) for r in body])
    z = np.array([complex(float(r[2]), float(r[3])) for r in body])
    return angles, h, z


def write_sweep_csv(path, rows: Iterable[Sequence]) -> None:
    """Sweep table: N,norm,ess_estimate,major_computed,major_predicted.

    None cells are written as empty fields (a family may not define every
    column).
    """
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(SWEEP_HEADER)
        for row in rows:
            if len(row) != len(SWEEP_HEADER):
                raise ValueError(f"sweep rows need {len(SWEEP_HEADER)} cells, got {len(row)}")
            out = [str(int(row[0]))]
            for v in row[1:]:
                out.append("" if v is None else format_float(float(v)))
            w.writerow(out)


def read_sweep_csv(path):
    """Inverse of write_sweep_csv; empty cells come back as nan."""
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0] != SWEEP_HEADER:
        raise MatrixFormatError(f"unexpected sweep header: {rows[:1]!r}")
    body = rows[1:]
    sizes = np.array([int(r[0]) for r in body])
    cols = np.array(
        [[float(c) if c else math.nan for c in r[1:]] for r in body], dtype=float
    )
    return sizes, cols


def write_report(path, report: dict) -> None:
    """Analysis report as pretty-printed JSON with deterministic floats."""
    with open(path, "w") as f:
        f.write(emit_json(report))
