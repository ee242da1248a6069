"""Readers for the solver's CSV outputs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ErrorTable", "read_error_table", "read_series"]


@dataclass(frozen=True)
class ErrorTable:
    """An error-vs-dt table: a dt column, named error columns, and the
    optional fitted slope recorded by the producer in a '# slope=' footer."""

    dt: np.ndarray
    columns: dict[str, np.ndarray]
    slope_footer: float | None


def read_error_table(path) -> ErrorTable:
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    slope = None
    rows = []
    header = lines[0].split(",")
    if header[0] != "dt" or len(header) < 2:
        raise ValueError(f"{path}: expected a 'dt,...' header, got {lines[0]!r}")
    for line in lines[1:]:
        if line.startswith("#"):
            if "slope=" in line:
                slope = float(line.split("slope=")[1])
            continue
        values = [float(v) for v in line.split(",")]
        if len(values) != len(header):
            raise ValueError(f"{path}: row {line!r} does not match the header")
        rows.append(values)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.asarray(rows)
    dt = data[:, 0]
    diffs = np.diff(dt)
    if not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValueError(f"{path}: dt column must be strictly monotone")
    columns = {name: data[:, i] for i, name in enumerate(header) if i > 0}
    for name, col in columns.items():
        if np.any(col <= 0):
            raise ValueError(f"{path}: column {name} must be positive")
    return ErrorTable(dt=dt, columns=columns, slope_footer=slope)


def read_series(path) -> dict[str, np.ndarray]:
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.asarray(rows)
    if data.shape[1] != len(header):
        raise ValueError(f"{path}: rows do not match the header")
    return {name: data[:, i] for i, name in enumerate(header)}
