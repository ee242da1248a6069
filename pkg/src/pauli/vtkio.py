"""
Legacy VTK ASCII STRUCTURED_POINTS snapshot writer.

Each snapshot carries the two scalar fields ``abs_u1`` and ``abs_u2`` in
x-fastest point order, directly loadable by standard isosurface viewers.
"""

from __future__ import annotations

import numpy as np

from .grid import Grid

__all__ = ["write_structured_points"]


def _format_values(values: np.ndarray) -> str:
    flat = values.ravel(order="F")  # axis 0 (x) fastest
    lines = []
    for start in range(0, flat.size, 6):
        lines.append(" ".join(f"{v:.9e}" for v in flat[start : start + 6]))
    return "\n".join(lines)


def write_structured_points(
    path, grid: Grid, scalars: dict[str, np.ndarray], title: str = "pauli snapshot"
) -> None:
    """Write named scalar fields sampled on the grid to a legacy VTK file."""
    n1, n2, n3 = grid.counts
    d1, d2, d3 = grid.spacings
    parts = [
        "# vtk DataFile Version 3.0",
        title,
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        f"DIMENSIONS {n1} {n2} {n3}",
        "ORIGIN 0 0 0",
        f"SPACING {d1:.17g} {d2:.17g} {d3:.17g}",
        f"POINT_DATA {grid.total_points}",
    ]
    for name, values in scalars.items():
        values = np.asarray(values)
        if values.shape != grid.shape:
            raise ValueError(
                f"scalar {name!r} has shape {values.shape}, expected {grid.shape}"
            )
        parts.append(f"SCALARS {name} float")
        parts.append("LOOKUP_TABLE default")
        parts.append(_format_values(values))
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
