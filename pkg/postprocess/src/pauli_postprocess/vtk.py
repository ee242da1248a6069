"""Reader for the solver's legacy VTK ASCII STRUCTURED_POINTS snapshots."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["StructuredPoints", "read_structured_points"]


@dataclass(frozen=True)
class StructuredPoints:
    dimensions: tuple[int, int, int]
    origin: tuple[float, float, float]
    spacing: tuple[float, float, float]
    scalars: dict[str, np.ndarray]  # arrays of shape ``dimensions``, x = axis 0


def read_structured_points(path) -> StructuredPoints:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if len(lines) < 5 or "STRUCTURED_POINTS" not in "\n".join(lines[:5]):
        raise ValueError(f"{path}: not a legacy VTK STRUCTURED_POINTS file")
    dims = origin = spacing = None
    scalars: dict[str, np.ndarray] = {}
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if line.startswith("DIMENSIONS"):
            dims = tuple(int(v) for v in line.split()[1:4])
        elif line.startswith("ORIGIN"):
            origin = tuple(float(v) for v in line.split()[1:4])
        elif line.startswith("SPACING"):
            spacing = tuple(float(v) for v in line.split()[1:4])
        elif line.startswith("SCALARS"):
            if dims is None:
                raise ValueError(f"{path}: SCALARS before DIMENSIONS")
            name = line.split()[1]
            i += 1
            if not lines[i].strip().startswith("LOOKUP_TABLE"):
                raise ValueError(f"{path}: missing LOOKUP_TABLE after SCALARS {name}")
            count = dims[0] * dims[1] * dims[2]
            values: list[float] = []
            while len(values) < count:
                i += 1
                if i >= len(lines):
                    raise ValueError(f"{path}: truncated data for SCALARS {name}")
                values.extend(float(v) for v in lines[i].split())
            # x varies fastest on disk
            scalars[name] = np.asarray(values).reshape(dims, order="F")
        i += 1
    if dims is None or spacing is None:
        raise ValueError(f"{path}: missing DIMENSIONS or SPACING")
    if not scalars:
        raise ValueError(f"{path}: no scalar fields found")
    return StructuredPoints(
        dimensions=dims,
        origin=origin if origin is not None else (0.0, 0.0, 0.0),
        spacing=spacing,
        scalars=scalars,
    )
