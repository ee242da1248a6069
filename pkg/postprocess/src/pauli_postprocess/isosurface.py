"""Isosurface rendering of snapshot files: spin-up in red, spin-down in blue."""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from mpl_toolkits.mplot3d.art3d import Poly3DCollection
from skimage.measure import marching_cubes

from .vtk import read_structured_points

__all__ = ["IsosurfaceRender", "render_isosurface", "main"]

FIELD_COLORS = {"abs_u1": ("red", 0.55), "abs_u2": ("blue", 0.45)}


@dataclass(frozen=True)
class IsosurfaceRender:
    out_path: str
    rendered_fields: tuple[str, ...]


def render_isosurface(snapshot_path, level: float, out_path) -> IsosurfaceRender:
    """Extract the level set of each scalar field by marching cubes and render
    them into one 3D figure.  Fields whose maximum lies below the level are
    skipped with a warning."""
    snap = read_structured_points(snapshot_path)
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    rendered = []
    for name, values in snap.scalars.items():
        color, alpha = FIELD_COLORS.get(name, ("gray", 0.5))
        if values.max() <= level:
            warnings.warn(
                f"field {name} never reaches level {level:g}; nothing to render"
            )
            continue
        verts, faces, _, _ = marching_cubes(values, level=level, spacing=snap.spacing)
        verts = verts + np.asarray(snap.origin)
        mesh = Poly3DCollection(verts[faces], alpha=alpha)
        mesh.set_facecolor(color)
        ax.add_collection3d(mesh)
        rendered.append(name)
    extent = [snap.origin[i] + snap.spacing[i] * snap.dimensions[i] for i in range(3)]
    ax.set_xlim(snap.origin[0], extent[0])
    ax.set_ylim(snap.origin[1], extent[1])
    ax.set_zlim(snap.origin[2], extent[2])
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_zlabel("x3")
    ax.set_title(f"level {level:g} isosurfaces")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return IsosurfaceRender(out_path=str(out_path), rendered_fields=tuple(rendered))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Render isosurfaces from a solver snapshot"
    )
    parser.add_argument("snapshot", help="legacy VTK structured-points file")
    parser.add_argument("--level", type=float, default=0.055)
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        result = render_isosurface(args.snapshot, args.level, args.out)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path} (fields: {', '.join(result.rendered_fields) or 'none'})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
