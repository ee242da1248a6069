"""VTK parsing and isosurface rendering on synthetic snapshots."""

import numpy as np
import pytest

from pauli_postprocess.isosurface import main as iso_main, render_isosurface
from pauli_postprocess.vtk import read_structured_points


def write_snapshot(path, field_1, field_2, spacing=(0.5, 0.5, 0.5)):
    n1, n2, n3 = field_1.shape
    lines = [
        "# vtk DataFile Version 3.0",
        "synthetic snapshot",
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        f"DIMENSIONS {n1} {n2} {n3}",
        "ORIGIN 0 0 0",
        f"SPACING {spacing[0]} {spacing[1]} {spacing[2]}",
        f"POINT_DATA {n1 * n2 * n3}",
    ]
    for name, values in (("abs_u1", field_1), ("abs_u2", field_2)):
        lines.append(f"SCALARS {name} float")
        lines.append("LOOKUP_TABLE default")
        flat = values.ravel(order="F")
        lines.extend(
            " ".join(f"{v:.9e}" for v in flat[i : i + 6]) for i in range(0, flat.size, 6)
        )
    path.write_text("\n".join(lines) + "\n")


def gaussian_blob(n, center, width=2.0):
    axes = [np.arange(n)] * 3
    x, y, z = np.meshgrid(*axes, indexing="ij")
    r2 = (x - center[0]) ** 2 + (y - center[1]) ** 2 + (z - center[2]) ** 2
    return np.exp(-r2 / width**2)


class TestVtkReader:
    def test_roundtrip(self, tmp_path):
        f1 = gaussian_blob(10, (3, 3, 5))
        f2 = gaussian_blob(10, (6, 6, 5))
        path = tmp_path / "snap.vtk"
        write_snapshot(path, f1, f2)
        snap = read_structured_points(path)
        assert snap.dimensions == (10, 10, 10)
        assert snap.spacing == (0.5, 0.5, 0.5)
        np.testing.assert_allclose(snap.scalars["abs_u1"], f1, atol=1e-8)
        np.testing.assert_allclose(snap.scalars["abs_u2"], f2, atol=1e-8)

    def test_x_fastest_order(self, tmp_path):
        values = np.zeros((3, 2, 2))
        values[1, 0, 0] = 7.0
        path = tmp_path / "snap.vtk"
        write_snapshot(path, values, np.zeros_like(values))
        # the second number in the data block is the x-neighbor of the first
        data_line = path.read_text().split("LOOKUP_TABLE default\n")[1]
        assert float(data_line.split()[1]) == pytest.approx(7.0)
        snap = read_structured_points(path)
        assert snap.scalars["abs_u1"][1, 0, 0] == pytest.approx(7.0)

    def test_rejects_non_vtk(self, tmp_path):
        path = tmp_path / "nope.vtk"
        path.write_text("hello\nworld\n")
        with pytest.raises(ValueError, match="STRUCTURED_POINTS"):
            read_structured_points(path)


class TestIsosurface:
    def test_two_blobs_two_colors(self, tmp_path):
        path = tmp_path / "snap.vtk"
        write_snapshot(path, gaussian_blob(12, (4, 4, 6)), gaussian_blob(12, (8, 8, 6)))
        out = tmp_path / "iso.png"
        result = render_isosurface(path, level=0.055, out_path=out)
        assert result.rendered_fields == ("abs_u1", "abs_u2")
        assert out.exists() and out.stat().st_size > 0

    def test_level_above_max_warns_and_renders_empty(self, tmp_path):
        path = tmp_path / "snap.vtk"
        write_snapshot(
            path, 0.01 * gaussian_blob(8, (4, 4, 4)), 0.01 * gaussian_blob(8, (4, 4, 4))
        )
        out = tmp_path / "iso.png"
        with pytest.warns(UserWarning, match="never reaches"):
            result = render_isosurface(path, level=0.5, out_path=out)
        assert result.rendered_fields == ()
        assert out.exists()

    def test_unreadable_file_exits_nonzero(self, tmp_path, capsys):
        bogus = tmp_path / "missing.vtk"
        rc = iso_main([str(bogus), "--out", str(tmp_path / "iso.png")])
        assert rc == 1
        assert "error" in capsys.readouterr().err
