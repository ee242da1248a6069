"""Log-log error-vs-dt plot with fitted and reference slopes."""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .tables import ErrorTable, read_error_table

__all__ = ["ConvergencePlot", "plot_convergence", "main"]

_MARKERS = ("o", "s", "^", "d")


@dataclass(frozen=True)
class ConvergencePlot:
    out_path: str
    fitted_slope: float | None
    n_rows: int


def _fit_slope(dt: np.ndarray, err: np.ndarray) -> float:
    return float(np.polyfit(np.log(dt), np.log(err), 1)[0])


def plot_convergence(table_path, out_path, reference_slopes=(1.0,)) -> ConvergencePlot:
    """Scatter every error column against dt on log-log axes, fit a line to
    the first column, and draw reference slope guides anchored at the
    coarsest-dt point."""
    table: ErrorTable = read_error_table(table_path)
    n = table.dt.size
    fig, ax = plt.subplots(figsize=(6, 4.5))
    first_name = next(iter(table.columns))
    for (name, err), marker in zip(table.columns.items(), _MARKERS):
        ax.loglog(table.dt, err, marker, label=name)
    fitted = None
    if n >= 2:
        err = table.columns[first_name]
        fitted = _fit_slope(table.dt, err)
        dt_line = np.array([table.dt.min(), table.dt.max()])
        intercept = np.exp(np.log(err).mean() - fitted * np.log(table.dt).mean())
        ax.loglog(dt_line, intercept * dt_line**fitted, "-", color="black",
                  label=f"fitted slope = {fitted:.3f}")
        anchor_i = int(np.argmax(table.dt))
        for ref in reference_slopes:
            guide = err[anchor_i] * (dt_line / table.dt[anchor_i]) ** ref
            ax.loglog(dt_line, guide, "--", alpha=0.6, label=f"slope {ref:g} guide")
        ax.set_title(f"error vs time step (fitted slope ≈ {fitted:.3f})")
    else:
        warnings.warn("single-row table: plotting a scatter without a fit")
        ax.set_title("error vs time step (one point, no fit)")
    ax.set_xlabel("dt")
    ax.set_ylabel("error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return ConvergencePlot(out_path=str(out_path), fitted_slope=fitted, n_rows=n)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot an error-vs-dt table on log-log axes"
    )
    parser.add_argument("table", help="CSV error table (dt,<error columns>)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument(
        "--reference-slopes", type=float, nargs="*", default=[1.0],
        help="reference slope guide lines (default: 1)",
    )
    args = parser.parse_args(argv)
    try:
        result = plot_convergence(args.table, args.out, args.reference_slopes)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if result.fitted_slope is not None:
        print(f"wrote {result.out_path} (fitted slope {result.fitted_slope:.3f})")
    else:
        print(f"wrote {result.out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
