"""Time-series plots of the per-step diagnostics CSV."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .tables import read_series

__all__ = ["SeriesPlot", "plot_series", "main"]

REQUIRED = ("t", "mass", "l2_u1", "l2_u2", "alpha", "energy")


@dataclass(frozen=True)
class SeriesPlot:
    out_path: str
    n_rows: int


def plot_series(series_path, out_path) -> SeriesPlot:
    data = read_series(series_path)
    for name in REQUIRED:
        if name not in data:
            raise ValueError(f"{series_path}: missing column {name!r}")
    t = data["t"]
    fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex=True)
    axes[0, 0].plot(t, data["mass"])
    axes[0, 0].set_ylabel("mass")
    axes[0, 1].plot(t, data["l2_u1"], label="spin up")
    axes[0, 1].plot(t, data["l2_u2"], label="spin down")
    axes[0, 1].set_ylabel("component norms")
    axes[0, 1].legend()
    axes[1, 0].plot(t, data["alpha"])
    axes[1, 0].set_ylabel("alpha")
    axes[1, 0].set_xlabel("t")
    axes[1, 1].plot(t, data["energy"])
    axes[1, 1].set_ylabel("energy")
    axes[1, 1].set_xlabel("t")
    for ax in axes.flat:
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return SeriesPlot(out_path=str(out_path), n_rows=t.size)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Plot the diagnostics time series")
    parser.add_argument("series", help="series.csv produced by the solver")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        result = plot_series(args.series, args.out)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path} ({result.n_rows} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
