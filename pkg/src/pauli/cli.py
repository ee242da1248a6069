"""
Command-line driver.

Subcommands:
    pauli run      --config cfg.json                    time evolution + outputs
    pauli converge --config cfg.json --dt ... --dt-ref  self-convergence table
    pauli oracle   --config cfg.json --dt ...           error table vs dense oracle
    pauli validate --config cfg.json                    invariant suite

Exit codes: 0 success, 2 config error, 3 validation failure, 4 divergence.
The env var PAULI_THREADS caps BLAS/FFT thread pools.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .fields import FieldSamples, field_preset, sample_fields, validate_fields
from .grid import Grid, build_grid
from .observables import SeriesRecord, state_error
from .oracle import MAX_DENSE_DIMENSION, convergence_study
from .splitting import (
    DivergenceError,
    SolverConfig,
    coupling_step,
    evolve,
    kinetic_step,
    lie_step,
    potential_step,
    precompute_propagators,
)
from .state import SpinorField, component_l2, initial_preset
from .vtkio import write_structured_points

__all__ = ["RunConfig", "load_config", "main"]

SERIES_HEADER = "t,mass,l2_u1,l2_u2,alpha,energy"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_DIVERGENCE = 4


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    grid_lengths: tuple[float, float, float]
    grid_counts: tuple[int, int, int]
    field_preset: str
    initial_preset: str
    epsilon: float
    dt: float
    t_final: float
    order: str = "lie"
    characteristic_substeps: int = 4
    snapshot_stride: int = 1
    output_dir: str = "out"
    gauge_tol: float = 1e-6

    def solver_config(self, dt: float | None = None, t_final: float | None = None) -> SolverConfig:
        return SolverConfig(
            epsilon=self.epsilon,
            dt=self.dt if dt is None else dt,
            t_final=self.t_final if t_final is None else t_final,
            order=self.order,
            characteristic_substeps=self.characteristic_substeps,
            snapshot_stride=self.snapshot_stride,
        )


def load_config(path) -> RunConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        grid_section = raw["grid"]
        cfg = RunConfig(
            grid_lengths=tuple(float(v) for v in grid_section["lengths"]),
            grid_counts=tuple(int(v) for v in grid_section["counts"]),
            field_preset=str(raw["field_preset"]),
            initial_preset=str(raw["initial_preset"]),
            epsilon=float(raw["epsilon"]),
            dt=float(raw["dt"]),
            t_final=float(raw["t_final"]),
            order=str(raw.get("order", "lie")),
            characteristic_substeps=int(raw.get("characteristic_substeps", 4)),
            snapshot_stride=int(raw.get("snapshot_stride", 1)),
            output_dir=str(raw.get("output_dir", "out")),
            gauge_tol=float(raw.get("gauge_tol", 1e-6)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad config: {exc}") from exc
    return cfg


def _build_problem(cfg: RunConfig):
    """Grid, fields, initial state, samples; raises ConfigError on bad names."""
    try:
        grid = build_grid(cfg.grid_lengths, cfg.grid_counts)
        fields = field_preset(cfg.field_preset)
        state = initial_preset(cfg.initial_preset, grid)
        cfg.solver_config()  # trips parameter validation early
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    samples = sample_fields(fields, grid)
    return grid, fields, state, samples


def _check_gauge(samples: FieldSamples, grid: Grid, tol: float) -> bool:
    report = validate_fields(samples, grid, tol)
    print(
        f"gauge check: max|div A| = {report.div_a_max:.3e}, "
        f"max|curl A - B| = {report.curl_mismatch_max:.3e}, tol = {tol:g} "
        f"-> {'pass' if report.ok else 'FAIL'}"
    )
    return report.ok


def _format_float(v: float) -> str:
    return f"{v:.17g}"


def _snapshot_writer(outdir: Path, grid: Grid):
    def write(step: int, time: float, state: SpinorField):
        path = outdir / f"snapshot_{step:06d}.vtk"
        write_structured_points(
            path,
            grid,
            {"abs_u1": np.abs(state.u1), "abs_u2": np.abs(state.u2)},
            title=f"pauli snapshot t={time:.6g} step={step}",
        )

    return write


def cmd_run(cfg: RunConfig) -> int:
    grid, fields, state, samples = _build_problem(cfg)
    if not _check_gauge(samples, grid, cfg.gauge_tol):
        return EXIT_VALIDATION
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    series_path = outdir / "series.csv"
    with open(series_path, "w") as fh:
        fh.write(SERIES_HEADER + "\n")

        def on_record(rec: SeriesRecord):
            fh.write(
                ",".join(
                    _format_float(v)
                    for v in (rec.time, rec.mass, rec.l2_u1, rec.l2_u2, rec.alpha, rec.energy)
                )
                + "\n"
            )
            fh.flush()

        try:
            evolve(
                state,
                fields,
                grid,
                cfg.solver_config(),
                samples=samples,
                on_record=on_record,
                on_snapshot=_snapshot_writer(outdir, grid),
            )
        except DivergenceError as exc:
            print(f"error: {exc}; partial outputs kept in {outdir}", file=sys.stderr)
            return EXIT_DIVERGENCE
    print(f"wrote {series_path}")
    return EXIT_OK


def _write_error_table(path: Path, header: str, rows, slope) -> None:
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_format_float(v) for v in row) + "\n")
        if slope is not None:
            fh.write(f"# slope={slope:.6f}\n")


def cmd_converge(cfg: RunConfig, dt_list: list[float], dt_reference: float) -> int:
    if not dt_list:
        raise ConfigError("at least one --dt value is required")
    if dt_reference >= min(dt_list):
        raise ConfigError(
            f"reference dt {dt_reference} must be strictly finer than min(dt_list)"
        )
    for dt in [*dt_list, dt_reference]:
        ratio = cfg.t_final / dt
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, round(ratio)):
            raise ConfigError(f"dt {dt} does not divide t_final {cfg.t_final}")
    grid, fields, state, samples = _build_problem(cfg)
    if not _check_gauge(samples, grid, cfg.gauge_tol):
        return EXIT_VALIDATION
    try:
        reference = evolve(state, fields, grid, cfg.solver_config(dt=dt_reference), samples=samples)
        rows = []
        for dt in dt_list:
            final = evolve(state, fields, grid, cfg.solver_config(dt=dt), samples=samples)
            err = state_error(final, reference, grid)
            rows.append((dt, err.max_abs, err.rel))
            print(f"dt={dt:g}: max_abs={err.max_abs:.6e} rel={err.rel:.6e}")
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    slope = None
    if len(rows) >= 2:
        slope = float(
            np.polyfit(np.log([r[0] for r in rows]), np.log([r[1] for r in rows]), 1)[0]
        )
        print(f"fitted slope: {slope:.3f}")
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "converge.csv"
    _write_error_table(path, "dt,max_abs_error,max_rel_error", rows, slope)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, dt_list: list[float]) -> int:
    if not dt_list:
        raise ConfigError("at least one --dt value is required")
    grid, fields, state, samples = _build_problem(cfg)
    if 2 * grid.total_points > MAX_DENSE_DIMENSION:
        raise ConfigError(
            f"grid too large for the dense oracle: 2*{grid.total_points} > {MAX_DENSE_DIMENSION}"
        )
    for dt in dt_list:
        ratio = cfg.t_final / dt
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, round(ratio)):
            raise ConfigError(f"dt {dt} does not divide t_final {cfg.t_final}")
    if not _check_gauge(samples, grid, cfg.gauge_tol):
        return EXIT_VALIDATION
    result = convergence_study(
        state, fields, grid, cfg.epsilon, dt_list, cfg.t_final, order=cfg.order
    )
    for row in result.rows:
        print(f"dt={row.dt:g}: alpha_error={row.alpha_error:.6e}")
    if result.slope is not None:
        print(f"fitted slope: {result.slope:.3f}")
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "oracle.csv"
    _write_error_table(
        path, "dt,alpha_error", [(r.dt, r.alpha_error) for r in result.rows], result.slope
    )
    print(f"wrote {path}")
    return EXIT_OK


def cmd_validate(cfg: RunConfig, steps: int = 3) -> int:
    grid, fields, state, samples = _build_problem(cfg)
    checks: list[tuple[str, bool, str]] = []

    report = validate_fields(samples, grid, cfg.gauge_tol)
    checks.append(
        (
            "coulomb-gauge",
            report.coulomb_ok,
            f"max|div A| = {report.div_a_max:.3e}",
        )
    )
    checks.append(
        (
            "curl-consistency",
            report.curl_ok,
            f"max|curl A - B| = {report.curl_mismatch_max:.3e}",
        )
    )

    solver = cfg.solver_config(t_final=steps * cfg.dt)
    prop = precompute_propagators(fields, samples, grid, solver)
    phase_dev = max(
        float(np.max(np.abs(np.abs(prop.potential_phase1) - 1.0))),
        float(np.max(np.abs(np.abs(prop.potential_phase2) - 1.0))),
        float(np.max(np.abs(np.abs(prop.kinetic_phase) - 1.0))),
    )
    checks.append(("phases-unimodular", phase_dev <= 1e-13, f"max deviation {phase_dev:.3e}"))
    m = prop.coupling_matrix
    gram_dev = float(np.max(np.abs(np.einsum("...ji,...jk->...ik", m.conj(), m) - np.eye(2))))
    checks.append(("coupling-unitary", gram_dev <= 1e-12, f"max|M^H M - I| {gram_dev:.3e}"))

    from .splitting import advection_step

    current = state
    norm_dev = 0.0
    coupling_dev = 0.0
    for _ in range(steps):
        n_before = component_l2(current, grid)
        after_pot = potential_step(current, prop)
        n_pot = component_l2(after_pot, grid)
        after_kin = kinetic_step(after_pot, prop, grid)
        n_kin = component_l2(after_kin, grid)
        for before, after in ((n_before, n_pot), (n_pot, n_kin)):
            for i in range(2):
                if before[i] > 0:
                    norm_dev = max(norm_dev, abs(after[i] - before[i]) / before[i])
        after_adv = advection_step(after_kin, prop, grid)
        stepped = coupling_step(after_adv, prop)
        # the coupling unitaries preserve the pointwise density, hence the mass
        n_adv = component_l2(after_adv, grid)
        n_coup = component_l2(stepped, grid)
        mass_adv = n_adv[0] ** 2 + n_adv[1] ** 2
        coupling_dev = max(
            coupling_dev,
            abs(n_coup[0] ** 2 + n_coup[1] ** 2 - mass_adv) / mass_adv,
        )
        current = stepped
    checks.append(
        ("potential-kinetic-norms", norm_dev <= 1e-12, f"max relative drift {norm_dev:.3e}")
    )
    checks.append(
        ("coupling-mass-identity", coupling_dev <= 1e-12, f"max relative drift {coupling_dev:.3e}")
    )

    transverse = max(
        float(np.max(np.abs(samples.b_grid[..., 0]))),
        float(np.max(np.abs(samples.b_grid[..., 1]))),
    )
    if transverse == 0.0:
        spin_up = initial_preset("spin-up", grid)
        probe = spin_up
        max_u2 = 0.0
        for _ in range(steps):
            probe = lie_step(probe, prop, grid)
            max_u2 = max(max_u2, float(np.max(np.abs(probe.u2))))
        checks.append(("decoupling-exact", max_u2 <= 1e-13, f"max|u2| = {max_u2:.3e}"))
    else:
        print("decoupling-exact: skipped (coupling active: B1/B2 nonzero)")

    failed = [name for name, ok, _ in checks if not ok]
    for name, ok, detail in checks:
        print(f"{name}: {'pass' if ok else 'FAIL'} ({detail})")
    return EXIT_OK if not failed else EXIT_VALIDATION


def _limit_threads() -> None:
    raw = os.environ.get("PAULI_THREADS")
    if not raw:
        return
    try:
        n = max(1, int(raw))
    except ValueError:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(n))
    try:
        from threadpoolctl import threadpool_limits

        threadpool_limits(limits=n)
    except ImportError:
        pass


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pauli",
        description="Time-splitting solver for the 3D linear Pauli equation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evolve and write series.csv + snapshots")
    run.add_argument("--config", required=True)

    conv = sub.add_parser("converge", help="self-convergence against a fine reference")
    conv.add_argument("--config", required=True)
    conv.add_argument("--dt", type=float, nargs="+", required=True)
    conv.add_argument("--dt-ref", type=float, required=True)

    orc = sub.add_parser("oracle", help="error table against the dense oracle")
    orc.add_argument("--config", required=True)
    orc.add_argument("--dt", type=float, nargs="+", required=True)

    val = sub.add_parser("validate", help="run the invariant suite")
    val.add_argument("--config", required=True)
    val.add_argument("--steps", type=int, default=3)
    return parser


def main(argv=None) -> int:
    _limit_threads()
    args = _parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "run":
            return cmd_run(cfg)
        if args.command == "converge":
            return cmd_converge(cfg, args.dt, args.dt_ref)
        if args.command == "oracle":
            return cmd_oracle(cfg, args.dt)
        if args.command == "validate":
            return cmd_validate(cfg, steps=args.steps)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
