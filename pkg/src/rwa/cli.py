"""``rwa`` command line: harmonic, duffing and phase-diagram runs to CSV/JSON."""

from __future__ import annotations

import csv
import json
import math
import platform
import sys
from dataclasses import replace
from pathlib import Path

import click
import numpy as np

from . import __version__, kernels
from .analysis import boundary_compare, branch_discrepancies, fold_frequency, phase_diagram
from .config import RunConfig, parse_set
from .duffing import frequency_sweep
from .errors import ConfigError, NumericalBlowup, ResonanceSingularity
from .harmonic import (
    exact_response,
    micromotion_components,
    phase_trajectory,
    response_ratio,
    rwa_bare_response,
    rwa_drive_response,
    stationary_trajectory,
)
from .model import Frame, FrameKind, signed_to_amplitude
from .oracle import downsweep_jump, map_parallel, sweep_grid

EXIT_CONFIG = 2
EXIT_SINGULAR = 3
EXIT_BLOWUP = 4


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=2, allow_nan=True) + "\n")


class Run:
    """Collects outputs and warnings, then writes the run summary."""

    def __init__(self, rc: RunConfig):
        self.rc = rc
        self.out = Path(rc.raw["out"])
        self.out.mkdir(parents=True, exist_ok=True)
        self.outputs: list[str] = []
        self.warnings: list[str] = []
        self.results: dict = {}

    def csv(self, name, header, rows):
        write_csv(self.out / name, header, rows)
        self.outputs.append(name)

    def json(self, name, doc):
        write_json(self.out / name, doc)
        self.outputs.append(name)

    def finish(self):
        summary = {
            "command": self.rc.command,
            "config": self.rc.raw,
            "defaults_applied": self.rc.defaults_applied,
            "warnings": self.warnings,
            "warning_count": len(self.warnings),
            "results": self.results,
            "outputs": self.outputs,
            "versions": {
                "rwa": __version__,
                "python": platform.python_version(),
                "numpy": np.__version__,
                "kernel_backend": kernels.BACKEND,
            },
        }
        write_json(self.out / "run_summary.json", summary)


def run_harmonic(rc: RunConfig) -> Run:
    run = Run(rc)
    cfg = rc.physical
    eps = rc.raw["eps_res"]
    rows = []
    for w in rc.omega_grid:
        try:
            rows.append([w, exact_response(cfg, w, eps).X, rwa_bare_response(cfg, w, eps).X,
                         rwa_drive_response(cfg, w, eps).X, response_ratio(cfg, w), False])
        except ResonanceSingularity:
            run.warnings.append(f"resonance singularity at omega={fmt(w)}; row flagged")
            rows.append([w, None, None, None, response_ratio(cfg, w), True])
    run.csv("harmonic_response.csv",
            ["omega", "X_exact", "X_rwa_bare", "X_rwa_drive", "ratio", "singular"], rows)

    w = float(rc.raw["trajectory"]["omega"])
    n = int(rc.raw["trajectory"]["n_samples"])
    X = exact_response(cfg, w, eps).X  # explicit request: singularity is fatal
    ellipse = phase_trajectory(X, cfg, w, n)
    beta_bare = signed_to_amplitude(rwa_bare_response(cfg, w, eps).X, cfg, Frame.bare(cfg))
    circle = stationary_trajectory(beta_bare, cfg, Frame.bare(cfg), w, n)
    a0, a2 = micromotion_components(cfg, w, eps)
    phase = 2.0 * np.pi * np.arange(n) / n
    # micromotion term A2 exp(2i omega t) in the bare rotating frame
    micro = a2 * np.exp(2j * phase)
    run.csv("phase_trajectory.csv",
            ["phase", "x_exact", "p_exact", "x_rwa_bare", "p_rwa_bare",
             "micromotion_re", "micromotion_im"],
            [[phase[k], ellipse[k, 0], ellipse[k, 1], circle[k, 0], circle[k, 1],
              micro[k].real, micro[k].imag] for k in range(n)])
    run.results["trajectory"] = {"omega": w, "X_exact": X, "A0": [a0.real, a0.imag],
                                 "A2": [a2.real, a2.imag]}
    return run


def run_duffing(rc: RunConfig) -> Run:
    run = Run(rc)
    cfg = rc.physical
    qo = rc.raw["quantum_ordering"]
    grid = rc.omega_grid
    folds = {}
    for frame in rc.frames:
        sweep = frequency_sweep(cfg, frame, grid, qo)
        rows = []
        for pt in sweep.points:
            if pt.error:
                run.warnings.append(f"{frame} frame at omega={fmt(pt.omega)}: {pt.error}")
            for b in pt.branches:
                rows.append([pt.omega, b.X, abs(b.X), b.stable, b.multiplicity])
        run.csv(f"duffing_branches_{frame}.csv", ["omega", "X", "abs_X", "stable", "multiplicity"], rows)
        folds[frame] = sweep.folds

    if rc.oracle["enabled"]:
        icfg = rc.integrator
        o = rc.oracle
        lo, hi = float(grid.min()), float(grid.max())
        n = int(o["sweep_points"])

        def down(_):
            return downsweep_jump(cfg, icfg, hi, lo, n, float(o["jump_threshold"]),
                                  int(o["refine_levels"]))

        def up(_):
            return sweep_grid(cfg, icfg, np.linspace(lo, hi, n))

        (jump, down_recs), up_recs = map_parallel(lambda f: f(None), [down, up])
        folds["oracle_jump_down"] = jump
        rows = [["down", r.omega, r.x_omega.real, r.x_omega.imag, r.magnitude] for r in down_recs]
        rows += [["up", r.omega, r.x_omega.real, r.x_omega.imag, r.magnitude] for r in up_recs]
        run.csv("oracle_sweep.csv", ["direction", "omega", "x_omega_re", "x_omega_im", "magnitude"], rows)

        rows = []
        for direction, recs, branch in (("down", down_recs, "low"), ("up", up_recs, "high")):
            d = branch_discrepancies(recs, cfg, branch, qo)
            for pd, pb in zip(d[FrameKind.DRIVE], d[FrameKind.BARE]):
                for p in (pd, pb):
                    if p.flagged:
                        run.warnings.append(f"{direction} omega={fmt(p.omega)}: {p.frame.value} "
                                            "frame pairing mismatch > 50%")
                rows.append([direction, branch, pd.omega, pd.x_oracle, pd.x_rwa, pb.x_rwa,
                             pd.delta_x, pb.delta_x, pd.flagged, pb.flagged])
        run.csv("delta_x.csv", ["direction", "branch", "omega", "x_oracle", "X_drive", "X_bare",
                                "delta_x_drive", "delta_x_bare", "flagged_drive", "flagged_bare"], rows)
    run.json("duffing_folds.json", folds)
    run.results["folds"] = folds
    return run


def run_phase_diagram(rc: RunConfig) -> Run:
    run = Run(rc)
    cfg = rc.physical
    qo = rc.raw["quantum_ordering"]
    omegas, F0s = rc.omega_grid, rc.F0_grid
    diagrams = {f: phase_diagram(cfg, f, omegas, F0s, qo) for f in rc.frames}
    rows = []
    for i, F0 in enumerate(F0s):
        for j, w in enumerate(omegas):
            rows.append([w, F0] + [diagrams[f].counts[i, j] for f in rc.frames])
    run.csv("phase_grid.csv", ["omega", "F0"] + [f"stable_count_{f}" for f in rc.frames], rows)

    omega_range = (float(omegas.min()) / cfg.omega0, float(omegas.max()) / cfg.omega0)
    jumps = {}
    if rc.oracle["enabled"]:
        icfg = rc.integrator
        o = rc.oracle
        targets = o["F0_values"] if o["F0_values"] is not None else [f for f in F0s if f > 0]
        targets = [float(f) for f in targets]
        lo, hi = omega_range[0] * cfg.omega0, omega_range[1] * cfg.omega0

        def job(F0):
            jump, _ = downsweep_jump(replace(cfg, F0=F0), icfg, hi, lo, int(o["sweep_points"]),
                                     float(o["jump_threshold"]), int(o["refine_levels"]))
            return jump

        for F0, jump in zip(targets, map_parallel(job, targets)):
            if jump is None:
                run.warnings.append(f"no oracle jump found for F0={fmt(F0)}")
            else:
                jumps[F0] = jump

    rows = []
    for F0 in F0s:
        row_cfg = replace(cfg, F0=float(F0))
        wd = fold_frequency(row_cfg, FrameKind.DRIVE, omega_range, len(omegas), qo)
        wb = fold_frequency(row_cfg, FrameKind.BARE, omega_range, len(omegas), qo)
        jump = jumps.get(float(F0))
        dd = db = None
        if jump is not None:
            cmp = boundary_compare(cfg, [float(F0)], {float(F0): jump}, omega_range, qo)[0]
            dd, db = cmp.delta_drive, cmp.delta_bare
        rows.append([F0, wd, wb, jump, dd, db])
    run.csv("phase_boundary.csv", ["F0", "omega_star_drive", "omega_star_bare", "omega_jump_oracle",
                                   "delta_omega_drive", "delta_omega_bare"], rows)
    run.results["oracle_jumps"] = {fmt(k): v for k, v in jumps.items()}
    return run


COMMANDS = {"harmonic": run_harmonic, "duffing": run_duffing, "phase-diagram": run_phase_diagram}


def execute(command: str, config_path=None, frame=None, with_oracle=False, out=None, sets=()) -> int:
    """Run one command; returns the process exit code."""
    try:
        flags = {}
        if frame is not None:
            flags["frame"] = frame
        if with_oracle:
            flags["oracle"] = {"enabled": True}
        if out is not None:
            flags["out"] = str(out)
        rc = RunConfig.load(command, config_path, parse_set(sets), flags)
        run = COMMANDS[command](rc)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return EXIT_CONFIG
    except ResonanceSingularity as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_SINGULAR
    except NumericalBlowup as exc:
        click.echo(f"numerical blowup at omega={exc.omega!r}: {exc}", err=True)
        return EXIT_BLOWUP
    run.finish()
    if run.warnings:
        click.echo(f"{len(run.warnings)} warning(s); see {run.out / 'run_summary.json'}", err=True)
    click.echo(f"wrote {', '.join(run.outputs)} to {run.out}")
    return 0


def _common(fn):
    fn = click.option("--set", "sets", multiple=True, metavar="KEY=VALUE",
                      help="Override a config entry, e.g. physical.F0=0.1 (value parsed as JSON).")(fn)
    fn = click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory.")(fn)
    fn = click.option("--with-oracle", is_flag=True, help="Also run time-domain oracle sweeps.")(fn)
    fn = click.option("--frame", type=click.Choice(["bare", "drive", "both"]), default=None)(fn)
    fn = click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                      help="JSON run configuration.")(fn)
    return fn


@click.group()
@click.version_option(__version__, prog_name="rwa")
def main():
    """Driven oscillator steady states: exact, bare-frame RWA, drive-frame RWA."""


@main.command()
@_common
def harmonic(config_path, frame, with_oracle, out, sets):
    """Harmonic response curves and phase-space trajectories."""
    sys.exit(execute("harmonic", config_path, frame, with_oracle, out, sets))


@main.command()
@_common
def duffing(config_path, frame, with_oracle, out, sets):
    """Duffing steady-state branches, folds and optional oracle sweeps."""
    sys.exit(execute("duffing", config_path, frame, with_oracle, out, sets))


@main.command("phase-diagram")
@_common
def phase_diagram_cmd(config_path, frame, with_oracle, out, sets):
    """Stable-solution counts over (omega, F0) and fold boundaries."""
    sys.exit(execute("phase-diagram", config_path, frame, with_oracle, out, sets))


if __name__ == "__main__":
    main()
