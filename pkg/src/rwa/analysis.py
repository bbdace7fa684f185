"""Discrepancy metrics, phase diagrams and fold-boundary comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .duffing import fold_frequencies, stable_count, steady_cubic, steady_states
from .errors import MissingOracle, ZeroReference
from .model import FrameKind, PhysicalConfig
from .oracle import SweepRecord

PAIRING_MISMATCH = 0.5


@dataclass(frozen=True)
class DiscrepancyPoint:
    omega: float
    delta_x: float
    branch: str
    frame: FrameKind
    x_oracle: float
    x_rwa: float
    flagged: bool = False


@dataclass
class PhaseDiagram:
    omega_grid: np.ndarray
    F0_grid: np.ndarray
    counts: np.ndarray  # shape (len(F0_grid), len(omega_grid))
    boundary: np.ndarray  # first fold per F0 row, nan if none
    frame: FrameKind


@dataclass(frozen=True)
class BoundaryComparison:
    F0: float
    omega_jump: float
    omega_star_drive: float
    omega_star_bare: float
    delta_drive: float
    delta_bare: float


def discrepancy_x(x_omega_oracle: complex, x_rwa: float) -> float:
    """Relative amplitude discrepancy, compared on magnitudes."""
    ref = abs(x_omega_oracle)
    if ref == 0.0:
        raise ZeroReference("oracle amplitude is zero")
    return abs(ref - abs(x_rwa)) / ref


def discrepancy_omega(omega_ref: float, omega_rwa: float) -> float:
    if not omega_ref > 0:
        raise ValueError("reference frequency must be positive")
    return abs(omega_ref - omega_rwa) / omega_ref


def pair_branch(record: SweepRecord, cfg: PhysicalConfig, frame: FrameKind | str,
                branch: str, quantum_ordering: bool = False) -> DiscrepancyPoint:
    """Compare an oracle record with the matching stable root of one frame.

    ``branch='low'`` picks the smallest-``|X|`` stable root, ``'high'`` the
    largest.  Pairs whose amplitudes differ by more than 50% are flagged.
    """
    if branch not in ("low", "high"):
        raise ValueError(f"branch must be 'low' or 'high', got {branch!r}")
    stable = [b.X for b in steady_states(cfg, record.omega, frame, quantum_ordering) if b.stable]
    pick = min if branch == "low" else max
    X = pick(stable, key=abs)
    delta = discrepancy_x(record.x_omega, X)
    return DiscrepancyPoint(record.omega, delta, branch, FrameKind(frame), record.magnitude, X,
                            flagged=delta > PAIRING_MISMATCH)


def branch_discrepancies(records, cfg: PhysicalConfig, branch: str,
                         quantum_ordering: bool = False) -> dict[FrameKind, list[DiscrepancyPoint]]:
    return {
        kind: [pair_branch(r, cfg, kind, branch, quantum_ordering) for r in records]
        for kind in (FrameKind.DRIVE, FrameKind.BARE)
    }


def phase_diagram(cfg: PhysicalConfig, frame: FrameKind | str, omega_grid, F0_grid,
                  quantum_ordering: bool = False) -> PhaseDiagram:
    """Stable-solution counts over ``(F0, omega)`` and the fold boundary per ``F0``."""
    omegas = np.asarray(omega_grid, dtype=float)
    F0s = np.asarray(F0_grid, dtype=float)
    if np.any(omegas <= 0) or np.any(F0s < 0):
        raise ValueError("grids must be positive")
    counts = np.empty((len(F0s), len(omegas)), dtype=int)
    boundary = np.full(len(F0s), np.nan)
    for i, F0 in enumerate(F0s):
        row_cfg = replace(cfg, F0=float(F0))
        for j, w in enumerate(omegas):
            counts[i, j] = stable_count(steady_cubic(row_cfg, float(w), frame, quantum_ordering))
        folds = fold_frequencies(row_cfg, frame, omegas, quantum_ordering)
        if folds:
            boundary[i] = folds[0]
    return PhaseDiagram(omegas, F0s, counts, boundary, FrameKind(frame))


def fold_frequency(cfg: PhysicalConfig, frame: FrameKind | str, omega_range=(0.5, 3.0),
                   n_grid: int = 501, quantum_ordering: bool = False) -> float:
    """First fold in ``omega_range`` (units of omega0), or nan."""
    grid = cfg.omega0 * np.linspace(omega_range[0], omega_range[1], n_grid)
    folds = fold_frequencies(cfg, frame, grid, quantum_ordering)
    return folds[0] if folds else math.nan


def boundary_compare(cfg: PhysicalConfig, F0_list, oracle_jumps: dict,
                     omega_range=(0.5, 3.0), quantum_ordering: bool = False) -> list[BoundaryComparison]:
    """Per-``F0`` relative fold error of both frames against oracle jumps."""
    out = []
    for F0 in F0_list:
        jump = oracle_jumps.get(F0)
        if jump is None or not math.isfinite(jump):
            raise MissingOracle(f"no oracle jump frequency for F0={F0!r}")
        row_cfg = replace(cfg, F0=float(F0))
        wd = fold_frequency(row_cfg, FrameKind.DRIVE, omega_range, quantum_ordering=quantum_ordering)
        wb = fold_frequency(row_cfg, FrameKind.BARE, omega_range, quantum_ordering=quantum_ordering)
        out.append(BoundaryComparison(float(F0), float(jump), wd, wb,
                                      discrepancy_omega(jump, wd), discrepancy_omega(jump, wb)))
    return out
