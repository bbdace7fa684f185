"""Classical time-domain reference for the steady-state solvers.

Hamilton's equations with a small damping term are integrated with fixed-step
RK4 on a grid commensurate with the drive period, so every measurement window
spans an exact number of periods.  The hot loop lives in :mod:`rwa.kernels`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import NumericalBlowup
from .model import PhysicalConfig


@dataclass(frozen=True)
class IntegratorConfig:
    steps_per_period: int = 256
    gamma: float | None = None  # None -> 1e-3 * omega0
    settle_periods: int = 2000
    measure_periods: int = 100
    blowup_bound: float = 1e6

    def __post_init__(self):
        if self.steps_per_period < 32:
            raise ValueError("steps_per_period must be >= 32")
        if self.gamma is not None and not self.gamma >= 0:
            raise ValueError("gamma must be non-negative")
        if self.measure_periods < 1:
            raise ValueError("measure_periods must be >= 1")
        if self.settle_periods < 0:
            raise ValueError("settle_periods must be >= 0")

    def damping(self, cfg: PhysicalConfig) -> float:
        return 1e-3 * cfg.omega0 if self.gamma is None else self.gamma


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    p: np.ndarray
    omega: float
    steps_per_period: int

    @property
    def final_state(self) -> tuple[float, float]:
        return float(self.x[-1]), float(self.p[-1])


@dataclass(frozen=True)
class SweepPlan:
    """Frequencies visited in order; descending ``omega`` is a downsweep.

    With ``carry_state`` each point starts from the previous point's final
    state; otherwise every point starts from ``initial_state``.
    """

    omega_start: float
    omega_end: float
    n_points: int
    initial_state: tuple[float, float] = (0.0, 0.0)
    carry_state: bool = True

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("a sweep needs at least 2 points")
        if not (self.omega_start > 0 and self.omega_end > 0):
            raise ValueError("sweep frequencies must be positive")

    @property
    def omegas(self) -> np.ndarray:
        return np.linspace(self.omega_start, self.omega_end, self.n_points)


@dataclass(frozen=True)
class SweepRecord:
    omega: float
    x_omega: complex
    magnitude: float
    final_state: tuple[float, float] = field(default=(0.0, 0.0))


@lru_cache(maxsize=8)
def _drive_table(steps_per_period):
    # cos(omega t) at every half step of one period
    table = np.cos(np.pi * np.arange(2 * steps_per_period) / steps_per_period)
    table.setflags(write=False)
    return table


def _run(cfg, icfg, omega, state0, n_steps, xs=None, ps=None):
    N = icfg.steps_per_period
    dt = 2.0 * math.pi / (omega * N)
    x, p, done, blew_up = kernels.rk4_drive(
        float(state0[0]), float(state0[1]), cfg.m, cfg.m * cfg.omega0**2, cfg.alpha,
        cfg.F0, icfg.damping(cfg), dt, _drive_table(N), int(n_steps),
        icfg.blowup_bound, xs, ps,
    )
    if blew_up:
        raise NumericalBlowup(
            f"|x| exceeded {icfg.blowup_bound:g} at omega={omega!r} after {done} steps",
            omega=omega, time=done * dt)
    return x, p


def integrate(cfg: PhysicalConfig, icfg: IntegratorConfig, omega: float,
              state0: tuple[float, float], n_periods: int) -> Trajectory:
    """Integrate ``n_periods`` drive periods from ``state0`` at ``t = 0``.

    Solves ``x' = p/m``, ``p' = -m omega0^2 x - alpha x^3 + F0 cos(omega t) - gamma p``
    and returns every step, ``n_periods * steps_per_period + 1`` samples.
    """
    if n_periods < 1:
        raise ValueError("n_periods must be >= 1")
    if not omega > 0:
        raise ValueError("omega must be positive")
    N = icfg.steps_per_period
    n_steps = n_periods * N
    xs = np.empty(n_steps + 1)
    ps = np.empty(n_steps + 1)
    _run(cfg, icfg, omega, state0, n_steps, xs, ps)
    t = np.arange(n_steps + 1) * (2.0 * math.pi / (omega * N))
    return Trajectory(t, xs, ps, omega, N)


def fourier_component(traj: Trajectory, omega: float | None = None,
                      n_periods: int | None = None) -> complex:
    """Complex amplitude of the ``omega`` component over the final window.

    ``x(t) = X cos(omega t + phi)`` gives ``X exp(i phi)``.  Uses trapezoidal
    quadrature over the last ``n_periods`` periods (default: all of them).
    """
    omega = traj.omega if omega is None else omega
    N = traj.steps_per_period
    total = len(traj.x) - 1
    n_steps = total if n_periods is None else min(total, n_periods * N)
    t = traj.t[-(n_steps + 1):]
    x = traj.x[-(n_steps + 1):]
    integrand = x * np.exp(-1j * omega * t)
    dt = t[1] - t[0]
    integral = dt * (integrand.sum() - 0.5 * (integrand[0] + integrand[-1]))
    return complex(2.0 * integral / (t[-1] - t[0]))


def settle_and_measure(cfg: PhysicalConfig, icfg: IntegratorConfig, omega: float,
                       state0: tuple[float, float]) -> SweepRecord:
    state = state0
    if icfg.settle_periods:
        state = _run(cfg, icfg, omega, state0, icfg.settle_periods * icfg.steps_per_period)
    traj = integrate(cfg, icfg, omega, state, icfg.measure_periods)
    xw = fourier_component(traj)
    return SweepRecord(float(omega), xw, abs(xw), traj.final_state)


def sweep_grid(cfg: PhysicalConfig, icfg: IntegratorConfig, omegas,
               state0: tuple[float, float] = (0.0, 0.0), carry_state: bool = True) -> list[SweepRecord]:
    records = []
    state = state0
    for w in omegas:
        rec = settle_and_measure(cfg, icfg, float(w), state if carry_state else state0)
        records.append(rec)
        state = rec.final_state
    return records


def adiabatic_sweep(cfg: PhysicalConfig, icfg: IntegratorConfig, plan: SweepPlan) -> list[SweepRecord]:
    return sweep_grid(cfg, icfg, plan.omegas, plan.initial_state, plan.carry_state)


def detect_jump(records: list[SweepRecord], threshold_factor: float = 20.0) -> float | None:
    """Midpoint frequency of the first abnormally large amplitude step.

    A step is abnormal when it exceeds ``threshold_factor`` times the median
    adjacent difference of ``|x_omega|``.
    """
    if len(records) < 3:
        raise ValueError("jump detection needs at least 3 records")
    if math.isinf(threshold_factor):
        return None
    i = _jump_index(records, threshold_factor)
    if i is None:
        return None
    return 0.5 * (records[i].omega + records[i + 1].omega)


def _jump_index(records, threshold_factor):
    mags = np.array([r.magnitude for r in records])
    diffs = np.abs(np.diff(mags))
    threshold = threshold_factor * np.median(diffs)
    hits = np.nonzero(diffs > threshold)[0]
    return int(hits[0]) if hits.size else None


def refine_jump(cfg: PhysicalConfig, icfg: IntegratorConfig, records: list[SweepRecord],
                threshold_factor: float = 20.0, levels: int = 3,
                subdivisions: int = 10) -> float | None:
    """Locate a sweep jump more precisely by re-sweeping the bracketing interval.

    Each level restarts from the last record before the jump and steps through
    the bracket with ``subdivisions`` times finer resolution.
    """
    if len(records) < 3 or math.isinf(threshold_factor):
        return None
    i = _jump_index(records, threshold_factor)
    if i is None:
        return None
    before, after = records[i], records[i + 1]
    for _ in range(levels):
        step = (after.omega - before.omega) / subdivisions
        omegas = before.omega + step * np.arange(1, subdivisions + 6)
        fine = [before] + sweep_grid(cfg, icfg, omegas, before.final_state)
        j = _jump_index(fine, threshold_factor)
        if j is None:
            break
        before, after = fine[j], fine[j + 1]
    return 0.5 * (before.omega + after.omega)


def thread_count() -> int:
    env = os.environ.get("RWA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_plans(cfg_plans, icfg: IntegratorConfig, threads: int | None = None) -> list[list[SweepRecord]]:
    """Run independent ``(cfg, plan)`` sweeps concurrently.

    The compiled stepper releases the GIL, so threads scale; results come back
    in input order regardless of completion order.
    """
    return map_parallel(lambda cp: adiabatic_sweep(cp[0], icfg, cp[1]), cfg_plans, threads)


def downsweep_jump(cfg: PhysicalConfig, icfg: IntegratorConfig, omega_high: float,
                   omega_low: float, n_points: int, threshold_factor: float = 20.0,
                   levels: int = 3) -> tuple[float | None, list[SweepRecord]]:
    """Downsweep from rest, then refine the first jump; returns ``(omega_jump, records)``."""
    records = sweep_grid(cfg, icfg, np.linspace(omega_high, omega_low, n_points))
    return refine_jump(cfg, icfg, records, threshold_factor, levels), records


def map_parallel(fn, items, threads: int | None = None) -> list:
    """Order-preserving map over independent oracle jobs."""
    threads = thread_count() if threads is None else threads
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
