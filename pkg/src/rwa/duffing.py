"""Rotating-frame slow flow of the driven Duffing oscillator.

The mean-field stationary condition in either frame reduces to a real cubic
``c3 X^3 + c1 X + c0 = 0`` in the signed lab-frame amplitude ``X`` of
``x(t) = X cos(omega t)``.  Roots are found in closed form and polished with
Newton steps; stability follows the damped limit (middle ``|X|`` of three
roots is the saddle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCubic, RwaError
from .model import Frame, FrameKind, PhysicalConfig, drive_coupling, zero_point_length

# Relative discriminant magnitude treated as an exact fold.
FOLD_RTOL = 8 * np.finfo(float).eps
NEWTON_STEPS = 5
FOLD_BISECT_RTOL = 1e-10


@dataclass(frozen=True)
class SlowFlowParams:
    """Coefficients of ``i d<beta>/dt = lam beta + kappa (q beta + beta |beta|^2) - f``."""

    frame: Frame
    lam: float
    kappa: float
    f: float
    quantum_ordering: bool = False


@dataclass(frozen=True)
class CubicCondition:
    c3: float
    c1: float
    c0: float

    def __call__(self, X):
        return (self.c3 * X * X + self.c1) * X + self.c0

    def derivative(self, X):
        return 3.0 * self.c3 * X * X + self.c1


@dataclass(frozen=True)
class SteadyBranch:
    X: float
    stable: bool | None = None
    multiplicity: int = 1


def slow_flow_params(cfg: PhysicalConfig, omega: float, frame: FrameKind | str,
                     quantum_ordering: bool = False) -> SlowFlowParams:
    if not omega > 0:
        raise ValueError(f"drive frequency must be positive, got {omega!r}")
    fr = Frame.of(frame, cfg, omega)
    ref = fr.reference_frequency
    if fr.kind is FrameKind.BARE:
        lam = -(omega - cfg.omega0)
    else:
        lam = (cfg.omega0**2 - omega**2) / (2.0 * omega)
    kappa = 3.0 * cfg.alpha * cfg.hbar / (4.0 * cfg.m**2 * ref**2)
    return SlowFlowParams(fr, lam, kappa, drive_coupling(cfg, fr), quantum_ordering)


def slow_flow_rhs(beta: complex, params: SlowFlowParams) -> complex:
    """Right-hand side of the mean-field slow flow, i.e. ``i d<beta>/dt``.

    The drive enters as the bare coupling (angular-frequency units), not
    divided by hbar.
    """
    beta = complex(beta)
    q = 1.0 if params.quantum_ordering else 0.0
    nonlinear = params.kappa * (q * beta + beta * beta * beta.conjugate())
    return params.lam * beta + nonlinear - params.f


def cubic_from_params(cfg: PhysicalConfig, params: SlowFlowParams) -> CubicCondition:
    """Reduce the stationary slow flow with real ``beta = X u`` to a cubic in ``X``.

    ``u = 1 / (2 sqrt(hbar / 2 m Omega))``; the equation is divided by ``u``
    and scaled by ``2 Omega`` so that ``c0 = -F0/m``.
    """
    ref = params.frame.reference_frequency
    u = 1.0 / (2.0 * zero_point_length(cfg, params.frame))
    q = 1.0 if params.quantum_ordering else 0.0
    return CubicCondition(
        c3=2.0 * ref * params.kappa * u * u,
        c1=2.0 * ref * (params.lam + q * params.kappa),
        c0=-2.0 * ref * params.f / u,
    )


def steady_cubic(cfg: PhysicalConfig, omega: float, frame: FrameKind | str,
                 quantum_ordering: bool = False) -> CubicCondition:
    """Closed-form coefficients of the stationary cubic.

    Agrees with :func:`cubic_from_params` to rounding; written out so the
    ``alpha = 0`` root matches the harmonic solutions bit for bit.
    """
    if not omega > 0:
        raise ValueError(f"drive frequency must be positive, got {omega!r}")
    kind = FrameKind(frame)
    if kind is FrameKind.DRIVE:
        ref, c1 = omega, cfg.omega0**2 - omega**2
    else:
        ref, c1 = cfg.omega0, 2.0 * cfg.omega0 * (cfg.omega0 - omega)
    if quantum_ordering:
        c1 += 3.0 * cfg.alpha * cfg.hbar / (2.0 * cfg.m**2 * ref)
    return CubicCondition(3.0 * cfg.alpha / (4.0 * cfg.m), c1, -cfg.F0 / cfg.m)


def discriminant(cond: CubicCondition) -> float:
    """``-4 c3 c1^3 - 27 c3^2 c0^2``; > 0 three real roots, < 0 one."""
    c3, c1, c0 = cond.c3, cond.c1, cond.c0
    return -4.0 * c3 * c1**3 - 27.0 * c3 * c3 * c0 * c0


def _discriminant_scale(cond):
    return 4.0 * abs(cond.c3 * cond.c1**3) + 27.0 * cond.c3**2 * cond.c0**2


def _polish(cond, x):
    best, best_res = x, abs(cond(x))
    for _ in range(NEWTON_STEPS):
        d = cond.derivative(x)
        if d == 0.0 or best_res == 0.0:
            break
        x = x - cond(x) / d
        res = abs(cond(x))
        if res < best_res:
            best, best_res = x, res
        else:
            break
    return best


def solve_cubic(cond: CubicCondition) -> list[SteadyBranch]:
    """All real roots, sorted by decreasing ``X``; stability left unset."""
    c3, c1, c0 = cond.c3, cond.c1, cond.c0
    if c3 == 0.0:
        if c1 == 0.0:
            raise DegenerateCubic(f"no steady state for c3=c1=0, c0={c0!r}")
        return [SteadyBranch(-c0 / c1)]

    p, q = c1 / c3, c0 / c3
    if p == 0.0 and q == 0.0:
        return [SteadyBranch(0.0, multiplicity=3)]

    disc = discriminant(cond)
    if abs(disc) <= FOLD_RTOL * _discriminant_scale(cond):
        if p == 0.0:
            return [SteadyBranch(_polish(cond, -math.copysign(abs(q) ** (1.0 / 3.0), q)))]
        simple, double = 3.0 * q / p, -1.5 * q / p
        roots = [SteadyBranch(_polish(cond, simple)), SteadyBranch(double, multiplicity=2)]
    elif disc > 0.0:
        # p < 0 here; trigonometric form avoids complex intermediates
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 1.5 * q / p * math.sqrt(-3.0 / p)
        phi = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        roots = [SteadyBranch(_polish(cond, r * math.cos(phi - 2.0 * math.pi * k / 3.0)))
                 for k in range(3)]
    elif p == 0.0:
        roots = [SteadyBranch(_polish(cond, -math.copysign(abs(q) ** (1.0 / 3.0), q)))]
    elif p > 0.0:
        # hyperbolic forms of Cardano's root; no cancellation for small q
        w = math.sqrt(p / 3.0)
        x = -2.0 * w * math.sinh(math.asinh(1.5 * q / (p * w)) / 3.0)
        roots = [SteadyBranch(_polish(cond, x))]
    else:
        w = math.sqrt(-p / 3.0)
        arg = max(1.0, -1.5 * abs(q) / (p * w))
        x = -math.copysign(2.0 * w * math.cosh(math.acosh(arg) / 3.0), q)
        roots = [SteadyBranch(_polish(cond, x))]
    return sorted(roots, key=lambda b: -b.X)


def classify_stability(branches: list[SteadyBranch]) -> list[SteadyBranch]:
    """Mark stability using the vanishing-damping rule.

    One root: stable.  Three distinct roots: the middle ``|X|`` is the saddle.
    At a fold the doubled root is unstable and the simple root stable.
    """
    out = []
    if len(branches) == 1:
        return [SteadyBranch(branches[0].X, True, branches[0].multiplicity)]
    if any(b.multiplicity == 2 for b in branches):
        return [SteadyBranch(b.X, b.multiplicity == 1, b.multiplicity) for b in branches]
    by_mag = sorted(branches, key=lambda b: abs(b.X))
    middle = by_mag[len(by_mag) // 2]
    for b in branches:
        out.append(SteadyBranch(b.X, b is not middle, b.multiplicity))
    return out


def steady_states(cfg: PhysicalConfig, omega: float, frame: FrameKind | str,
                  quantum_ordering: bool = False) -> list[SteadyBranch]:
    return classify_stability(solve_cubic(steady_cubic(cfg, omega, frame, quantum_ordering)))


def stable_count(cond: CubicCondition) -> int:
    """Number of stable steady states: 2 in the bistable region, else 1."""
    return 2 if discriminant(cond) > FOLD_RTOL * _discriminant_scale(cond) else 1


@dataclass
class SweepPoint:
    omega: float
    branches: list[SteadyBranch] = field(default_factory=list)
    error: str | None = None


@dataclass
class FrequencySweep:
    frame: FrameKind
    points: list[SweepPoint]
    folds: list[float]


def _disc_at(cfg, frame, quantum_ordering):
    return lambda w: discriminant(steady_cubic(cfg, w, frame, quantum_ordering))


def bisect_fold(cfg: PhysicalConfig, frame: FrameKind | str, lo: float, hi: float,
                quantum_ordering: bool = False, rtol: float = FOLD_BISECT_RTOL) -> float:
    """Refine a discriminant sign change between ``lo`` and ``hi``."""
    disc = _disc_at(cfg, frame, quantum_ordering)
    d_lo, d_hi = disc(lo), disc(hi)
    if d_lo == 0.0:
        return lo
    if d_hi == 0.0:
        return hi
    if (d_lo > 0) == (d_hi > 0):
        raise ValueError(f"no discriminant sign change in [{lo!r}, {hi!r}]")
    while abs(hi - lo) > rtol * abs(0.5 * (lo + hi)):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        d_mid = disc(mid)
        if d_mid == 0.0:
            return mid
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fold_frequencies(cfg: PhysicalConfig, frame: FrameKind | str, omega_grid,
                     quantum_ordering: bool = False) -> list[float]:
    """Fold frequencies bracketed by ``omega_grid`` and refined by bisection."""
    grid = np.asarray(omega_grid, dtype=float)
    if cfg.alpha == 0.0:
        return []
    disc = _disc_at(cfg, frame, quantum_ordering)
    signs = np.sign([disc(w) for w in grid])
    folds = []
    for i in range(len(grid) - 1):
        if signs[i] == 0.0:
            if not folds or folds[-1] != grid[i]:
                folds.append(float(grid[i]))
        elif signs[i + 1] != 0.0 and signs[i] != signs[i + 1]:
            lo, hi = sorted((grid[i], grid[i + 1]))
            folds.append(bisect_fold(cfg, frame, lo, hi, quantum_ordering))
    if len(grid) and signs[-1] == 0.0:
        folds.append(float(grid[-1]))
    return folds


def frequency_sweep(cfg: PhysicalConfig, frame: FrameKind | str, omega_grid,
                    quantum_ordering: bool = False) -> FrequencySweep:
    """Classified steady states at each grid frequency plus fold frequencies.

    Per-point solver failures are recorded on the point, not raised.
    """
    grid = np.asarray(omega_grid, dtype=float)
    diffs = np.diff(grid)
    if np.any(grid <= 0) or not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValueError("omega_grid must be positive and strictly monotone")
    points = []
    for w in grid:
        try:
            points.append(SweepPoint(float(w), steady_states(cfg, float(w), frame, quantum_ordering)))
        except RwaError as exc:
            points.append(SweepPoint(float(w), [], f"{type(exc).__name__}: {exc}"))
    folds = fold_frequencies(cfg, frame, grid, quantum_ordering)
    return FrequencySweep(FrameKind(frame), points, sorted(folds))
