import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import bare_fold_closed_form, cubic_roots_bisection, drive_fold_closed_form
from rwa.duffing import (
    CubicCondition,
    SteadyBranch,
    bisect_fold,
    classify_stability,
    cubic_from_params,
    discriminant,
    fold_frequencies,
    frequency_sweep,
    slow_flow_params,
    slow_flow_rhs,
    solve_cubic,
    steady_cubic,
    steady_states,
)
from rwa.errors import DegenerateCubic
from rwa.harmonic import exact_response, rwa_bare_response
from rwa.model import Frame, FrameKind, PhysicalConfig, signed_to_amplitude

FIG2 = PhysicalConfig(m=1.0, omega0=1.0, alpha=1.0, F0=0.2, hbar=1.0)
FRAMES = [FrameKind.DRIVE, FrameKind.BARE]

# bisection-oracle roots (see tests/oracles.py), frozen
ROOTS_1P5 = [1.3645829296199241, -0.16257833450720005, -1.2020045951127236]
ROOT_C1_POS = 0.19448296236472384
ROOT_C1_M044 = 0.9339176568385599


def residual_ok(cond, X):
    scale = max(abs(cond.c3 * X**3), abs(cond.c1 * X), abs(cond.c0), 1e-300)
    return abs(cond(X)) <= 1e-12 * scale


def test_rhs_drive_only_at_zero_amplitude():
    params = slow_flow_params(FIG2, 1.5, "drive")
    assert slow_flow_rhs(0.0, params) == -params.f


@pytest.mark.parametrize("frame", FRAMES)
@pytest.mark.parametrize("omega", [0.5, 0.9, 1.0, 1.26, 1.5, 2.0])
@pytest.mark.parametrize("qo", [False, True])
def test_rhs_vanishes_on_cubic_roots(frame, omega, qo):
    params = slow_flow_params(FIG2, omega, frame, qo)
    for branch in solve_cubic(steady_cubic(FIG2, omega, frame, qo)):
        beta = signed_to_amplitude(branch.X, FIG2, params.frame)
        scale = abs(params.lam * beta) + abs(params.kappa) * (abs(beta) + abs(beta) ** 3) + params.f
        assert abs(slow_flow_rhs(beta, params)) <= 1e-12 * scale


def test_rhs_harmonic_zero_reproduces_drive_frame_amplitude():
    cfg = PhysicalConfig(alpha=0.0, F0=1.0)
    params = slow_flow_params(cfg, 0.5, "drive")
    beta = params.f / params.lam
    assert beta == pytest.approx(2 / 3, rel=1e-15)
    assert slow_flow_rhs(beta, params) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("omega", [0.3, 0.8, 1.0, 1.5, 2.4])
@pytest.mark.parametrize("m, alpha, F0, hbar", [(1, 1, 0.2, 1), (2.5, -0.7, 1.3, 0.1), (0.4, 3.0, 0.05, 10)])
def test_cubic_coefficients_closed_form(omega, m, alpha, F0, hbar):
    cfg = PhysicalConfig(m=m, omega0=1.1, alpha=alpha, F0=F0, hbar=hbar)
    w0 = cfg.omega0
    # reduce the operator-level slow flow, independently of steady_cubic's closed form
    d = cubic_from_params(cfg, slow_flow_params(cfg, omega, "drive"))
    b = cubic_from_params(cfg, slow_flow_params(cfg, omega, "bare"))
    for frame in ("drive", "bare"):
        for qo in (False, True):
            derived = cubic_from_params(cfg, slow_flow_params(cfg, omega, frame, qo))
            closed = steady_cubic(cfg, omega, frame, qo)
            assert (derived.c3, derived.c1, derived.c0) == pytest.approx(
                (closed.c3, closed.c1, closed.c0), rel=1e-12, abs=1e-14)
    for cond in (d, b):
        assert cond.c3 == pytest.approx(3 * alpha / (4 * m), rel=1e-14)
        assert cond.c0 == pytest.approx(-F0 / m, rel=1e-14)
    assert d.c1 == pytest.approx(w0**2 - omega**2, rel=1e-12, abs=1e-15)
    assert b.c1 == pytest.approx(2 * w0 * (w0 - omega), rel=1e-12, abs=1e-15)
    for frame, ref in (("drive", omega), ("bare", w0)):
        plain = cubic_from_params(cfg, slow_flow_params(cfg, omega, frame))
        ordered = cubic_from_params(cfg, slow_flow_params(cfg, omega, frame, True))
        assert ordered.c1 - plain.c1 == pytest.approx(3 * alpha * hbar / (2 * m**2 * ref), rel=1e-12)


def test_cubic_example_coefficients():
    cond = steady_cubic(FIG2, 1.5, "drive")
    assert (cond.c3, cond.c1, cond.c0) == pytest.approx((0.75, -1.25, -0.2), rel=1e-15)


def test_resonance_root():
    (branch,) = solve_cubic(steady_cubic(FIG2, 1.0, "drive"))
    assert branch.X == pytest.approx((0.2 / 0.75) ** (1 / 3), rel=1e-15)


@pytest.mark.parametrize("omega", [0.3, 0.7, 1.4, 2.5])
def test_harmonic_reduction(omega):
    cfg = PhysicalConfig(alpha=0.0, F0=0.7, m=1.7)
    (d,) = solve_cubic(steady_cubic(cfg, omega, "drive"))
    (b,) = solve_cubic(steady_cubic(cfg, omega, "bare"))
    assert d.X == pytest.approx(exact_response(cfg, omega).X, rel=1e-14)
    assert b.X == pytest.approx(rwa_bare_response(cfg, omega).X, rel=1e-14)


def test_solve_cubic_examples():
    roots = [b.X for b in solve_cubic(CubicCondition(0.75, -1.25, -0.2))]
    assert roots == pytest.approx(ROOTS_1P5, rel=1e-13)
    assert sum(roots) == pytest.approx(0.0, abs=1e-14)
    (one,) = solve_cubic(CubicCondition(0.75, 1.0, -0.2))
    assert one.X == pytest.approx(ROOT_C1_POS, rel=1e-14)
    (one,) = solve_cubic(CubicCondition(0.75, -0.44, -0.2))
    assert one.X == pytest.approx(ROOT_C1_M044, rel=1e-14)
    (triple,) = solve_cubic(CubicCondition(1.0, 0.0, 0.0))
    assert triple.X == 0.0 and triple.multiplicity == 3


def test_solve_cubic_linear_and_degenerate():
    (root,) = solve_cubic(CubicCondition(0.0, 2.0, -1.0))
    assert root.X == 0.5
    with pytest.raises(DegenerateCubic):
        solve_cubic(CubicCondition(0.0, 0.0, 1.0))


def test_solve_cubic_exact_fold():
    # (x - 1)^2 (x + 2) = x^3 - 3x + 2
    branches = solve_cubic(CubicCondition(1.0, -3.0, 2.0))
    assert [(b.X, b.multiplicity) for b in branches] == [(1.0, 2), (-2.0, 1)]
    classified = classify_stability(branches)
    assert [b.stable for b in classified] == [False, True]


def test_classify_three_roots():
    branches = classify_stability(solve_cubic(CubicCondition(0.75, -1.25, -0.2)))
    stable = {round(b.X, 10) for b in branches if b.stable}
    unstable = [b.X for b in branches if not b.stable]
    assert stable == {round(ROOTS_1P5[0], 10), round(ROOTS_1P5[1], 10)}
    assert unstable == pytest.approx([ROOTS_1P5[2]])


def test_classify_single_root():
    assert classify_stability([SteadyBranch(0.3)])[0].stable is True


@pytest.mark.parametrize("coeffs, expected", [
    ((0.75, -1.25, -0.2), 5.251875),
    ((0.75, -0.44, -0.2), -0.351948),
    ((1.0, 0.0, 0.0), 0.0),
])
def test_discriminant_examples(coeffs, expected):
    assert discriminant(CubicCondition(*coeffs)) == pytest.approx(expected, rel=1e-12, abs=1e-15)


signed_mag = st.builds(lambda e, s: s * 10.0**e, st.floats(-3, 3), st.sampled_from([-1.0, 1.0]))


@given(signed_mag, signed_mag, signed_mag)
def test_roots_match_bisection_and_discriminant(c3, c1, c0):
    cond = CubicCondition(c3, c1, c0)
    disc = discriminant(cond)
    scale = 4 * abs(c3 * c1**3) + 27 * c3**2 * c0**2
    assume(abs(disc) > 1e-9 * scale)
    roots = [b.X for b in solve_cubic(cond)]
    expected = cubic_roots_bisection(c3, c1, c0)
    assert len(roots) == (3 if disc > 0 else 1) == len(expected)
    assert roots == pytest.approx(expected, rel=1e-10)
    for X in roots:
        assert residual_ok(cond, X)


@pytest.mark.parametrize("frame", FRAMES)
@pytest.mark.parametrize("omega", np.linspace(0.3, 2.5, 12))
def test_residual_invariant_on_sweep(frame, omega):
    cond = steady_cubic(FIG2, omega, frame)
    for b in solve_cubic(cond):
        assert residual_ok(cond, b.X)


@pytest.mark.parametrize("cfg", [FIG2, PhysicalConfig(m=2.0, omega0=1.3, alpha=-0.4, F0=0.5, hbar=0.3)])
@pytest.mark.parametrize("qo", [False, True])
def test_frames_coincide_at_resonance(cfg, qo):
    d = steady_cubic(cfg, cfg.omega0, "drive", qo)
    b = steady_cubic(cfg, cfg.omega0, "bare", qo)
    assert (d.c3, d.c1, d.c0) == (b.c3, b.c1, b.c0)
    pd = slow_flow_params(cfg, cfg.omega0, "drive", qo)
    pb = slow_flow_params(cfg, cfg.omega0, "bare", qo)
    assert pd.lam == pb.lam == 0.0
    assert pd.kappa == pb.kappa


@pytest.mark.parametrize("frame", FRAMES)
@pytest.mark.parametrize("omega", [0.5, 1.0, 1.3, 1.8])
def test_hbar_invariance(frame, omega):
    results = []
    for hbar in (0.1, 1.0, 10.0):
        cfg = PhysicalConfig(m=1.0, omega0=1.0, alpha=1.0, F0=0.2, hbar=hbar)
        results.append([(b.X, b.stable) for b in steady_states(cfg, omega, frame)])
    for r in results[1:]:
        assert [x for x, _ in r] == pytest.approx([x for x, _ in results[0]], rel=1e-13)
        assert [s for _, s in r] == [s for _, s in results[0]]


@pytest.mark.parametrize("frame", FRAMES)
@pytest.mark.parametrize("omega", [0.5, 1.3, 1.8])
def test_parity_under_drive_sign_flip(frame, omega):
    cond = steady_cubic(FIG2, omega, frame)
    flipped = CubicCondition(cond.c3, cond.c1, -cond.c0)
    up = sorted(b.X for b in solve_cubic(cond))
    down = sorted(-b.X for b in solve_cubic(flipped))
    assert up == pytest.approx(down, rel=1e-14)


def test_fold_frequencies_match_closed_form():
    grid = np.linspace(0.5, 2.0, 151)
    (wd,) = fold_frequencies(FIG2, "drive", grid)
    (wb,) = fold_frequencies(FIG2, "bare", grid)
    assert wd == pytest.approx(drive_fold_closed_form(1, 1, 1, 0.2), rel=1e-10)
    assert wb == pytest.approx(bare_fold_closed_form(1, 1, 1, 0.2), rel=1e-10)
    assert wd == pytest.approx(1.2598532240603781, rel=1e-10)
    assert wb == pytest.approx(1.2936150730876648, rel=1e-10)


def test_no_fold_for_linear_oscillator():
    cfg = PhysicalConfig(alpha=0.0, F0=0.2)
    assert fold_frequencies(cfg, "drive", np.linspace(0.5, 2.0, 50)) == []
    sweep = frequency_sweep(cfg, "drive", np.linspace(0.5, 2.0, 4))
    assert sweep.folds == []


def test_fold_matches_root_count_change():
    grid = np.linspace(1.0, 1.6, 601)
    sweep = frequency_sweep(FIG2, "drive", grid)
    counts = np.array([len(p.branches) for p in sweep.points])
    i = int(np.nonzero(counts == 3)[0][0])
    assert counts[i - 1] == 1
    assert grid[i - 1] <= sweep.folds[0] <= grid[i]


def test_frequency_sweep_records_errors():
    cfg = PhysicalConfig(alpha=0.0, F0=0.2)
    sweep = frequency_sweep(cfg, "drive", [0.5, 1.0, 1.5])
    assert sweep.points[1].error is not None and sweep.points[1].branches == []
    assert sweep.points[0].error is None
    with pytest.raises(ValueError):
        frequency_sweep(cfg, "drive", [0.5, 0.5, 1.0])


def test_bisect_fold_rejects_bracket_without_sign_change():
    with pytest.raises(ValueError):
        bisect_fold(FIG2, "drive", 0.5, 0.9)


def test_softening_fold_below_resonance():
    cfg = PhysicalConfig(alpha=-1.0, F0=0.05)
    folds = fold_frequencies(cfg, "drive", np.linspace(0.5, 1.5, 101))
    assert len(folds) == 1 and folds[0] < 1.0
