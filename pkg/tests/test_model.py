import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rwa.model import (
    Frame,
    FrameKind,
    PhysicalConfig,
    amplitude_to_displacement,
    amplitude_to_signed,
    detuning,
    displacement_to_amplitude,
    drive_coupling,
    signed_to_amplitude,
)

UNIT = PhysicalConfig(m=1.0, omega0=1.0, alpha=0.0, F0=1.0, hbar=1.0)


@pytest.mark.parametrize("omega, expected", [(0.5, -0.5), (1.0, 0.0), (1.5, 0.5)])
def test_detuning(omega, expected):
    assert detuning(UNIT, omega) == expected


def test_detuning_rejects_nonpositive_frequency():
    with pytest.raises(ValueError):
        detuning(UNIT, 0.0)


def test_drive_coupling_examples():
    assert drive_coupling(UNIT, Frame.drive(0.5)) == pytest.approx(0.5, rel=1e-15)
    assert drive_coupling(UNIT, Frame.bare(UNIT)) == pytest.approx(1 / (2 * math.sqrt(2)), rel=1e-15)
    assert drive_coupling(PhysicalConfig(F0=0.0), Frame.drive(0.7)) == 0.0


@given(st.floats(0.0, 1e3), st.floats(1e-3, 1e3))
def test_drive_coupling_scaling(F0, ref):
    cfg = PhysicalConfig(F0=F0)
    base = drive_coupling(cfg, Frame.drive(ref))
    assert drive_coupling(PhysicalConfig(F0=2 * F0), Frame.drive(ref)) == pytest.approx(2 * base, rel=1e-14)
    assert drive_coupling(cfg, Frame.drive(4 * ref)) == pytest.approx(base / 2, rel=1e-14)


def test_amplitude_to_displacement_examples():
    X, theta = amplitude_to_displacement(2 / 3, UNIT, Frame.drive(0.5), 0.5)
    assert X == pytest.approx(4 / 3, rel=1e-15)
    assert theta == 0.0
    assert amplitude_to_displacement(0.0, UNIT, Frame.drive(0.5))[0] == 0.0
    X, _ = amplitude_to_displacement(1.0, UNIT, Frame.bare(UNIT))
    assert X == pytest.approx(math.sqrt(2), rel=1e-15)


@given(
    st.floats(1e-6, 1e6),
    st.floats(-math.pi + 1e-9, math.pi),
    st.sampled_from(list(FrameKind)),
    st.floats(0.05, 20.0),
    st.floats(0.1, 10.0),
)
def test_round_trip(mag, theta, kind, omega, hbar):
    cfg = PhysicalConfig(m=1.3, omega0=0.9, hbar=hbar)
    frame = Frame.of(kind, cfg, omega)
    beta = complex(mag * math.cos(theta), mag * math.sin(theta))
    X, th = amplitude_to_displacement(beta, cfg, frame)
    back = displacement_to_amplitude(X, th, cfg, frame)
    assert abs(back - beta) <= 1e-14 * abs(beta)


@given(st.floats(-1e3, 1e3), st.floats(0.05, 20.0))
def test_signed_round_trip(X, omega):
    frame = Frame.drive(omega)
    assert amplitude_to_signed(signed_to_amplitude(X, UNIT, frame), UNIT, frame) == pytest.approx(X, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("kwargs", [dict(m=0.0), dict(omega0=-1.0), dict(hbar=0.0), dict(F0=-0.1),
                                    dict(alpha=math.nan)])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        PhysicalConfig(**kwargs)


def test_frame_reference_frequencies():
    cfg = PhysicalConfig(omega0=2.0)
    assert Frame.of("bare", cfg, 0.3).reference_frequency == 2.0
    assert Frame.of("drive", cfg, 0.3).reference_frequency == 0.3
    with pytest.raises(ValueError):
        Frame.drive(0.0)
