"""Driven harmonic oscillator: exact response and both rotating-wave solutions.

All amplitudes are signed: ``x(t) = X cos(omega t)``, so ``X < 0`` means the
response is in antiphase with the drive.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ResonanceSingularity
from .model import (
    Frame,
    PhysicalConfig,
    amplitude_to_signed,
    detuning,
    drive_coupling,
    zero_point_length,
)

DEFAULT_EPS_RES = 1e-9


class Method(enum.Enum):
    EXACT = "exact"
    RWA_BARE = "rwa_bare"
    RWA_DRIVE = "rwa_drive"


@dataclass(frozen=True)
class HarmonicResponse:
    X: float
    method: Method


def _eps(cfg, eps_res):
    return DEFAULT_EPS_RES * cfg.omega0**2 if eps_res is None else eps_res


def _check_pole(cfg, omega, eps_res):
    if not omega > 0:
        raise ValueError(f"drive frequency must be positive, got {omega!r}")
    if abs(cfg.omega0**2 - omega**2) <= _eps(cfg, eps_res):
        raise ResonanceSingularity(omega, cfg.omega0)


def exact_response(cfg: PhysicalConfig, omega: float, eps_res: float | None = None) -> HarmonicResponse:
    _check_pole(cfg, omega, eps_res)
    return HarmonicResponse(cfg.F0 / cfg.m / (cfg.omega0**2 - omega**2), Method.EXACT)


def rwa_bare_response(cfg: PhysicalConfig, omega: float, eps_res: float | None = None) -> HarmonicResponse:
    """Stationary bare-frame RWA solution ``X = -F0 / (2 m omega0 Delta)``."""
    delta = detuning(cfg, omega)
    if abs(delta) <= _eps(cfg, eps_res) / cfg.omega0:
        raise ResonanceSingularity(omega, cfg.omega0)
    return HarmonicResponse(-cfg.F0 / (2.0 * cfg.m * cfg.omega0 * delta), Method.RWA_BARE)


def drive_frame_amplitude(cfg: PhysicalConfig, omega: float, eps_res: float | None = None) -> complex:
    """Stationary ``<b~> = 2 F_b omega / (omega0^2 - omega^2)``."""
    _check_pole(cfg, omega, eps_res)
    f_b = drive_coupling(cfg, Frame.drive(omega))
    return complex(2.0 * f_b * omega / (cfg.omega0**2 - omega**2))


def rwa_drive_response(cfg: PhysicalConfig, omega: float, eps_res: float | None = None) -> HarmonicResponse:
    beta = drive_frame_amplitude(cfg, omega, eps_res)
    return HarmonicResponse(amplitude_to_signed(beta, cfg, Frame.drive(omega)), Method.RWA_DRIVE)


def response_ratio(cfg: PhysicalConfig, omega: float) -> float:
    """Exact over bare-RWA amplitude, ``2 omega0 / (omega0 + omega)``."""
    if not omega > 0:
        raise ValueError(f"drive frequency must be positive, got {omega!r}")
    return 2.0 * cfg.omega0 / (cfg.omega0 + omega)


def phase_trajectory(X: float, cfg: PhysicalConfig, omega: float, n_samples: int = 256) -> np.ndarray:
    """Sample ``(x, p / (m omega0))`` of ``x = X cos(omega t)`` over one period.

    Returns an ``(n_samples, 2)`` array; the points lie on an ellipse with
    semi-axes ``|X|`` and ``|X| omega / omega0``.
    """
    if n_samples < 4:
        raise ValueError("n_samples must be at least 4")
    phase = 2.0 * np.pi * np.arange(n_samples) / n_samples
    x = X * np.cos(phase)
    p_scaled = -(omega / cfg.omega0) * X * np.sin(phase)
    return np.column_stack([x, p_scaled])


def stationary_trajectory(beta: complex, cfg: PhysicalConfig, frame: Frame, omega: float,
                          n_samples: int = 256) -> np.ndarray:
    """Phase-space path implied by a constant rotating-frame amplitude.

    In the bare frame this is a circle of radius ``2 |beta| sqrt(hbar / 2 m omega0)``;
    in the drive frame it is the exact ellipse.
    """
    if n_samples < 4:
        raise ValueError("n_samples must be at least 4")
    beta = complex(beta)
    wt = 2.0 * np.pi * np.arange(n_samples) / n_samples - np.angle(beta)
    r = 2.0 * abs(beta)
    x = r * zero_point_length(cfg, frame) * np.cos(wt)
    p = -r * math.sqrt(cfg.hbar * cfg.m * frame.reference_frequency / 2.0) * np.sin(wt)
    return np.column_stack([x, p / (cfg.m * cfg.omega0)])


def micromotion_components(cfg: PhysicalConfig, omega: float,
                           eps_res: float | None = None) -> tuple[complex, complex]:
    """Split the exact solution's bare-frame amplitude as ``A0 + A2 exp(2i omega t)``.

    ``A0`` is what a stationary bare-frame ansatz can capture; ``A2`` is the
    counter-rotating part dropped by the RWA, and vanishes at resonance.
    """
    X = exact_response(cfg, omega, eps_res).X
    scale = X * math.sqrt(cfg.m / (2.0 * cfg.hbar * cfg.omega0))
    return complex(scale * (cfg.omega0 + omega) / 2.0), complex(scale * (cfg.omega0 - omega) / 2.0)


def bare_frame_amplitude_trace(cfg: PhysicalConfig, omega: float, t: np.ndarray,
                               eps_res: float | None = None) -> np.ndarray:
    """``<a~>(t)`` reconstructed from the micromotion components."""
    a0, a2 = micromotion_components(cfg, omega, eps_res)
    return a0 + a2 * np.exp(2j * omega * np.asarray(t))
