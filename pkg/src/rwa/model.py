"""Physical parameters, operator frames and frame-dependent couplings.

Rotating-frame amplitudes are plain Python ``complex`` numbers.  A frame is
identified by the frequency used to build the ladder operators: the natural
frequency ``omega0`` for the bare frame, the drive frequency ``omega`` for
the drive frame.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConfig:
    """Parameters of ``H = p^2/2m + m omega0^2 x^2/2 + alpha x^4/4 - F0 cos(omega t) x``."""

    m: float = 1.0
    omega0: float = 1.0
    alpha: float = 0.0
    F0: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m!r}")
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")
        if not self.F0 >= 0:
            raise ValueError(f"F0 must be non-negative, got {self.F0!r}")
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")


class FrameKind(enum.Enum):
    BARE = "bare"
    DRIVE = "drive"


@dataclass(frozen=True)
class Frame:
    kind: FrameKind
    reference_frequency: float

    def __post_init__(self):
        if not self.reference_frequency > 0:
            raise ValueError("frame reference frequency must be positive")

    @classmethod
    def bare(cls, cfg: PhysicalConfig) -> Frame:
        return cls(FrameKind.BARE, cfg.omega0)

    @classmethod
    def drive(cls, omega: float) -> Frame:
        return cls(FrameKind.DRIVE, omega)

    @classmethod
    def of(cls, kind: FrameKind | str, cfg: PhysicalConfig, omega: float) -> Frame:
        """Build the frame of ``kind`` for drive frequency ``omega``."""
        kind = FrameKind(kind)
        return cls.bare(cfg) if kind is FrameKind.BARE else cls.drive(omega)


def detuning(cfg: PhysicalConfig, omega: float) -> float:
    if not omega > 0:
        raise ValueError(f"drive frequency must be positive, got {omega!r}")
    return omega - cfg.omega0


def drive_coupling(cfg: PhysicalConfig, frame: Frame) -> float:
    """Drive strength ``F0 / (2 sqrt(2 m Omega hbar))`` in the frame's units."""
    return cfg.F0 / (2.0 * math.sqrt(2.0 * cfg.m * frame.reference_frequency * cfg.hbar))


def zero_point_length(cfg: PhysicalConfig, frame: Frame) -> float:
    """``sqrt(hbar / (2 m Omega))``: displacement per unit ladder amplitude."""
    return math.sqrt(cfg.hbar / (2.0 * cfg.m * frame.reference_frequency))


def amplitude_to_displacement(beta: complex, cfg: PhysicalConfig, frame: Frame,
                              omega: float | None = None) -> tuple[float, float]:
    """Convert a rotating-frame amplitude to ``(|X|, theta)``.

    The lab-frame motion is ``x(t) = |X| cos(omega t - theta)``.  ``omega`` is
    accepted for symmetry with the frame constructors; the conversion only
    depends on the frame's reference frequency.
    """
    beta = complex(beta)
    return 2.0 * abs(beta) * zero_point_length(cfg, frame), cmath.phase(beta)


def displacement_to_amplitude(X_mag: float, theta: float, cfg: PhysicalConfig,
                              frame: Frame, omega: float | None = None) -> complex:
    """Inverse of :func:`amplitude_to_displacement`."""
    return cmath.rect(X_mag / (2.0 * zero_point_length(cfg, frame)), theta)


def signed_to_amplitude(X: float, cfg: PhysicalConfig, frame: Frame) -> complex:
    """Real amplitude for a signed displacement ``x(t) = X cos(omega t)``."""
    return complex(X / (2.0 * zero_point_length(cfg, frame)))


def amplitude_to_signed(beta: complex, cfg: PhysicalConfig, frame: Frame) -> float:
    """Signed displacement of a real (phase 0 or pi) rotating-frame amplitude."""
    return 2.0 * complex(beta).real * zero_point_length(cfg, frame)
