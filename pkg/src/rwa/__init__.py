"""Steady states of driven harmonic and Duffing oscillators.

Compares the exact (or time-domain) response with rotating-wave solutions
built on two operator bases: the bare basis at the natural frequency and the
drive basis at the drive frequency.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DegenerateCubic,
    MissingOracle,
    NumericalBlowup,
    ResonanceSingularity,
    RwaError,
    ZeroReference,
)
from .model import Frame, FrameKind, PhysicalConfig, detuning, drive_coupling

__all__ = [
    "ConfigError",
    "DegenerateCubic",
    "Frame",
    "FrameKind",
    "MissingOracle",
    "NumericalBlowup",
    "PhysicalConfig",
    "ResonanceSingularity",
    "RwaError",
    "ZeroReference",
    "detuning",
    "drive_coupling",
]
