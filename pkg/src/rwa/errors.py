"""Exception types raised by the solvers and the oracle."""


class RwaError(Exception):
    """Base class for all errors raised by this package."""


class ResonanceSingularity(RwaError):
    """The undamped linear response diverges at the requested frequency."""

    def __init__(self, omega, omega0):
        super().__init__(f"undamped response diverges at omega={omega!r} (omega0={omega0!r})")
        self.omega = omega
        self.omega0 = omega0


class DegenerateCubic(RwaError):
    """Steady-state condition has no solution (c3 = c1 = 0, c0 != 0)."""


class NumericalBlowup(RwaError):
    """Integrated displacement left the configured bound."""

    def __init__(self, message, omega=None, time=None):
        super().__init__(message)
        self.omega = omega
        self.time = time


class ZeroReference(RwaError):
    """Relative discrepancy requested against a zero reference amplitude."""


class MissingOracle(RwaError):
    """No oracle jump frequency is available for a requested drive amplitude."""


class ConfigError(RwaError):
    """Invalid or unknown run-configuration entry."""
