"""Backend selection for the RK4 hot loop.

The compiled extension is used when it has been built; otherwise the
pure-Python stepper is loaded.  Set ``RWA_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _rk4_py

if os.environ.get("RWA_PURE_PYTHON", "") not in ("", "0"):
    rk4_drive = _rk4_py.rk4_drive
    BACKEND = "python"
else:
    try:
        from ._rk4 import rk4_drive
        BACKEND = "cython"
    except ImportError:
        rk4_drive = _rk4_py.rk4_drive
        BACKEND = "python"

__all__ = ["rk4_drive", "BACKEND"]
