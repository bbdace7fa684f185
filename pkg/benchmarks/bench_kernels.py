"""Time the compiled RK4 kernel against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--steps N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from rwa import _rk4_py

try:
    from rwa import _rk4
except ImportError:  # extension not built
    _rk4 = None


def make_args(n_steps, steps_per_period=256, omega=0.5):
    dt = 2 * np.pi / omega / steps_per_period
    table = np.cos(omega * dt * 0.5 * np.arange(2 * steps_per_period))
    return (0.0, 0.0, 1.0, 1.0, 1.0, 0.2, 1e-3, dt, table, n_steps, 1e6)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=256 * 200)
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()

    backends = {"python": _rk4_py.rk4_drive}
    if _rk4 is not None:
        backends["cython"] = _rk4.rk4_drive
    args = make_args(opts.steps)
    timings = {}
    for name, fn in backends.items():
        best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=opts.repeat))
        timings[name] = best
        print(f"{name:>7}: {best * 1e3:9.2f} ms  ({opts.steps / best / 1e6:7.2f} Msteps/s)")
    if "cython" in timings:
        print(f"speedup: {timings['python'] / timings['cython']:.1f}x")
        a, b = _rk4_py.rk4_drive(*args), _rk4.rk4_drive(*args)
        print(f"max state diff: {max(abs(a[0] - b[0]), abs(a[1] - b[1])):.1e}")


if __name__ == "__main__":
    main()
