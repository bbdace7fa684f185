# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 stepper for the driven, damped Duffing oscillator."""

from libc.math cimport fabs


cdef inline double _force(double x, double p, double k_lin, double alpha,
                          double drive, double gamma) nogil:
    return -k_lin * x - alpha * x * x * x + drive - gamma * p


def rk4_drive(double x, double p, double m, double k_lin, double alpha,
              double F0, double gamma, double dt, const double[::1] drive_table,
              Py_ssize_t n_steps, double bound,
              double[::1] xs=None, double[::1] ps=None):
    """Advance ``(x, p)`` by ``n_steps`` fixed RK4 steps starting at t = 0.

    ``drive_table[j]`` holds cos(omega * j * dt / 2) for one drive period, so
    half-step drive values are looked up instead of recomputed.  When ``xs``
    and ``ps`` are given they receive ``n_steps + 1`` samples.

    Returns ``(x, p, steps_done, blew_up)``.
    """
    cdef Py_ssize_t n_table = drive_table.shape[0]
    cdef Py_ssize_t j = 0, k = 0
    cdef double h = dt, h2 = 0.5 * dt, inv_m = 1.0 / m
    cdef double d0, d1, d2
    cdef double kx1, kp1, kx2, kp2, kx3, kp3, kx4, kp4
    cdef bint record = xs is not None
    cdef bint blew_up = False

    if record:
        if xs.shape[0] < n_steps + 1 or ps is None or ps.shape[0] < n_steps + 1:
            raise ValueError("sample buffers too short")
        xs[0] = x
        ps[0] = p

    with nogil:
        for k in range(n_steps):
            d0 = F0 * drive_table[j]
            d1 = F0 * drive_table[(j + 1) % n_table]
            d2 = F0 * drive_table[(j + 2) % n_table]

            kx1 = p * inv_m
            kp1 = _force(x, p, k_lin, alpha, d0, gamma)
            kx2 = (p + h2 * kp1) * inv_m
            kp2 = _force(x + h2 * kx1, p + h2 * kp1, k_lin, alpha, d1, gamma)
            kx3 = (p + h2 * kp2) * inv_m
            kp3 = _force(x + h2 * kx2, p + h2 * kp2, k_lin, alpha, d1, gamma)
            kx4 = (p + h * kp3) * inv_m
            kp4 = _force(x + h * kx3, p + h * kp3, k_lin, alpha, d2, gamma)

            x = x + h * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4) / 6.0
            p = p + h * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4) / 6.0
            j = (j + 2) % n_table

            if record:
                xs[k + 1] = x
                ps[k + 1] = p
            if not fabs(x) <= bound:
                blew_up = True
                k = k + 1
                break
        else:
            k = n_steps

    return x, p, k, blew_up
