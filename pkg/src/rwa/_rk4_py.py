"""Pure-Python RK4 stepper, used when the compiled extension is unavailable.

Mirrors ``rwa._rk4.rk4_drive`` exactly, including the drive lookup table.
"""


def rk4_drive(x, p, m, k_lin, alpha, F0, gamma, dt, drive_table, n_steps, bound,
              xs=None, ps=None):
    n_table = len(drive_table)
    table = [float(c) for c in drive_table]
    h = dt
    h2 = 0.5 * dt
    inv_m = 1.0 / m
    x = float(x)
    p = float(p)
    record = xs is not None
    if record:
        if len(xs) < n_steps + 1 or ps is None or len(ps) < n_steps + 1:
            raise ValueError("sample buffers too short")
        xs[0] = x
        ps[0] = p

    def force(x, p, drive):
        return -k_lin * x - alpha * x * x * x + drive - gamma * p

    j = 0
    for k in range(n_steps):
        d0 = F0 * table[j]
        d1 = F0 * table[(j + 1) % n_table]
        d2 = F0 * table[(j + 2) % n_table]

        kx1 = p * inv_m
        kp1 = force(x, p, d0)
        kx2 = (p + h2 * kp1) * inv_m
        kp2 = force(x + h2 * kx1, p + h2 * kp1, d1)
        kx3 = (p + h2 * kp2) * inv_m
        kp3 = force(x + h2 * kx2, p + h2 * kp2, d1)
        kx4 = (p + h * kp3) * inv_m
        kp4 = force(x + h * kx3, p + h * kp3, d2)

        x = x + h * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4) / 6.0
        p = p + h * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4) / 6.0
        j = (j + 2) % n_table

        if record:
            xs[k + 1] = x
            ps[k + 1] = p
        if not abs(x) <= bound:
            return x, p, k + 1, True

    return x, p, n_steps, False
