"""Pure-Python/NumPy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def fd_axis(f, axis, order, h):
    f = np.ascontiguousarray(f, dtype=np.complex128)
    if order == 0:
        return f.copy()
    g = np.moveaxis(f, axis, 0)
    out = np.zeros_like(g)
    if order == 1:
        out[1:-1] = (g[2:] - g[:-2]) * (1.0 / (2.0 * h))
    else:
        out[1:-1] = (g[2:] - 2.0 * g[1:-1] + g[:-2]) * (1.0 / (h * h))
    return np.ascontiguousarray(np.moveaxis(out, 0, axis))


def _matvec(m, v):
    return [m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3] for r in range(4)]


def rk4_linear(m, s0, dt, steps):
    m = np.asarray(m, dtype=float).tolist()
    s = [float(v) for v in s0]
    half, sixth = 0.5 * dt, dt / 6.0
    rows = [list(s)]
    for _ in range(steps):
        k1 = _matvec(m, s)
        k2 = _matvec(m, [s[r] + half * k1[r] for r in range(4)])
        k3 = _matvec(m, [s[r] + half * k2[r] for r in range(4)])
        k4 = _matvec(m, [s[r] + dt * k3[r] for r in range(4)])
        s = [s[r] + sixth * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]) for r in range(4)]
        rows.append(s)
    return np.array(rows, dtype=float)
