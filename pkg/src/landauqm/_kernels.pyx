# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: central-difference stencils and linear RK4 stepping.

Must stay numerically identical to ``_kernels_py`` (same operation order).
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def fd_axis(double complex[:, ::1] f, int axis, int order, double h):
    """Second-order central difference along ``axis``; boundary nodes set to 0."""
    cdef Py_ssize_t nx = f.shape[0], ny = f.shape[1], i, j
    out_arr = np.zeros((nx, ny), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double inv2h = 1.0 / (2.0 * h)
    cdef double invh2 = 1.0 / (h * h)
    if order == 0:
        out[:, :] = f
        return out_arr
    if axis == 0:
        for i in range(1, nx - 1):
            for j in range(ny):
                if order == 1:
                    out[i, j] = (f[i + 1, j] - f[i - 1, j]) * inv2h
                else:
                    out[i, j] = (f[i + 1, j] - 2.0 * f[i, j] + f[i - 1, j]) * invh2
    else:
        for i in range(nx):
            for j in range(1, ny - 1):
                if order == 1:
                    out[i, j] = (f[i, j + 1] - f[i, j - 1]) * inv2h
                else:
                    out[i, j] = (f[i, j + 1] - 2.0 * f[i, j] + f[i, j - 1]) * invh2
    return out_arr


cdef inline void _matvec(double[:, ::1] m, double* v, double* out) nogil:
    cdef int r
    for r in range(4):
        out[r] = m[r, 0] * v[0] + m[r, 1] * v[1] + m[r, 2] * v[2] + m[r, 3] * v[3]


def rk4_linear(double[:, ::1] m, double[::1] s0, double dt, Py_ssize_t steps):
    """Classical RK4 for ds/dt = m @ s; returns the (steps + 1, 4) trajectory."""
    out_arr = np.empty((steps + 1, 4), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double s[4]
    cdef double tmp[4]
    cdef double k1[4]
    cdef double k2[4]
    cdef double k3[4]
    cdef double k4[4]
    cdef Py_ssize_t n
    cdef int r
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    for r in range(4):
        s[r] = s0[r]
        out[0, r] = s[r]
    with nogil:
        for n in range(1, steps + 1):
            _matvec(m, s, k1)
            for r in range(4):
                tmp[r] = s[r] + half * k1[r]
            _matvec(m, tmp, k2)
            for r in range(4):
                tmp[r] = s[r] + half * k2[r]
            _matvec(m, tmp, k3)
            for r in range(4):
                tmp[r] = s[r] + dt * k3[r]
            _matvec(m, tmp, k4)
            for r in range(4):
                s[r] = s[r] + sixth * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r])
                out[n, r] = s[r]
    return out_arr
