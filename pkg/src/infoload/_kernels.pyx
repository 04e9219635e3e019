# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled grid utility kernel; see _kernels_py for the reference version."""

from libc.math cimport exp, expm1, pow, INFINITY

import numpy as np

BACKEND = "cython"


def utility_grid(double[::1] grid, int s_code, double s_param,
                 int c_code, double c_scale, double c_param,
                 double gain, double loss):
    """Expected utility at every grid point for one trader."""
    cdef Py_ssize_t n = grid.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j
    cdef double i, lam, cost, arg
    cdef bint square = c_code == 1 and c_param == 2.0
    for j in range(n):
        i = grid[j]
        if s_code == 0:
            lam = -expm1(-s_param * i)
        else:
            lam = i / (i + s_param)
        if c_code == 0:
            cost = 0.0
        elif square:
            cost = c_scale * i * i
        elif c_code == 1:
            cost = c_scale * pow(i, c_param)
        else:
            arg = c_param * i
            cost = c_scale * expm1(arg) if arg < 700.0 else INFINITY
        o[j] = lam * gain - (1.0 - lam) * loss - cost
    return out
