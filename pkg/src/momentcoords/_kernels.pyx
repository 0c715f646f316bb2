# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled LU kernels for the small dense systems assembled by this package.

The pure-Python implementation in ``smallsolve`` mirrors these routines
step for step; ``smallsolve`` picks whichever backend is available at
import time.
"""

from libc.math cimport fabs

import numpy as np


cdef int _lu_solve(double[:, ::1] a, double[::1] b, double rtol) noexcept nogil:
    """Factor ``a`` in place with partial pivoting and overwrite ``b`` with x.

    Returns -1 on success, otherwise the zero-based elimination column whose
    best available pivot fell below ``rtol * max|a|``.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k, p
    cdef double floor = 0.0
    cdef double amax, t
    for i in range(n):
        for j in range(n):
            t = fabs(a[i, j])
            if t > floor:
                floor = t
    floor *= rtol
    if floor == 0.0:
        return 0
    for k in range(n):
        p = k
        amax = fabs(a[k, k])
        for i in range(k + 1, n):
            t = fabs(a[i, k])
            if t > amax:
                amax = t
                p = i
        if amax < floor:
            return <int> k
        if p != k:
            for j in range(n):
                t = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = t
            t = b[k]
            b[k] = b[p]
            b[p] = t
        for i in range(k + 1, n):
            t = a[i, k] / a[k, k]
            if t != 0.0:
                for j in range(k + 1, n):
                    a[i, j] -= t * a[k, j]
                b[i] -= t * b[k]
    for k in range(n - 1, -1, -1):
        t = b[k]
        for j in range(k + 1, n):
            t -= a[k, j] * b[j]
        b[k] = t / a[k, k]
    return -1


def lu_solve_inplace(double[:, ::1] a, double[::1] b, double rtol):
    """Solve a @ x = b, destroying ``a`` and leaving x in ``b``.

    Returns -1 on success or the failing elimination column.
    """
    return _lu_solve(a, b, rtol)


def lu_solve_batch(double[:, :, ::1] a, double[:, ::1] b, double rtol):
    """Solve a stack of systems in place; returns per-system status codes."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t r
    status = np.empty(m, dtype=np.intc)
    cdef int[::1] st = status
    with nogil:
        for r in range(m):
            st[r] = _lu_solve(a[r], b[r], rtol)
    return status
