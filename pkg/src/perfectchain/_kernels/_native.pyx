# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Sturm counts, implicit-shift QL, velocity Verlet.

Same contracts as ``perfectchain._kernels._fallback``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, hypot, copysign

cnp.import_array()

BACKEND = "native"

cdef double _EPS = 2.220446049250313e-16
cdef int _QL_MAX_SWEEPS = 50


def sturm_counts(diag, offdiag_sq, shifts, double pivot_floor):
    """For each shift x, count eigenvalues of the tridiagonal matrix < x."""
    cdef const double[::1] a = np.ascontiguousarray(diag, dtype=np.float64)
    cdef const double[::1] b2 = np.ascontiguousarray(offdiag_sq, dtype=np.float64)
    cdef const double[::1] x = np.ascontiguousarray(
        np.atleast_1d(np.asarray(shifts, dtype=np.float64)))
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t nx = x.shape[0]
    out = np.zeros(nx, dtype=np.int64)
    cdef long long[::1] counts = out
    cdef Py_ssize_t i, j
    cdef double d
    cdef double xj
    cdef long long cnt
    for j in range(nx):
        xj = x[j]
        cnt = 0
        d = a[0] - xj
        if fabs(d) < pivot_floor:
            d = -pivot_floor
        if d < 0.0:
            cnt += 1
        for i in range(1, n):
            d = a[i] - xj - b2[i - 1] / d
            if fabs(d) < pivot_floor:
                d = -pivot_floor
            if d < 0.0:
                cnt += 1
        counts[j] = cnt
    return out


def ql_eigenvalues(diag, offdiag):
    """All eigenvalues by implicit-shift QL, sorted ascending."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dd_arr = np.array(diag, dtype=np.float64)
    cdef Py_ssize_t n = dd_arr.shape[0]
    e_arr = np.zeros(n, dtype=np.float64)
    if n > 1:
        e_arr[: n - 1] = np.asarray(offdiag, dtype=np.float64)
    cdef double[::1] d = dd_arr
    cdef double[::1] e = e_arr
    cdef Py_ssize_t l, m, i
    cdef int sweeps
    cdef double g, r, s, c, p, f, bb, dd
    cdef bint underflow
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > _QL_MAX_SWEEPS:
                raise RuntimeError(
                    "QL failed to deflate index %d of order %d (|e|=%.3e)"
                    % (l, n, fabs(e[l])))
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                bb = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    dd_arr.sort()
    return dd_arr


def verlet_steps(masses, springs, u, v, double dt, long long n_steps):
    """Advance the free-ended chain by velocity Verlet; updates u, v in place."""
    cdef const double[::1] m = np.ascontiguousarray(masses, dtype=np.float64)
    u_arr = np.asarray(u, dtype=np.float64)
    v_arr = np.asarray(v, dtype=np.float64)
    cdef double[::1] uu = u_arr
    cdef double[::1] vv = v_arr
    cdef Py_ssize_t n = m.shape[0]
    cdef const double[::1] k
    if n > 1:
        k = np.ascontiguousarray(springs, dtype=np.float64)
    else:
        k = np.empty(0, dtype=np.float64)
    acc_arr = np.zeros(n, dtype=np.float64)
    force_arr = np.zeros(n - 1 if n > 1 else 0, dtype=np.float64)
    cdef double[::1] acc = acc_arr
    cdef double[::1] force = force_arr
    cdef double half_dt = 0.5 * dt
    cdef Py_ssize_t i
    cdef long long step

    _accelerations(m, k, uu, acc, force, n)
    for step in range(n_steps):
        for i in range(n):
            vv[i] += half_dt * acc[i]
            uu[i] += dt * vv[i]
        _accelerations(m, k, uu, acc, force, n)
        for i in range(n):
            vv[i] += half_dt * acc[i]
    return u_arr, v_arr


cdef void _accelerations(const double[::1] m, const double[::1] k, const double[::1] u,
                         double[::1] acc, double[::1] force,
                         Py_ssize_t n) nogil:
    cdef Py_ssize_t i
    if n == 1:
        acc[0] = 0.0
        return
    for i in range(n - 1):
        force[i] = k[i] * (u[i + 1] - u[i])
    acc[0] = force[0] / m[0]
    for i in range(1, n - 1):
        acc[i] = (force[i] - force[i - 1]) / m[i]
    acc[n - 1] = -force[n - 2] / m[n - 1]
