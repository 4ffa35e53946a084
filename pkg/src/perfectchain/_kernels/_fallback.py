"""Pure-Python/NumPy implementations of the hot kernels.

Mirrors the signatures of the compiled module ``_native``; selection happens
in ``perfectchain._kernels``.  The Sturm and Verlet kernels vectorize with
NumPy; the QL sweep is inherently sequential and runs on Python floats.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "fallback"

_EPS = float(np.finfo(np.float64).eps)
_QL_MAX_SWEEPS = 50


def sturm_counts(diag, offdiag_sq, shifts, pivot_floor):
    """For each shift x, count eigenvalues of the tridiagonal matrix < x.

    Standard shift-stable recurrence on the leading principal minors; pivots
    smaller in magnitude than ``pivot_floor`` are replaced by -pivot_floor.
    """
    a = np.asarray(diag, dtype=np.float64)
    b2 = np.asarray(offdiag_sq, dtype=np.float64)
    x = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    d = a[0] - x
    d[np.abs(d) < pivot_floor] = -pivot_floor
    counts = (d < 0.0).astype(np.int64)
    for i in range(1, a.size):
        d = a[i] - x - b2[i - 1] / d
        d[np.abs(d) < pivot_floor] = -pivot_floor
        counts += d < 0.0
    return counts


def ql_eigenvalues(diag, offdiag):
    """All eigenvalues by implicit-shift QL; returns them sorted ascending.

    Raises RuntimeError after 50 sweeps without deflation (does not happen
    for finite symmetric input in practice).
    """
    n = len(diag)
    d = [float(v) for v in diag]
    e = [float(v) for v in offdiag] + [0.0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > _QL_MAX_SWEEPS:
                raise RuntimeError(
                    f"QL failed to deflate index {l} of order {n} "
                    f"(|e|={abs(e[l]):.3e})"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
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
    out = np.array(d, dtype=np.float64)
    out.sort()
    return out


def verlet_steps(masses, springs, u, v, dt, n_steps):
    """Advance the free-ended chain ODE M u'' = -K u by velocity Verlet.

    ``u``/``v`` are physical displacements/velocities; modified in place and
    returned.  Spring i couples sites i and i+1.
    """
    m = np.asarray(masses, dtype=np.float64)
    k = np.asarray(springs, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    n = m.size
    half_dt = 0.5 * dt
    ext = np.empty(n - 1) if n > 1 else np.empty(0)
    force = np.empty_like(ext)
    acc = np.empty(n)

    def accelerations():
        if n == 1:
            acc[0] = 0.0
            return
        np.subtract(u[1:], u[:-1], out=ext)
        np.multiply(k, ext, out=force)
        acc[0] = force[0]
        acc[1:-1] = force[1:] - force[:-1]
        acc[-1] = -force[-1]
        np.divide(acc, m, out=acc)

    accelerations()
    for _ in range(int(n_steps)):
        v += half_dt * acc
        u += dt * v
        accelerations()
        v += half_dt * acc
    return u, v
