"""Vectorized double-double (compensated) arithmetic on (hi, lo) pairs.

Branchless error-free transformations (Knuth two-sum, Dekker split product),
giving ~31 significant digits.  Used by the floating-point inverse-spectrum
recursion, whose working precision requirement grows past plain doubles
around order 50 while the emitted entries remain ordinary floats.

All functions take and return NumPy arrays (or scalars) elementwise.
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def two_prod(a, b):
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def renorm(hi, lo):
    s = hi + lo
    return s, lo - (s - hi)


def add(xh, xl, yh, yl):
    sh, se = two_sum(xh, yh)
    return renorm(sh, se + (xl + yl))


def sub(xh, xl, yh, yl):
    return add(xh, xl, -yh, -yl)


def mul(xh, xl, yh, yl):
    ph, pe = two_prod(xh, yh)
    return renorm(ph, pe + (xh * yl + xl * yh))


def div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = mul(q1, np.zeros_like(q1), yh, yl)
    rh, rl = sub(xh, xl, th, tl)
    q2 = rh / yh
    th, tl = mul(q2, np.zeros_like(q2), yh, yl)
    rh, rl = sub(rh, rl, th, tl)
    q3 = rh / yh
    hh, ll = two_sum(q1, q2)
    return renorm(hh, ll + q3)


def sqrt(xh, xl):
    r = np.sqrt(xh)
    sh, sl = two_prod(r, r)
    dh, dl = sub(xh, xl, sh, sl)
    corr = dh / (2.0 * r)
    return renorm(*two_sum(r, corr))


def tree_sum(hi, lo):
    """Reduce dd vectors to a dd scalar by pairwise folding."""
    hi = np.asarray(hi, dtype=np.float64)
    lo = np.asarray(lo, dtype=np.float64)
    while hi.size > 1:
        m = hi.size // 2
        ah, al = hi[:m], lo[:m]
        bh, bl = hi[m : 2 * m], lo[m : 2 * m]
        sh, sl = add(ah, al, bh, bl)
        if hi.size % 2:
            sh = np.concatenate([sh, hi[-1:]])
            sl = np.concatenate([sl, lo[-1:]])
        hi, lo = sh, sl
    return float(hi[0]), float(lo[0])
