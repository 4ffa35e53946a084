"""The compensated arithmetic underneath the float inverse recursion.

two_sum/two_prod are error-free transformations: hi + lo must equal the
true result exactly as rationals.  The composite dd operations only need
~1e-30 relative accuracy, checked against Fraction arithmetic.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from perfectchain import _dd

finite = st.floats(min_value=-1e12, max_value=1e12,
                   allow_nan=False, allow_infinity=False)
positive = st.floats(min_value=1e-12, max_value=1e12,
                     allow_nan=False, allow_infinity=False)


def as_fraction(hi, lo=0.0):
    return Fraction(float(hi)) + Fraction(float(lo))


@given(finite, finite)
def test_two_sum_is_error_free(a, b):
    s, e = _dd.two_sum(a, b)
    assert as_fraction(s, e) == Fraction(a) + Fraction(b)


@given(finite, finite)
def test_two_prod_is_error_free(a, b):
    p, e = _dd.two_prod(a, b)
    assert as_fraction(p, e) == Fraction(a) * Fraction(b)


@given(finite, finite, finite, finite)
def test_dd_add_accuracy(ah, al_seed, bh, bl_seed):
    # build legitimate dd numbers (lo far below hi)
    al, bl = al_seed * 1e-18, bl_seed * 1e-18
    hh, ll = _dd.add(ah, al, bh, bl)
    truth = as_fraction(ah, al) + as_fraction(bh, bl)
    if truth != 0:
        err = abs(as_fraction(hh, ll) - truth) / abs(truth)
        assert err < Fraction(1, 10**28)


@given(positive, positive)
def test_dd_mul_and_div_accuracy(a, b):
    ph, pl = _dd.mul(a, 0.0, b, 0.0)
    truth = Fraction(a) * Fraction(b)
    assert abs(as_fraction(ph, pl) - truth) <= abs(truth) / 10**30
    qh, ql = _dd.div(np.float64(a), np.float64(0.0), np.float64(b), np.float64(0.0))
    truth = Fraction(a) / Fraction(b)
    assert abs(as_fraction(qh, ql) - truth) <= abs(truth) / 10**29


@given(positive)
def test_dd_sqrt_accuracy(a):
    rh, rl = _dd.sqrt(np.float64(a), np.float64(0.0))
    r = as_fraction(rh, rl)
    # compare squared to avoid exact square roots
    err = abs(r * r - Fraction(a))
    assert err <= Fraction(a) / 10**28


def test_tree_sum_matches_fraction_sum():
    rng = np.random.default_rng(8)
    for size in (1, 2, 3, 17, 64):
        hi = rng.uniform(-1, 1, size)
        lo = hi * 1e-19
        sh, sl = _dd.tree_sum(hi, lo)
        truth = sum((as_fraction(h, l) for h, l in zip(hi, lo)), Fraction(0))
        assert abs(as_fraction(sh, sl) - truth) <= abs(truth) / 10**27 + Fraction(1, 10**300)


def test_vectorized_matches_scalar():
    rng = np.random.default_rng(9)
    a = rng.uniform(-5, 5, 32)
    b = rng.uniform(0.1, 5, 32)
    hh, ll = _dd.mul(a, np.zeros(32), b, np.zeros(32))
    for i in range(32):
        sh, sl = _dd.mul(a[i], 0.0, b[i], 0.0)
        assert hh[i] == sh and ll[i] == sl
