"""Exact integer and rational helpers for the exact-arithmetic code paths.

Python ints are already arbitrary precision and ``fractions.Fraction`` is an
always-reduced rational with positive denominator, so these wrappers only add
the conventions the rest of the package relies on (out-of-range binomials are
zero, square detection instead of floor behaviour, coprime rescaling).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer; zero whenever k < 0 or k > n."""
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def exact_isqrt(value: int) -> int | None:
    """Return r with r*r == value, or None if value is not a perfect square."""
    if value < 0:
        raise ValueError("exact_isqrt requires a nonnegative integer")
    root = math.isqrt(value)
    return root if root * root == value else None


def normalize_to_coprime_integers(
    seq: Sequence[Fraction | int],
) -> tuple[list[int], Fraction]:
    """Rescale positive rationals to coprime positive integers.

    Returns ``(integers, scale)`` with ``integers[i] == scale * seq[i]`` and
    ``gcd(*integers) == 1``.  Idempotent on already-coprime integer input
    (scale 1).
    """
    values = [Fraction(x) for x in seq]
    if not values:
        raise ValueError("cannot normalize an empty sequence")
    if any(v <= 0 for v in values):
        raise ValueError("all entries must be positive")
    common = math.lcm(*(v.denominator for v in values))
    scaled = [int(v * common) for v in values]
    g = math.gcd(*scaled)
    return [s // g for s in scaled], Fraction(common, g)


def as_fractions(seq: Iterable) -> list[Fraction]:
    """Coerce a sequence of ints/Fractions/strings like '2/45' to Fractions."""
    return [Fraction(x) for x in seq]
