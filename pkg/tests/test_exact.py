from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfectchain.exact import binomial, exact_isqrt, normalize_to_coprime_integers


def pascal_triangle(rows):
    """Independent additive oracle for binomial coefficients."""
    tri = [[1]]
    for _ in range(rows):
        prev = tri[-1]
        tri.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return tri


class TestBinomial:
    def test_small_values(self):
        assert binomial(4, 2) == 6
        assert binomial(0, 0) == 1
        assert binomial(18, 9) == 48620

    def test_out_of_range_is_zero(self):
        assert binomial(5, -1) == 0
        assert binomial(5, 6) == 0

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)

    def test_against_pascal_oracle(self):
        tri = pascal_triangle(60)
        for n in range(61):
            for k in range(n + 1):
                assert binomial(n, k) == tri[n][k]

    @given(st.integers(1, 60), st.integers(-2, 62))
    def test_pascal_identity(self, n, k):
        assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


class TestExactIsqrt:
    def test_examples(self):
        assert exact_isqrt(36) == 6
        assert exact_isqrt(6) is None  # b_1^2 for n=3 is 6: not a square
        assert exact_isqrt(0) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            exact_isqrt(-4)

    @settings(max_examples=200)
    @given(st.integers(0, 2**512))
    def test_roundtrip_on_squares(self, r):
        assert exact_isqrt(r * r) == r

    @given(st.integers(2, 2**128))
    def test_between_squares_is_none(self, r):
        assert exact_isqrt(r * r + 1) is None
        assert exact_isqrt(r * r + 2 * r) is None


class TestNormalize:
    def test_table_mass_column(self):
        ints, scale = normalize_to_coprime_integers([Fraction(1), Fraction(2, 3), Fraction(1)])
        assert ints == [3, 2, 3]
        assert scale == 3

    def test_single_element(self):
        ints, scale = normalize_to_coprime_integers([Fraction(5)])
        assert ints == [1]
        assert scale == Fraction(1, 5)

    def test_spring_column(self):
        ints, scale = normalize_to_coprime_integers(
            [Fraction(4), Fraction(36, 7), Fraction(36, 7), Fraction(4)]
        )
        assert ints == [7, 9, 9, 7]
        assert scale == Fraction(7, 4)

    @given(st.lists(st.integers(1, 10**6), min_size=1, max_size=8))
    def test_idempotent_on_coprime_integers(self, values):
        ints, scale = normalize_to_coprime_integers(values)
        again, scale2 = normalize_to_coprime_integers(ints)
        assert again == ints
        assert scale2 == 1
        # the defining relation: ints[i] == scale * values[i]
        assert all(Fraction(i) == scale * v for i, v in zip(ints, values))

    def test_errors(self):
        with pytest.raises(ValueError):
            normalize_to_coprime_integers([])
        with pytest.raises(ValueError):
            normalize_to_coprime_integers([Fraction(1), Fraction(-2)])
