import math

import pytest
from hypothesis import given, strategies as st

from stirling2adic import exact
from stirling2adic.exact import (
    INF,
    DivisibilityViolation,
    InvalidPrime,
    StirlingRowPair,
    bell_numbers,
    falling_factorial_coeffs,
    inversion_check,
    stirling1_signed,
    stirling2,
    stirling2_column,
    stirling2_explicit,
    stirling2_series,
    vp,
)

from oracles import falling_factorial_poly, partition_counts, series_inverse_product, stirling2_rational


def test_stirling2_trivial():
    assert stirling2(5, 5) == 1
    assert stirling2(0, 0) == 1
    for n in range(1, 30):
        assert stirling2(n, 1) == 1
        assert stirling2(n, 0) == 0
        assert stirling2(n, n + 3) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_stirling2_matches_partition_enumeration(n):
    counts = partition_counts(n)
    for k in range(0, n + 1):
        assert stirling2(n, k) == counts.get(k, 0)
    assert stirling2(4, 2) == 7


def test_stirling2_28_5_valuation():
    assert vp(stirling2(28, 5), 2) == 6


def test_explicit():
    assert stirling2_explicit(5, 5) == 1
    assert stirling2_explicit(6, 5) == partition_counts(6)[5] == 15
    assert stirling2_explicit(10, 6) == stirling2(10, 6)


def test_explicit_bad_range():
    with pytest.raises(ValueError):
        stirling2_explicit(3, 4)
    with pytest.raises(ValueError):
        stirling2_explicit(3, 0)


def test_explicit_divisibility_assertion(monkeypatch):
    monkeypatch.setattr(exact, "_factorial", lambda k: math.factorial(k) * 7 + 1)
    with pytest.raises(DivisibilityViolation):
        stirling2_explicit(10, 4)


def test_series():
    assert stirling2_series(1, 4) == [1, 1, 1, 1]
    assert stirling2_series(2, 4) == [1, 3, 7]
    assert series_inverse_product(2, 2) == [1, 3, 7]
    assert vp(stirling2_series(5, 28)[-1], 2) == 6
    assert stirling2_series(3, 2) == []


def test_series_against_product_oracle():
    for k in range(1, 7):
        oracle = series_inverse_product(k, 20)
        # x^k / prod(1 - jx): coefficient of x^n is oracle[n - k]
        assert stirling2_series(k, 20 + k) == oracle


def test_three_way_agreement():
    for n in range(0, 61):
        for k in range(1, n + 1):
            a = stirling2(n, k)
            assert a == stirling2_explicit(n, k)
            assert a == stirling2_series(k, n)[n - k]


def test_rational_oracle_spot_checks():
    for n, k in [(40, 7), (60, 13), (33, 33), (50, 2)]:
        assert stirling2(n, k) == stirling2_rational(n, k)


def test_recurrence_rowwise():
    stream = StirlingRowPair(40)
    for _ in range(40):
        stream.advance()
        prev, row = stream.row_prev, stream.row_n
        n = stream.n
        assert row[0] == 0
        assert row[n] == 1
        for k in range(1, 41):
            assert row[k] == prev[k - 1] + k * prev[k]


def test_row_stream_cannot_rewind():
    stream = StirlingRowPair(5)
    stream.advance_to(10)
    with pytest.raises(ValueError):
        stream.advance_to(8)
    assert stream.row_prev == tuple(stirling2(9, k) for k in range(6))


def test_column_matches_pointwise():
    col = stirling2_column(5, 40)
    assert col == [stirling2(n, 5) for n in range(41)]


def test_row_sums_are_bell_numbers():
    bell = bell_numbers(25)
    for n in range(26):
        assert sum(stirling2(n, k) for k in range(n + 1)) == bell[n]


def test_stirling1_examples():
    assert stirling1_signed(3, 3) == 1
    assert stirling1_signed(3, 2) == -3
    assert stirling1_signed(3, 1) == 2
    assert stirling1_signed(0, 0) == 1
    assert stirling1_signed(4, 0) == 0


def test_stirling1_is_falling_factorial_coefficient():
    for n in range(0, 13):
        oracle = falling_factorial_poly(n)
        assert falling_factorial_coeffs(n) == oracle
        assert [stirling1_signed(n, k) for k in range(n + 1)] == oracle


@pytest.mark.parametrize("max_n", [1, 10, 25])
def test_inversion(max_n):
    assert inversion_check(max_n)


def test_vp_examples():
    assert vp(24, 2) == 3
    assert vp(0, 2) == INF
    assert vp(-40, 2) == 3
    assert vp(250, 5) == 3
    assert vp(stirling2(156, 5), 2) == 11
    with pytest.raises(InvalidPrime):
        vp(10, 1)


def test_valuation_ordering():
    assert all(v < INF for v in range(1000))


nonzero = st.integers(min_value=-(10**40), max_value=10**40).filter(bool)


@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7]))
def test_vp_is_additive(a, b, p):
    assert vp(a * b, p) == vp(a, p) + vp(b, p)


@given(st.integers(min_value=1, max_value=2**200), st.sampled_from([2, 3, 5]))
def test_vp_divides(x, p):
    e = vp(x, p)
    assert x % p**e == 0
    assert x % p ** (e + 1) != 0
