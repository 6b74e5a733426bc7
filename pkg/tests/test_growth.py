import math
from fractions import Fraction

from hypothesis import given, settings
import hypothesis.strategies as st

from cangrow.growth import (EXPONENTIAL, FINITE, POLYNOMIAL, TruncatedSeries, analyze,
                            curvature_estimate, deviation_from_betti, fit_recurrence,
                            largest_real_root, strictly_increasing_from)

series = st.lists(st.integers(0, 50), min_size=1, max_size=10).map(TruncatedSeries)


@given(series, series, series)
def test_series_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(series, series)
def test_series_product_commutative(a, b):
    assert a * b == b * a


@given(series)
def test_series_unit(a):
    assert a * TruncatedSeries.unit(len(a)) == a


def generate(coeffs, init, n):
    b = list(init)
    while len(b) < n:
        b.append(sum(a * b[-j - 1] for j, a in enumerate(coeffs)))
    return b


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-2, 3), min_size=1, max_size=3),
       st.lists(st.integers(1, 9), min_size=3, max_size=3))
def test_fit_recovers_a_valid_recurrence(coeffs, init):
    b = generate(coeffs, init[:len(coeffs)], 12)
    rec = fit_recurrence(b)
    assert rec is not None
    assert rec.order <= len(coeffs)
    assert rec.predicts(b)


def test_bernoulli_style_sequences_have_no_short_recurrence():
    assert fit_recurrence([1, 2, 3, 5, 7, 11, 13, 17, 19, 23]) is None


def test_doubling_is_exactly_two():
    rep = analyze([2] + [3 * 2 ** (i - 1) for i in range(1, 11)])
    assert rep.classification == EXPONENTIAL
    assert rep.curvature_low == rep.curvature_high == 2
    assert [int(a) for a in rep.recurrence.coeffs] == [2]


def test_golden_ratio_isolated():
    fib = generate([1, 1], [1, 1], 14)
    rep = analyze(fib)
    phi = (1 + math.sqrt(5)) / 2
    assert rep.curvature_low <= Fraction(phi) <= rep.curvature_high
    assert rep.curvature_high - rep.curvature_low <= Fraction(1, 10 ** 9)


def test_polynomial_and_finite():
    assert analyze([1, 2, 3, 4, 5, 6, 7, 8, 9]).classification == POLYNOMIAL
    assert analyze([1, 1, 1, 1, 1, 1, 1, 1]).classification == POLYNOMIAL
    assert analyze([3, 2, 0, 0, 0]).classification == FINITE


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_largest_root_brackets_integer_roots(roots):
    # (x - r1)(x - r2)... with integer roots: the snap must land exactly
    poly = [Fraction(1)]
    for r in roots:
        poly = [a - r * b for a, b in zip(poly + [0], [0] + poly)]
    iv = largest_real_root(poly)
    assert iv.exact and iv.low == max(roots)


@given(st.lists(st.integers(1, 100), min_size=2, max_size=12))
def test_strictly_increasing_from_is_a_suffix(b):
    i = strictly_increasing_from(b)
    if i is None:
        assert b[-2] >= b[-1]
    else:
        assert all(u < v for u, v in zip(b[i:], b[i + 1:]))
        assert i == 0 or b[i - 1] >= b[i]


def test_deviation_free_omega_is_zero():
    d = deviation_from_betti([1, 0, 0, 0, 0], None)
    assert d.low == d.high == 0


def test_deviation_equal_curvatures():
    b = [2] + [3 * 2 ** (i - 1) for i in range(1, 9)]
    k = [1, 3, 6, 12, 24, 48, 96, 192, 384]
    d = deviation_from_betti(b, k)
    assert d.low == d.high == 1


def test_window_bounds_note():
    b = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23]
    rep = curvature_estimate(b)
    assert rep.recurrence is None
    assert rep.notes and rep.curvature_low <= rep.curvature_high
