import numpy as np
from hypothesis import given, strategies as st

from dlgroup import poly

coeffs = st.lists(st.integers(0, 50), max_size=40)
moduli = st.sampled_from([2, 3, 4, 5, 6, 7, 9])


@given(coeffs, coeffs, moduli)
def test_mul_matches_numpy_polymul(a, b, q):
    a, b = poly.trim(a, q), poly.trim(b, q)
    got = poly.mul(a, b, q)
    if not a or not b:
        assert got == ()
        return
    ref = np.polynomial.polynomial.polymul(np.array(a, dtype=object), np.array(b, dtype=object))
    assert got == poly.trim([int(c) for c in ref], q)


@given(coeffs, st.integers(0, 20), moduli)
def test_div_linear_remainder_is_value(a, c, q):
    a = poly.trim(a, q)
    quot, rem = poly.div_linear(a, c, q)
    assert rem == poly.evaluate(a, -c, q)
    back = poly.add(poly.mul(quot, poly.trim((c, 1), q), q), poly.trim((rem,), q), q)
    assert back == a


@given(coeffs, st.integers(0, 20), st.integers(0, 20), moduli)
def test_taylor_shift_by_evaluation(a, c, x, q):
    a = poly.trim(a, q)
    assert poly.evaluate(poly.taylor_shift(a, c, q), x, q) == poly.evaluate(a, x + c, q)


@given(coeffs, coeffs, coeffs, moduli)
def test_compose_fraction_against_direct_sum(f, num, den, q):
    f, num, den = poly.trim(f, q), poly.trim(num, q), poly.trim(den, q) or (1,)
    expected = ()
    deg = len(f) - 1
    for n, c in enumerate(f):
        term = poly.scale(poly.mul(poly.power(num, n, q), poly.power(den, deg - n, q), q), c, q)
        expected = poly.add(expected, term, q)
    assert poly.compose_fraction(f, num, den, q) == expected


@given(st.lists(st.integers(0, 30), min_size=1, max_size=10), st.integers(1, 25), st.sampled_from([2, 3, 5, 7, 9]))
def test_series_inverse(g, prec, q):
    g = list(g)
    g[0] = 1
    h = poly.series_inverse(tuple(x % q for x in g), prec, q)
    prod = poly.series_mul([x % q for x in g], h, prec, q)
    assert prod == [1] + [0] * (prec - 1)


def test_linear_power_small():
    assert poly.linear_power(1, 2, 2) == (1, 0, 1)  # (t+1)^2 = t^2 + 1 over Z_2
    assert poly.linear_power(2, 0, 5) == (1,)
