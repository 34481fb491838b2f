import random

import pytest
from hypothesis import given, strategies as st

from dlgroup import poly
from dlgroup.errors import (BadIndex, BadL1, NonUnitDifference, NotAUnit, ParamsError,
                            ParamsMismatch, PrimeBound)
from dlgroup.params import validate_params
from dlgroup.ring import (RingElem, const, decompose, in_monomial_set, invert_unit, is_unit,
                          laurent_expand, monomial, monomial_normal_form, one, ring_eq,
                          series_to_ring, t_var, zero)
from dlgroup.textio import parse_ring_expr
from oracles import fractions_equal, sympy_add, sympy_mul, to_sympy

P = validate_params
P32 = P(3, 2, [0, 1])
P33 = P(3, 3, [0, 1])
P34 = P(3, 4, [0, 1])

CONFIGS = [P(2, 3, [0]), P32, P33, P34, P(4, 3, [0, 1, 2]), P(4, 5, [0, 1, 3]), P(3, 9, [0, 4])]


def ring_elems(params, max_deg=6, max_den=3):
    return st.builds(
        lambda num, den: RingElem.from_parts(params, num, [-m for m in den]),
        st.lists(st.integers(0, params.q - 1), max_size=max_deg + 1),
        st.lists(st.integers(0, max_den), min_size=params.rank, max_size=params.rank),
    )


config_and_elems = st.sampled_from(CONFIGS).flatmap(
    lambda p: st.tuples(st.just(p), ring_elems(p), ring_elems(p), ring_elems(p)))


# -- params -------------------------------------------------------------------------

def test_validate_params_examples():
    assert P(3, 2, [0, 1]).l == (0, 1)
    assert P(2, 5, [0]).d == 2
    with pytest.raises(PrimeBound):
        P(4, 2, [0, 1, 1])
    with pytest.raises(BadL1):
        P(3, 5, [1, 2])
    with pytest.raises(NonUnitDifference):
        P(3, 4, [0, 2])
    with pytest.raises(ParamsError):
        P(3, 5, [0])


def test_prime_bound_uses_every_prime_factor():
    with pytest.raises(PrimeBound):
        P(4, 6, [0, 1, 5])  # 2 | 6 and 4 > 3
    assert P(3, 6, [0, 1]).primes == (2, 3)


# -- arithmetic ----------------------------------------------------------------------

def test_arithmetic_examples():
    Q = parse_ring_expr(P32, "t^2*(t+1)^-1 + 1")
    assert zero(P32) + Q == Q
    inv = monomial(P32, (0, -1))
    assert inv * RingElem.from_parts(P32, (1, 1)) == one(P32)
    lhs = monomial(P32, (-1, 0)) + monomial(P32, (0, -1))
    assert lhs == monomial(P32, (-1, -1))


def test_ring_eq_examples():
    p = P(3, 5, [0, 2])
    assert ring_eq(t_var(p) * monomial(p, (-1, 0)), one(p))
    rel = const(p, p.l[1] - p.l[0]) + t_var(p) - monomial(p, (0, 1))
    assert ring_eq(rel, zero(p))


def test_monomial_action_examples():
    assert one(P32).act((1, 0)) == t_var(P32)
    assert one(P32).act((1, 1)) == RingElem.from_parts(P32, (0, 1, 1))


def test_params_mismatch():
    with pytest.raises(ParamsMismatch):
        one(P32) + one(P33)


@given(config_and_elems)
def test_ring_ops_match_sympy_fractions(data):
    params, a, b, _ = data
    q = params.q
    assert fractions_equal(to_sympy(a + b), sympy_add(to_sympy(a), to_sympy(b)), q)
    assert fractions_equal(to_sympy(a * b), sympy_mul(to_sympy(a), to_sympy(b)), q)
    assert fractions_equal(to_sympy(-a), (-to_sympy(a)[0], to_sympy(a)[1]), q)


@given(config_and_elems)
def test_reduced_form_invariants(data):
    params, a, b, _ = data
    for x in (a, b, a * b, a + b):
        assert all(0 < c < params.q for c in x.num[-1:])
        for m, l in zip(x.den, params.l):
            if m:
                assert poly.evaluate(x.num, -l, params.q) != 0
        if not x.num:
            assert not any(x.den)


@given(config_and_elems)
def test_ring_axioms(data):
    params, a, b, c = data
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == zero(params)
    assert hash(a * b) == hash(b * a)


@given(config_and_elems, st.lists(st.integers(-4, 4), min_size=3, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_monomial_action_is_an_action(data, v, w):
    params, a, _, _ = data
    v, w = tuple(v[:params.rank]), tuple(w[:params.rank])
    vw = tuple(x + y for x, y in zip(v, w))
    assert a.act(vw) == a.act(v).act(w)
    assert a.act((0,) * params.rank) == a
    assert a.act(v) == a * monomial(params, v)


# -- Laurent expansions ----------------------------------------------------------------

def test_laurent_examples():
    inv = monomial(P32, (0, -1))
    assert laurent_expand(inv, 1, 2).terms == ((0, 1), (1, 1), (2, 1))
    assert laurent_expand(const(P33, 2), 2, 3).terms == ((0, 2),)
    p = P(3, 5, [0, 2])
    # (t+2)^-1 in t^-1: t^-1 - 2 t^-2 + ...
    assert laurent_expand(monomial(p, (0, -1)), 3, 2).terms == ((1, 1), (2, 3))
    with pytest.raises(BadIndex):
        laurent_expand(inv, 4, 0)


def _multiply_back(Q, tree, series):
    """series * denominator must agree with the numerator up to the precision of the series."""
    p = Q.params
    q = p.q
    top = series.cutoff
    if tree < p.d:
        c = p.l[tree - 1]
        num_u = dict(enumerate(poly.taylor_shift(Q.num, -c, q)))
        den_u = (1,)
        for j, m in enumerate(Q.den):
            den_u = poly.mul(den_u, poly.linear_power((p.l[j] - c) % q, m, q), q)
        prod = {}
        for e, a in series.terms:
            for k, b in enumerate(den_u):
                prod[e + k] = (prod.get(e + k, 0) + a * b) % q
        for e in range(min(prod, default=0), top + 1):
            assert prod.get(e, 0) == num_u.get(e, 0) % q
    else:
        # Q * prod (1 + l_j s)^m_j = s^{M - deg} * reversed(num)
        M = sum(Q.den)
        deg = len(Q.num) - 1
        den_s = (1,)
        for j, m in enumerate(Q.den):
            den_s = poly.mul(den_s, poly.power(poly.trim((1, p.l[j]), q), m, q), q)
        prod = {}
        for e, a in series.terms:
            for k, b in enumerate(den_s):
                prod[e + k] = (prod.get(e + k, 0) + a * b) % q
        target = {M - deg + k: c for k, c in enumerate(reversed(Q.num))}
        for e in range(M - deg, top + 1):
            assert prod.get(e, 0) == target.get(e, 0) % q


@given(config_and_elems, st.integers(-3, 6))
def test_laurent_expansion_multiplies_back(data, cutoff):
    params, a, _, _ = data
    for tree in range(1, params.d + 1):
        s = laurent_expand(a, tree, cutoff)
        assert all(e <= cutoff for e, _ in s.terms)
        _multiply_back(a, tree, s)


# -- decomposition -----------------------------------------------------------------------

def test_decompose_examples():
    parts = decompose(zero(P32))
    assert all(not p.terms for p in parts)
    poly_elem = RingElem.from_parts(P32, (1, 1, 1))
    parts = decompose(poly_elem)
    assert not parts[0].terms and not parts[1].terms
    assert parts[2].as_dict() == {0: 1, -1: 1, -2: 1}
    parts = decompose(monomial(P32, (-1, -1)))
    assert parts[0].as_dict() == {-1: 1} and parts[1].as_dict() == {-1: 1} and not parts[2].terms


@given(config_and_elems)
def test_decompose_round_trip_and_uniqueness(data):
    params, a, b, _ = data
    parts = decompose(a)
    total = zero(params)
    for part in parts:
        total = total + part.to_ring(params)
    assert total == a
    assert decompose(total) == parts
    assert (a == b) == all(not p.terms for p in decompose(a - b))


@given(config_and_elems)
def test_decompose_agrees_with_laurent_negative_part(data):
    params, a, _, _ = data
    parts = decompose(a)
    for i in range(1, params.d):
        assert parts[i - 1].terms == laurent_expand(a, i, -1).terms


def test_series_to_ring_tree_d_is_polynomial_in_t():
    assert series_to_ring(P32, 3, ((-2, 1), (0, 1))) == RingElem.from_parts(P32, (1, 0, 1))


# -- units -----------------------------------------------------------------------------

def test_unit_examples():
    Q = monomial(P33, (3, -2), 2)
    assert is_unit(Q)
    assert invert_unit(Q) == monomial(P33, (-3, 2), 2)
    assert not is_unit(RingElem.from_parts(P33, (2, 1)))
    with pytest.raises(NotAUnit):
        invert_unit(RingElem.from_parts(P33, (2, 1)))
    u = RingElem.from_parts(P34, (1, 2))
    assert is_unit(u) and invert_unit(u) == u


def test_monomial_set_examples():
    assert in_monomial_set(monomial(P33, (2, -1)))
    assert not in_monomial_set(monomial(P33, (1, 0), 2))
    assert in_monomial_set(RingElem.from_parts(P32, (0, 1, 1)))
    assert not in_monomial_set(zero(P33))


@given(config_and_elems)
def test_inverse_of_units(data):
    params, a, _, _ = data
    if is_unit(a):
        assert a * invert_unit(a) == one(params)


@pytest.mark.parametrize("params", [P32, P33, P(3, 5, [0, 2]), P(4, 3, [0, 1, 2])], ids=str)
def test_prime_units_are_constant_times_monomial(params):
    rng = random.Random(1)
    for _ in range(300):
        num = [rng.randrange(params.q) for _ in range(rng.randint(0, 4))]
        Q = RingElem.from_parts(params, num, [-rng.randint(0, 2) for _ in range(params.rank)])
        assert is_unit(Q) == (monomial_normal_form(Q) is not None)


def test_composite_units_with_nilpotent_parts():
    p = P(3, 9, [0, 4])
    rng = random.Random(3)
    for _ in range(50):
        nil = RingElem.from_parts(p, [3 * rng.randrange(3) for _ in range(4)], (-1, -2))
        u = monomial(p, (rng.randint(-3, 3), rng.randint(-3, 3)), rng.choice([1, 2, 4, 5, 7, 8])) * (one(p) + nil)
        assert is_unit(u)
        assert u * invert_unit(u) == one(p)
    assert is_unit(RingElem.from_parts(p, (3, 1)))  # t(1 + 3 t^-1)
    assert not is_unit(RingElem.from_parts(p, (2, 1)))
    assert not is_unit(const(p, 3))


def test_apply_beta_matches_termwise_monomial_map():
    """Q^beta by composition equals the sum of c * 1^{beta v} over the terms of Q."""
    rng = random.Random(4)
    for params, beta in [(P32, ((-1, -1), (1, 0))), (P32, ((0, 1), (1, 0))), (P33, ((-1, -1), (0, 1))),
                         (P(4, 3, [0, 1, 2]), ((0, 0, 1), (1, 0, 0), (0, 1, 0)))]:
        r = params.rank
        for _ in range(40):
            num = [rng.randrange(params.q) for _ in range(rng.randint(0, 6))]
            den = [rng.randint(0, 3) for _ in range(r)]
            Q = RingElem.from_parts(params, num, [-m for m in den])
            expected = zero(params)
            for n, c in enumerate(Q.num):
                v = [-m for m in Q.den]
                v[0] += n
                bv = [sum(beta[i][j] * v[j] for j in range(r)) for i in range(r)]
                expected = expected + monomial(params, bv, c)
            assert Q.apply_beta(beta) == expected
