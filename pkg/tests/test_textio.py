import random

import pytest
from hypothesis import given, strategies as st

from dlgroup.aut import enumerate_phi
from dlgroup.errors import ExprSyntaxError, UnknownVariable
from dlgroup.lampstand import to_lamp_config
from dlgroup.params import validate_params
from dlgroup.ring import RingElem, monomial, zero
from dlgroup.sampling import random_autrep, random_element, random_ring_elem
from dlgroup.textio import (format_autrep, format_decomposition, format_element, format_lamp_config,
                            format_matrix, format_ring, parse_autrep, parse_element, parse_lamp_config,
                            parse_matrix, parse_ring_expr, parse_vector, parse_word)

P = validate_params
P33 = P(3, 3, [0, 1])
CONFIGS = [P(2, 3, [0]), P(3, 2, [0, 1]), P33, P(3, 4, [0, 1]), P(4, 5, [0, 1, 3])]


def test_parse_example():
    Q = parse_ring_expr(P33, "2*t^3*(t+1)^-2")
    assert Q == RingElem.from_parts(P33, (0, 0, 0, 2), (0, -2))
    assert format_ring(Q) == "(t+1)^-2 + 2 + 2*t"
    assert format_decomposition(Q) == "P1: 0 ; P2: (t+1)^-2 ; Pd: 2 + 2*t"


def test_parse_variants():
    assert parse_ring_expr(P33, "0") == zero(P33)
    assert parse_ring_expr(P33, "-t") == monomial(P33, (1, 0), 2)
    assert parse_ring_expr(P33, "(t-2)^-1") == monomial(P33, (0, -1))
    assert parse_ring_expr(P33, " t ^ 2 + 4 ") == parse_ring_expr(P33, "t^2+1")


@pytest.mark.parametrize("text,pos", [("t+*2", 2), ("(t+1", 4), ("t^", 2), ("2 2", 2), ("", 0)])
def test_syntax_errors_report_positions(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_ring_expr(P33, text)
    assert info.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_ring_expr(P33, "(t+2)^-1")
    assert parse_ring_expr(P33, "(t+2)^2") == RingElem.from_parts(P33, (1, 1, 1))


@given(st.sampled_from(CONFIGS), st.randoms(use_true_random=False))
def test_ring_round_trip(params, rng):
    Q = random_ring_elem(params, rng)
    assert parse_ring_expr(params, format_ring(Q)) == Q


@given(st.sampled_from(CONFIGS), st.randoms(use_true_random=False))
def test_element_and_lamp_round_trip(params, rng):
    g = random_element(params, rng)
    assert parse_element(params, format_element(g)) == g
    cfg = to_lamp_config(g)
    assert parse_lamp_config(params, format_lamp_config(cfg)) == cfg


def test_vector_and_matrix_parsing():
    assert parse_vector("[1, -2]", 2) == (1, -2)
    with pytest.raises(ExprSyntaxError):
        parse_vector("[1,2,3]", 2)
    beta = ((0, 1), (-1, -1))
    assert parse_matrix(format_matrix(beta), 2) == beta
    for bad in ("[[1,0],[0]]", "[[1,0]", "[[1,0],[0,1]]x"):
        with pytest.raises(ExprSyntaxError):
            parse_matrix(bad)


def test_word_parsing():
    p = P(3, 2, [0, 1])
    word = parse_word(p, "A(1,1,+1) B(1,2,0) A(2,0,-1)")
    assert [str(g) for g in word] == ["A(1,1,+1)", "B(1,2,0)", "A(2,0,-1)"]
    with pytest.raises(ExprSyntaxError):
        parse_word(p, "C(1,1,1)")


def test_autrep_round_trip():
    rng = random.Random(0)
    for params in (P(3, 2, [0, 1]), P33, P(2, 5, [0])):
        phis = enumerate_phi(params, 1).matrices
        for _ in range(10):
            phi = random_autrep(params, rng, phis)
            back = parse_autrep(params, format_autrep(phi))
            assert back.beta == phi.beta and back.R == phi.R and back.delta.values == phi.delta.values
