import random

import pytest

from dlgroup.errors import ResourceLimit
from dlgroup.graph import (CayleyGraph, act_on_label, adjacent, ball, label_injectivity,
                           labels_adjacent, sphere_sizes, vertex_label)
from dlgroup.group import GroupElement, generating_set, identity
from dlgroup.params import validate_params
from dlgroup.ring import monomial, zero
from dlgroup.sampling import random_element
from oracles import Wreath, wreath_generator

P = validate_params
P32 = P(3, 2, [0, 1])


def test_label_examples():
    lab = vertex_label(identity(P32))
    assert lab.ks == (0, 0, 0) and all(not t for t in lab.truncations)
    lab = vertex_label(GroupElement((1, 0), zero(P32)))
    assert lab.ks == (1, 0, -1) and all(not t for t in lab.truncations)
    lab = vertex_label(GroupElement((0, 0), monomial(P32, (-1, 0))))
    assert lab.truncations == (((-1, 1),), (), ())


def test_heights_sum_to_zero_and_sign_convention():
    rng = random.Random(0)
    for _ in range(30):
        g = random_element(P32, rng)
        lab = vertex_label(g)
        assert sum(lab.heights) == 0
        assert lab.heights[:-1] == tuple(-k for k in g.x)


@pytest.mark.parametrize("params", [P32, P(3, 3, [0, 1]), P(4, 3, [0, 1, 2]), P(2, 3, [0])], ids=str)
def test_action_formula_on_labels(params):
    rng = random.Random(1)
    for _ in range(40):
        g, h = random_element(params, rng), random_element(params, rng)
        assert act_on_label(h, vertex_label(g)) == vertex_label(h * g)


@pytest.mark.parametrize("params", [P32, P(4, 3, [0, 1, 2]), P(3, 4, [0, 1])], ids=str)
def test_generator_steps_change_two_heights(params):
    rng = random.Random(2)
    gens = [el for _, el in generating_set(params)]
    for _ in range(20):
        g = random_element(params, rng)
        lg = vertex_label(g)
        for s in gens:
            lh = vertex_label(g * s)
            assert sorted(b - a for a, b in zip(lg.heights, lh.heights) if a != b) == [-1, 1]
            assert labels_adjacent(lg, lh)


def test_adjacency_examples():
    g = random_element(P32, random.Random(3))
    assert not adjacent(g, g)
    for _, s in generating_set(P32):
        assert adjacent(identity(P32), s)
    # two A-steps in the same tree move the height by two: never adjacent
    a = [el for gen, el in generating_set(P32) if gen.kind == "A" and gen.i == 1 and gen.sign == 1]
    for s1 in a:
        for s2 in a:
            assert not adjacent(identity(P32), s1 * s2)


def test_label_and_group_adjacency_agree():
    rng = random.Random(4)
    graph = CayleyGraph(P32)
    near = graph.ball(2)
    for _ in range(300):
        g, h = rng.choice(near), rng.choice(near)
        assert graph.adjacent(g, h) == labels_adjacent(vertex_label(g), vertex_label(h))


def test_sphere_sizes_small():
    assert sphere_sizes(P32, 0) == [1]
    assert sphere_sizes(P32, 1) == [1, 12]
    assert sphere_sizes(P(2, 3, [0]), 1) == [1, 6]


def _wreath_sphere_sizes(q, radius):
    gens = []
    for b in range(q):
        base = Wreath(q, {0: b}, 1)
        gens += [base, base.inverse()]
    start = Wreath(q)
    seen = {start.key()}
    layer = [start]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for g in layer:
            for s in gens:
                h = g * s
                if h.key() not in seen:
                    seen.add(h.key())
                    nxt.append(h)
        sizes.append(len(nxt))
        layer = nxt
    return sizes


@pytest.mark.parametrize("q", [2, 3])
def test_lamplighter_sphere_sizes_match_wreath(q):
    assert sphere_sizes(P(2, q, [0]), 4) == _wreath_sphere_sizes(q, 4)


def _label_sphere_sizes(params, radius):
    """BFS on vertex labels only, using the action formula for each generator."""
    gens = [el for _, el in generating_set(params)]
    start = vertex_label(identity(params))
    # products of n generators form the same set whether built by left or right steps
    seen = {start}
    layer = [start]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for lab in layer:
            for s in gens:
                new = act_on_label(s, lab)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        sizes.append(len(nxt))
        layer = nxt
    return sizes


def test_sphere_sizes_via_labels_agree():
    assert sphere_sizes(P32, 3) == _label_sphere_sizes(P32, 3)
    assert sphere_sizes(P(3, 3, [0, 1]), 2) == _label_sphere_sizes(P(3, 3, [0, 1]), 2)


def test_ball_cap():
    with pytest.raises(ResourceLimit):
        ball(P32, 3, cap=50)


def test_injectivity_reports():
    assert label_injectivity(P32, 0).elements == 1
    report = label_injectivity(P(4, 3, [0, 1, 2]), 2)
    assert report.elements == report.labels
