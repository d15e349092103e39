import itertools
import random
from functools import reduce
from operator import xor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yamanim.digraph_yama import (Digraph, G4Partition, aux_outcome, dyn_moves, dyn_rules,
                                  total_tokens)
from yamanim.game_core import MemoTable, Outcome, is_p_position, sg_value
from yamanim.structure_theorems import (Method, PreconditionError, classify_auto,
                                        classify_g4_even, classify_g4_odd, detect_g4, g5_is_p,
                                        g6_is_p, match_g5, match_g6, w0_expansion)
from yamanim.verification import random_g4

G5 = Digraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
TWO_CYCLE = Digraph.from_edges(2, [(0, 1), (1, 0)])


def star(n):
    return Digraph.from_edges(n + 1, [(0, k) for k in range(1, n + 1)])


def g4(n_v1, n_w1, v1_edges=()):
    edges = list(v1_edges) + [(a, n_v1 + b) for a in range(n_v1) for b in range(n_w1)]
    return Digraph.from_edges(n_v1 + n_w1, edges)


def test_detect_g4_examples():
    assert detect_g4(G5) == G4Partition((0, 1), (2, 3))
    assert detect_g4(star(4)) == G4Partition((0,), (1, 2, 3, 4))
    assert detect_g4(TWO_CYCLE) is None


def test_detect_g4_rejects_incomplete_edges():
    g = Digraph.from_edges(3, [(0, 1), (1, 2)])
    assert detect_g4(g) is None


def test_detect_g4_on_shuffled_instances():
    rng = random.Random(7)
    for _ in range(50):
        g, part = random_g4(rng, rng.randint(0, 3), rng.randint(1, 4))
        assert detect_g4(g) == part


def test_shape_matchers_ignore_labels_and_order():
    relabelled = Digraph.from_edges(4, [(3, 0), (3, 1), (3, 2), (0, 1), (0, 2)])
    assert match_g5(relabelled) == (3, 0, 1, 2)
    assert match_g5(star(3)) is None
    reversed_star = Digraph.from_edges(3, [(2, 0), (2, 1)])
    assert match_g6(reversed_star) == (2, (0, 1))
    assert match_g6(TWO_CYCLE) is None
    assert match_g6(Digraph(1, ((),))) is None


@pytest.mark.parametrize("ws, expected", [((1, 2, 3), 0), ((0, 0, 0), 0), ((5, 1, 1), 5)])
def test_g4_odd_examples(ws, expected):
    g = g4(2, 3, [(0, 1)])
    part = detect_g4(g)
    for xs in [(0, 0), (7, 2), (3, 9)]:
        assert classify_g4_odd(g, part, xs + ws) == expected


def test_g4_odd_precondition():
    g = g4(1, 2)
    with pytest.raises(PreconditionError):
        classify_g4_odd(g, detect_g4(g), (1, 1, 1))
    with pytest.raises(PreconditionError):
        classify_g4_even(g4(1, 3), detect_g4(g4(1, 3)), (1, 1, 1, 1))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 3), st.sampled_from([1, 3, 5]), st.data())
def test_g4_odd_ignores_v1_tokens(n_v1, n_w1, data):
    g = g4(n_v1, n_w1, [(a, b) for a in range(n_v1) for b in range(n_v1) if a < b])
    part = detect_g4(g)
    ys = data.draw(st.lists(st.integers(0, 20), min_size=n_w1, max_size=n_w1))
    xs1 = data.draw(st.lists(st.integers(0, 20), min_size=n_v1, max_size=n_v1))
    xs2 = data.draw(st.lists(st.integers(0, 20), min_size=n_v1, max_size=n_v1))
    assert classify_g4_odd(g, part, xs1 + ys) == classify_g4_odd(g, part, xs2 + ys)
    assert classify_g4_odd(g, part, xs1 + ys) == reduce(xor, ys, 0)


def test_g4_even_examples():
    g = star(2)
    part = detect_g4(g)
    assert aux_outcome(g, part, (0,)) is Outcome.P
    assert aux_outcome(g, part, (3,)) is Outcome.N
    assert classify_g4_even(g, part, (0, 3, 3)) is Outcome.P
    assert classify_g4_even(g, part, (3, 1, 0)) is Outcome.P
    assert classify_g4_even(g, part, (3, 0, 0)) is Outcome.N


def test_g4_even_value_classes_satisfy_conditions():
    # no P-position moves to a P-position; every N-position has a P option
    g = g4(2, 2, [(0, 1)])
    part = detect_g4(g)
    memo = MemoTable()
    for p in itertools.product(range(7), repeat=4):
        is_p = classify_g4_even(g, part, p, memo) is Outcome.P
        opts = [q for _, q in dyn_moves(g, p)]
        p_opts = [q for q in opts if classify_g4_even(g, part, q, memo) is Outcome.P]
        if is_p:
            assert not p_opts, p
        else:
            assert p_opts, p


def test_g4_odd_value_classes_satisfy_conditions():
    g = g4(2, 3, [(1, 0)])
    part = detect_g4(g)
    for p in itertools.product(range(4), range(4), range(5), range(5), range(5)):
        v = classify_g4_odd(g, part, p)
        values = {classify_g4_odd(g, part, q) for _, q in dyn_moves(g, p)}
        assert v not in values
        assert set(range(v)) <= values


@pytest.mark.parametrize("p, expected", [
    ((0, 0, 0, 0), True),
    ((4, 2, 3, 3), True),
    ((5, 0, 1, 0), True),
    ((4, 0, 0, 0), False),
    ((4, 5, 1, 0), True),
])
def test_g5_examples(p, expected):
    assert g5_is_p(*p) is expected
    assert is_p_position(dyn_rules(G5), p) is expected


@pytest.mark.parametrize("n, x, ys, expected", [
    (3, 100, (1, 2, 3), True),
    (2, 2, (5, 5), True),
    (2, 3, (0, 0), False),
    (2, 3, (1, 0), True),
    (1, 0, (0,), True),
])
def test_g6_examples(n, x, ys, expected):
    assert g6_is_p(n, x, ys) is expected
    if x < 20:
        assert is_p_position(dyn_rules(star(n)), (x,) + ys) is expected


def test_g6_arity():
    with pytest.raises(PreconditionError):
        g6_is_p(2, 1, (1,))
    with pytest.raises(PreconditionError):
        g6_is_p(0, 1, ())


def test_classify_auto_dispatch():
    res = classify_auto(TWO_CYCLE, (5, 2))
    assert res.method is Method.BRUTE_FORCE and res.outcome is Outcome.N and res.sg == 3
    assert classify_auto(star(3), (1, 1, 2, 3)).method is Method.G6_CLOSED
    res = classify_auto(G5, (4, 2, 3, 3))
    assert res.method is Method.G5_CLOSED and res.outcome is Outcome.P and res.sg is None
    res = classify_auto(g4(2, 3), (1, 1, 4, 2, 1))
    assert res.method is Method.G4_ODD and res.sg == 7
    assert classify_auto(g4(3, 2), (1, 1, 1, 2, 2)).method is Method.G4_EVEN


def test_classify_auto_agrees_with_brute_force():
    rng = random.Random(11)
    graphs = [G5, star(1), star(2), star(3), TWO_CYCLE]
    for _ in range(40):
        g, _ = random_g4(rng, rng.randint(0, 3), rng.randint(1, 4))
        graphs.append(g)
    for g in graphs:
        for _ in range(5):
            p = tuple(rng.randint(0, 6) for _ in range(g.n))
            res = classify_auto(g, p)
            sg = sg_value(dyn_rules(g), p)
            assert (res.outcome is Outcome.P) == (sg == 0), (g, p, res)
            if res.sg is not None:
                assert res.sg == sg


def test_w0_expansion_makes_w1_inert():
    g = star(2)
    part = detect_g4(g)
    p = (5, 3, 1)
    h, q = w0_expansion(g, part, p)
    fresh = total_tokens(p) + 1
    assert h.n == g.n + fresh
    assert q == (5, 0, 0) + (0,) * fresh
    for w in part.w1:
        assert h.d_out(w) == fresh > total_tokens(p)
    assert h.d_out(0) == g.d_out(0)


def test_w0_expansion_precondition():
    g = star(2)
    with pytest.raises(PreconditionError):
        w0_expansion(g, detect_g4(g), (5, 3, 1), fresh=9)


def test_w0_expansion_matches_aux_game():
    part = G4Partition((0, 1), (2, 3))
    for x in itertools.product(range(9), range(6)):
        h, q = w0_expansion(G5, part, x + (0, 0))
        assert is_p_position(dyn_rules(h), q) == (aux_outcome(G5, part, x) is Outcome.P)
    h, q = w0_expansion(G5, part, (0, 0, 0, 0))
    assert is_p_position(dyn_rules(h), q)


def test_single_merged_w0_changes_the_game():
    # one w0 shrinks the centre's out-degree from 2 to 1, so x = 2 becomes playable
    g = star(2)
    part = detect_g4(g)
    h, q = w0_expansion(g, part, (2, 0, 0), merge=True)
    assert aux_outcome(g, part, (2,)) is Outcome.P
    assert not is_p_position(dyn_rules(h), q)
