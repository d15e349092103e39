import itertools
from functools import reduce
from operator import xor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yamanim.digraph_yama import (Digraph, G4Partition, GraphError, Move, aux_outcome,
                                  aux_rules, check_position, dyn_best_move, dyn_moves,
                                  dyn_rules, total_tokens, validate_graph)
from yamanim.game_core import MemoTable, Outcome, sg_value

TWO_CYCLE = Digraph.from_edges(2, [(0, 1), (1, 0)])
G5 = Digraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
G5_PART = G4Partition((0, 1), (2, 3))


def star(n):
    return Digraph.from_edges(n + 1, [(0, k) for k in range(1, n + 1)])


def test_validate_accepts_two_cycle():
    assert validate_graph(TWO_CYCLE) == []


def test_validate_reports_self_loop():
    problems = validate_graph(Digraph.from_edges(2, [(0, 0)]))
    assert len(problems) == 1 and "self-loop" in problems[0]


def test_validate_reports_parallel_edge():
    problems = validate_graph(Digraph.from_edges(2, [(0, 1), (0, 1)]))
    assert len(problems) == 1 and "parallel" in problems[0]


def test_validate_reports_every_problem():
    g = Digraph(2, ((0, 1, 1, 5), ()))
    problems = validate_graph(g)
    assert len(problems) == 3


def test_rules_reject_invalid_graph():
    with pytest.raises(GraphError):
        dyn_rules(Digraph.from_edges(1, [(0, 0)]))


def test_check_position():
    assert check_position(TWO_CYCLE, [1, 2]) == (1, 2)
    with pytest.raises(GraphError):
        check_position(TWO_CYCLE, [1])
    with pytest.raises(GraphError):
        check_position(TWO_CYCLE, [1, -1])


def test_moves_examples():
    assert [q for _, q in dyn_moves(TWO_CYCLE, (3, 0))] == [(1, 1), (0, 1)]
    assert [q for _, q in dyn_moves(Digraph(1, ((),)), (3,))] == [(2,), (1,), (0,)]
    fork = Digraph.from_edges(3, [(0, 1), (0, 2)])
    assert dyn_moves(fork, (2, 0, 0)) == []


def test_move_records():
    moves = dyn_moves(TWO_CYCLE, (4, 0))
    assert [m for m, _ in moves] == [Move(0, 2), Move(0, 3), Move(0, 4)]


def naive_options(g, p):
    """Literal set-builder: every vector in a bounding box meeting the move conditions."""
    n = g.n
    out = set()
    box = [range(t + 2) for t in p]
    for q in itertools.product(*box):
        for i in range(n):
            if not 0 <= q[i] < p[i] - g.d_out(i):
                continue
            ok = all(q[j] == p[j] + 1 for j in g.out_adj[i])
            ok = ok and all(q[k] == p[k] for k in range(n) if k != i and k not in g.out_adj[i])
            if ok:
                out.add(q)
    return out


graphs = st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8),
    st.lists(st.integers(0, 5), min_size=n, max_size=n)))


@settings(max_examples=200, deadline=None)
@given(graphs)
def test_moves_match_set_builder(case):
    n, edges, tokens = case
    g = Digraph.from_edges(n, sorted((a, b) for a, b in edges if a != b))
    p = tuple(tokens)
    moves = dyn_moves(g, p)
    assert {q for _, q in moves} == naive_options(g, p)
    assert len(moves) == len({q for _, q in moves})
    assert [q for _, q in moves] == dyn_rules(g).options(p)
    for mv, q in moves:
        assert total_tokens(q) == total_tokens(p) - mv.removed + g.d_out(mv.vertex)
        assert total_tokens(q) <= total_tokens(p) - 1


def test_total_tokens():
    assert total_tokens((0, 0)) == 0
    assert total_tokens((3, 0)) == 3
    assert total_tokens((6, 1, 1)) == 8


def test_rules_measure():
    rules = dyn_rules(TWO_CYCLE)
    assert rules.measure((3, 0)) == 3
    assert all(rules.measure(q) <= 2 for q in rules.options((3, 0)))


def test_two_cycle_sg():
    assert sg_value(dyn_rules(TWO_CYCLE), (5, 2)) == 3


def test_edgeless_graph_is_nim():
    for n in (1, 2, 3):
        rules, memo = dyn_rules(Digraph(n, ((),) * n)), MemoTable()
        for p in itertools.product(range(7), repeat=n):
            assert sg_value(rules, p, memo) == reduce(xor, p, 0)


def test_best_move_reports_vertex_and_amount():
    move, q = dyn_best_move(TWO_CYCLE, (4, 0))
    assert move == Move(0, 2) and q == (2, 1)
    assert dyn_best_move(TWO_CYCLE, (1, 1)) is None


def test_partition_validation():
    assert G5_PART.problems(G5) == []
    assert G4Partition((0,), (1, 2, 3)).problems(G5)
    assert G4Partition((0, 1), (2,)).problems(G5)
    with pytest.raises(GraphError):
        G4Partition((1,), (0, 2, 3)).check(G5)


def test_aux_needs_full_out_degree():
    g = star(2)
    part = G4Partition((0,), (1, 2))
    rules = aux_rules(g, part)
    assert rules.options((2,)) == []
    assert rules.options((3,)) == [(0,)]
    assert rules.options((5,)) == [(2,), (1,), (0,)]


def test_aux_out_degree_counts_w1_edges():
    # v1 -> v2 only inside V1, but both also feed two sinks: threshold is 4, not 2
    rules = aux_rules(G5, G5_PART)
    assert rules.options((3, 0)) == []
    assert rules.options((4, 0)) == [(0, 1)]
    assert rules.options((0, 3)) == [(0, 0)]


def test_aux_outcome_examples():
    assert aux_outcome(G5, G5_PART, (3, 1)) is Outcome.P
    assert aux_outcome(star(4), G4Partition((0,), (1, 2, 3, 4)), (5,)) is Outcome.N
    assert aux_outcome(star(4), G4Partition((0,), (1, 2, 3, 4)), (4,)) is Outcome.P
    assert aux_outcome(G5, G5_PART, (0, 0)) is Outcome.P


def test_aux_with_empty_w1_is_original_game():
    g = Digraph.from_edges(2, [(0, 1), (1, 0)])
    part = G4Partition((0, 1), ())
    rules, orig = aux_rules(g, part), dyn_rules(g)
    for p in itertools.product(range(8), repeat=2):
        assert rules.options(p) == orig.options(p)
