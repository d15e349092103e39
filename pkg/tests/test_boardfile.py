import json

import pytest

from yamanim.boardfile import BoardFormatError, dump_board, load_board
from yamanim.digraph_yama import Digraph, GraphError


def test_round_trip():
    g = Digraph.from_edges(3, [(0, 2), (0, 1), (2, 1)], ["a", "b", "c"])
    text = dump_board(g, (4, 0, 1))
    g2, p2, roles = load_board(text)
    assert g2 == g
    assert p2 == (4, 0, 1)
    assert roles is None
    assert dump_board(g2, p2) == text


def test_round_trip_with_roles():
    g = Digraph.from_edges(2, [(0, 1)], ["x1", "q1.1"])
    text = dump_board(g, (4, 0), {"x1": "x1", "q1.1": "q1.1"})
    _, _, roles = load_board(text)
    assert roles == {"x1": "x1", "q1.1": "q1.1"}


def test_missing_tokens_default_to_zero():
    g, p, _ = load_board('{"vertices": ["a", "b"], "edges": [["a", "b"]], "tokens": {"b": 2}}')
    assert p == (0, 2)
    assert g.out_adj == ((1,), ())


@pytest.mark.parametrize("doc", [
    "not json",
    '[1, 2]',
    '{"vertices": ["a", "a"]}',
    '{"vertices": ["a"], "edges": [["a", "z"]]}',
    '{"vertices": ["a"], "tokens": {"a": -1}}',
    '{"vertices": ["a"], "tokens": {"a": 1.5}}',
    '{"vertices": ["a"], "colour": "red"}',
    '{"vertices": ["a", "b"], "roles": {"a": "x1"}}',
])
def test_malformed(doc):
    with pytest.raises(BoardFormatError):
        load_board(doc)


def test_self_loop_rejected():
    with pytest.raises(GraphError):
        load_board(json.dumps({"vertices": ["a"], "edges": [["a", "a"]]}))
