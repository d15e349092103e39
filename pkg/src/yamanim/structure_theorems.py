"""Closed-form classification for graphs whose sinks are fed by every other vertex.

If the sinks ``W1`` of a digraph receive an edge from every non-sink vertex
(the rest form ``V1``), the game splits: with ``|W1|`` odd the SG value is the
nim-sum of the tokens on ``W1``; with ``|W1|`` even the outcome depends on the
nim-sum and on the outcome of a smaller game played on ``V1`` alone.  The
diamond (two sources over two sinks) and the star are worked special cases.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from operator import xor
from typing import Sequence

from .digraph_yama import (Digraph, G4Partition, Position, aux_outcome, check_graph,
                           dyn_rules, total_tokens)
from .game_core import MemoTable, Outcome, sg_value


class PreconditionError(ValueError):
    pass


class Method(str, enum.Enum):
    G4_ODD = "g4_odd"
    G4_EVEN = "g4_even"
    G5_CLOSED = "g5_closed"
    G6_CLOSED = "g6_closed"
    BRUTE_FORCE = "brute_force"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ClassificationResult:
    outcome: Outcome
    sg: int | None
    method: Method


def nim_sum(values: Sequence[int]) -> int:
    return reduce(xor, values, 0)


def detect_g4(g: Digraph) -> G4Partition | None:
    """The canonical partition with ``W1`` = all sinks, if it qualifies.

    A sink can never sit in ``V1`` (it would need edges into ``W1``), so this is
    the only candidate.  Graphs without sinks give None.
    """
    w1 = g.sinks()
    if not w1:
        return None
    wset = set(w1)
    v1 = [v for v in range(g.n) if v not in wset]
    for v in v1:
        if not wset.issubset(g.out_adj[v]):
            return None
    return G4Partition(tuple(v1), tuple(w1))


def match_g5(g: Digraph) -> tuple[int, int, int, int] | None:
    """Vertex indices ``(v1, v2, w1, w2)`` if ``g`` is the diamond shape.

    Edges: v1->v2, v1->w1, v1->w2, v2->w1, v2->w2.  ``w1 < w2``.
    """
    if g.n != 4 or len(g.edges) != 5:
        return None
    by_deg = sorted(range(4), key=g.d_out)
    w1, w2, v2, v1 = by_deg
    if [g.d_out(v) for v in by_deg] != [0, 0, 2, 3]:
        return None
    if set(g.out_adj[v1]) != {v2, w1, w2} or set(g.out_adj[v2]) != {w1, w2}:
        return None
    return v1, v2, min(w1, w2), max(w1, w2)


def match_g6(g: Digraph) -> tuple[int, tuple[int, ...]] | None:
    """``(centre, leaves)`` if ``g`` is a star with all edges leaving the centre."""
    if g.n < 2:
        return None
    centres = [v for v in range(g.n) if g.out_adj[v]]
    if len(centres) != 1:
        return None
    c = centres[0]
    leaves = tuple(v for v in range(g.n) if v != c)
    if set(g.out_adj[c]) != set(leaves):
        return None
    return c, leaves


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def classify_g4_odd(g: Digraph, part: G4Partition, p: Sequence[int]) -> int:
    """SG value when ``|W1|`` is odd: nim-sum of the ``W1`` tokens."""
    _require(len(part.w1) % 2 == 1, f"|W1| = {len(part.w1)} is not odd")
    _require(not part.problems(g), "invalid G4 partition: " + "; ".join(part.problems(g)))
    return nim_sum([p[w] for w in part.w1])


def classify_g4_even(g: Digraph, part: G4Partition, p: Sequence[int],
                     memo: MemoTable | None = None) -> Outcome:
    """Outcome when ``|W1|`` is even.

    P exactly when the ``V1`` game is P and the ``W1`` nim-sum is 0, or the
    ``V1`` game is N and the ``W1`` nim-sum is 1.
    """
    _require(len(part.w1) % 2 == 0, f"|W1| = {len(part.w1)} is not even")
    _require(not part.problems(g), "invalid G4 partition: " + "; ".join(part.problems(g)))
    x, y = part.split(tuple(p))
    aux = aux_outcome(g, part, x, memo)
    s = nim_sum(y)
    if aux is Outcome.P:
        return Outcome.P if s == 0 else Outcome.N
    return Outcome.P if s == 1 else Outcome.N


def g5_is_p(x: int, y: int, z1: int, z2: int) -> bool:
    lo = 2 * (x // 4)
    in_band = lo <= y <= lo + 2
    s = z1 ^ z2
    return (in_band and s == 0) or (not in_band and s == 1)


def g6_is_p(n: int, x: int, ys: Sequence[int]) -> bool:
    if n < 1:
        raise PreconditionError("star needs at least one leaf")
    if len(ys) != n:
        raise PreconditionError(f"expected {n} leaf counts, got {len(ys)}")
    s = nim_sum(ys)
    if n % 2 == 1:
        return s == 0
    return (x <= n and s == 0) or (x >= n + 1 and s == 1)


def _verdict(is_p: bool) -> Outcome:
    return Outcome.P if is_p else Outcome.N


def classify_auto(g: Digraph, p: Sequence[int], memo: MemoTable | None = None) -> ClassificationResult:
    """Use the most specific closed form that applies, else brute force.

    ``memo`` is only used by the brute-force and auxiliary searches and holds
    values of whichever search runs, so pass a fresh one per graph.
    """
    check_graph(g)
    p = tuple(p)
    m5 = match_g5(g)
    if m5 is not None:
        v1, v2, w1, w2 = m5
        return ClassificationResult(_verdict(g5_is_p(p[v1], p[v2], p[w1], p[w2])), None,
                                    Method.G5_CLOSED)
    m6 = match_g6(g)
    if m6 is not None:
        c, leaves = m6
        return ClassificationResult(
            _verdict(g6_is_p(len(leaves), p[c], [p[w] for w in leaves])), None,
            Method.G6_CLOSED)
    part = detect_g4(g)
    if part is not None:
        if len(part.w1) % 2 == 1:
            sg = classify_g4_odd(g, part, p)
            return ClassificationResult(_verdict(sg == 0), sg, Method.G4_ODD)
        return ClassificationResult(classify_g4_even(g, part, p, memo), None, Method.G4_EVEN)
    sg = sg_value(dyn_rules(g), p, memo)
    return ClassificationResult(_verdict(sg == 0), sg, Method.BRUTE_FORCE)


def w0_expansion(g: Digraph, part: G4Partition, p: Sequence[int], fresh: int | None = None,
                 *, merge: bool = False) -> tuple[Digraph, Position]:
    """Make ``W1`` inert so the plain game reproduces the ``V1``-only game.

    Every ``W1`` vertex gets edges to ``fresh`` new sinks, which makes its
    out-degree exceed any token count it can ever reach.  ``W1`` tokens are
    dropped; ``V1`` tokens are kept.  Vertex order: original vertices, then the
    fresh sinks.

    ``merge=True`` instead replaces all of ``W1`` by a single vertex ``w0``.
    That shrinks every ``V1`` out-degree by ``|W1| - 1`` and so changes the
    game whenever ``|W1| > 1``; it is kept for comparison.
    """
    part.check(g)
    p = tuple(p)
    if fresh is None:
        fresh = total_tokens(p) + 1
    _require(fresh > total_tokens(p),
             f"need more than {total_tokens(p)} fresh vertices, got {fresh}")
    wset = set(part.w1)
    fresh_labels = [f"fresh{k + 1}" for k in range(fresh)]

    if merge:
        keep = list(part.v1)
        idx = {v: k for k, v in enumerate(keep)}
        w0 = len(keep)
        labels = [g.labels[v] for v in keep] + ["w0"] + fresh_labels
        adj: list[list[int]] = []
        for v in keep:
            row = [idx[w] for w in g.out_adj[v] if w not in wset]
            if wset:
                row.append(w0)
            adj.append(row)
        adj.append(list(range(w0 + 1, w0 + 1 + fresh)))
        adj.extend([] for _ in range(fresh))
        tokens = tuple(p[v] for v in keep) + (0,) * (1 + fresh)
        return Digraph(len(labels), tuple(map(tuple, adj)), tuple(labels)), tokens

    labels = list(g.labels) + fresh_labels
    sinks = tuple(range(g.n, g.n + fresh))
    adj = [list(g.out_adj[v]) if v not in wset else list(sinks) for v in range(g.n)]
    adj.extend([] for _ in range(fresh))
    tokens = tuple(0 if v in wset else p[v] for v in range(g.n)) + (0,) * fresh
    return Digraph(len(labels), tuple(map(tuple, adj)), tuple(labels)), tokens
