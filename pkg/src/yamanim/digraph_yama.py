"""Digraph Yama Nim.

Tokens sit on the vertices of a simple digraph.  A move picks a vertex ``v``,
removes at least ``d_out(v) + 1`` of its tokens and puts one token on each
out-neighbour of ``v``.  Positions are tuples of token counts in vertex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .game_core import GameRules, MemoTable, Outcome, is_p_position, sg_value

Position = tuple[int, ...]


class GraphError(ValueError):
    """A digraph or position failed validation.  ``problems`` lists each violation."""

    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class Digraph:
    n: int
    out_adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "out_adj", tuple(tuple(a) for a in self.out_adj))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i + 1}" for i in range(self.n)))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges, labels: Sequence[str] = ()) -> "Digraph":
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in edges:
            adj[a].append(b)
        return cls(n, tuple(tuple(a) for a in adj), tuple(labels))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in self.out_adj[a]]

    def d_out(self, v: int) -> int:
        return len(self.out_adj[v])

    def d_in(self, v: int) -> int:
        return sum(v in adj for adj in self.out_adj)

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.out_adj[v]]

    def index(self, label: str) -> int:
        return self.labels.index(label)


def validate_graph(g: Digraph) -> list[str]:
    """Every structural problem with ``g``; an empty list means it is usable."""
    problems = []
    if len(g.out_adj) != g.n:
        problems.append(f"adjacency has {len(g.out_adj)} rows for {g.n} vertices")
    if len(g.labels) != g.n:
        problems.append(f"{len(g.labels)} labels for {g.n} vertices")
    elif len(set(g.labels)) != g.n:
        problems.append("duplicate vertex labels")
    for v, adj in enumerate(g.out_adj):
        seen = set()
        for w in adj:
            if not 0 <= w < g.n:
                problems.append(f"edge ({v},{w}): target out of range")
            elif w == v:
                problems.append(f"edge ({v},{v}): self-loop")
            elif w in seen:
                problems.append(f"edge ({v},{w}): parallel edge")
            seen.add(w)
    return problems


def check_graph(g: Digraph) -> Digraph:
    problems = validate_graph(g)
    if problems:
        raise GraphError(problems)
    return g


def check_position(g: Digraph, p: Sequence[int]) -> Position:
    p = tuple(p)
    if len(p) != g.n:
        raise GraphError([f"position has {len(p)} entries for {g.n} vertices"])
    if any(t < 0 for t in p):
        raise GraphError(["negative token count"])
    return p


def total_tokens(p: Sequence[int]) -> int:
    return sum(p)


class Move(NamedTuple):
    vertex: int
    removed: int


def dyn_moves(g: Digraph, p: Position) -> list[tuple[Move, Position]]:
    """All moves with their successors, vertex ascending then removal ascending.

    Distinct moves always give distinct successors, so no deduplication is needed.
    """
    out = []
    for v, adj in enumerate(g.out_adj):
        t = p[v]
        need = len(adj) + 1
        if t < need:
            continue
        base = list(p)
        for w in adj:
            base[w] += 1
        for r in range(need, t + 1):
            base[v] = t - r
            out.append((Move(v, r), tuple(base)))
    return out


class DigraphRules(GameRules):
    """Digraph Yama Nim on a fixed graph; measure is the total token count."""

    def __init__(self, g: Digraph):
        self.graph = check_graph(g)
        self._moves = [(v, len(adj) + 1, adj) for v, adj in enumerate(g.out_adj)]

    def options(self, p):
        out = []
        for v, need, adj in self._moves:
            t = p[v]
            if t < need:
                continue
            base = list(p)
            for w in adj:
                base[w] += 1
            for left in range(t - need, -1, -1):
                base[v] = left
                out.append(tuple(base))
        return out

    def measure(self, p):
        return sum(p)


def dyn_rules(g: Digraph) -> DigraphRules:
    return DigraphRules(g)


def dyn_best_move(g: Digraph, p: Position, memo: MemoTable | None = None):
    """First ``(Move, successor)`` whose successor has SG value 0, or None."""
    rules = dyn_rules(g)
    if memo is None:
        memo = MemoTable()
    for move, q in dyn_moves(g, p):
        if sg_value(rules, q, memo) == 0:
            return move, q
    return None


@dataclass(frozen=True)
class G4Partition:
    """Split of the vertices into ``v1`` and a set ``w1`` of sinks fed by every ``v1`` vertex."""

    v1: tuple[int, ...]
    w1: tuple[int, ...]

    def problems(self, g: Digraph) -> list[str]:
        out = []
        s1, s2 = set(self.v1), set(self.w1)
        if s1 & s2:
            out.append("v1 and w1 overlap")
        if s1 | s2 != set(range(g.n)) or len(self.v1) + len(self.w1) != g.n:
            out.append("v1 and w1 do not cover the vertex set exactly once")
        for w in self.w1:
            if g.out_adj[w]:
                out.append(f"w1 vertex {w} has out-degree {g.d_out(w)}")
        for v in self.v1:
            missing = s2.difference(g.out_adj[v])
            if missing:
                out.append(f"v1 vertex {v} lacks edges to {sorted(missing)}")
        return out

    def check(self, g: Digraph) -> "G4Partition":
        problems = self.problems(g)
        if problems:
            raise GraphError(problems)
        return self

    def split(self, p: Position) -> tuple[Position, Position]:
        return tuple(p[v] for v in self.v1), tuple(p[w] for w in self.w1)


class AuxRules(GameRules):
    """Moves only on ``v1``; out-degrees are counted in the full graph but
    tokens are deposited on ``v1`` out-neighbours only.

    Positions are tuples over ``part.v1`` in that order.
    """

    def __init__(self, g: Digraph, part: G4Partition):
        check_graph(g)
        part.check(g)
        self.graph = g
        self.part = part
        local = {v: k for k, v in enumerate(part.v1)}
        self._moves = [
            (k, g.d_out(v) + 1, tuple(local[w] for w in g.out_adj[v] if w in local))
            for k, v in enumerate(part.v1)
        ]

    def options(self, p):
        out = []
        for k, need, adj in self._moves:
            t = p[k]
            if t < need:
                continue
            base = list(p)
            for w in adj:
                base[w] += 1
            for left in range(t - need, -1, -1):
                base[k] = left
                out.append(tuple(base))
        return out

    def measure(self, p):
        return sum(p)


def aux_rules(g: Digraph, part: G4Partition) -> AuxRules:
    return AuxRules(g, part)


def aux_outcome(g: Digraph, part: G4Partition, x: Sequence[int],
                memo: MemoTable | None = None) -> Outcome:
    rules = aux_rules(g, part)
    return Outcome.P if is_p_position(rules, tuple(x), memo) else Outcome.N
