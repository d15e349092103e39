"""Brute-force verification sweeps.

Each suite pits a closed form (or a structural claim) against the generic
search engine on a bounded family of instances and returns a
:class:`SuiteResult`.  The CLI ``verify`` command and the acceptance tests
both run these.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .digraph_yama import Digraph, G4Partition, aux_outcome, dyn_moves, dyn_rules
from .game_core import MemoTable, SolveStats, is_p_position, sg_value, sum_game
from .reduction import (audit_reduction, build_reduction, check_equivalence, enumerate_poscnfs,
                        parse_poscnf, verify_claim_even_moves)
from .structure_theorems import (classify_g4_even, classify_g4_odd, detect_g4, g5_is_p,
                                 g6_is_p, w0_expansion)
from .yama_nim import YamaRules, yama_is_p, yama_sg

FIG3_FORMULA = "p poscnf 6 3\n1 0\n2 3 4 0\n2 5 6 0\n"

G5_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: int = 0
    counterexample: object = None
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checked > 0

    def record(self, ok: bool, instance) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = instance

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{verdict} {self.name}: {self.checked} checked, {self.failures} failed ({self.seconds:.2f}s)"
        if self.counterexample is not None:
            line += f"; first counterexample: {self.counterexample!r}"
        return line


def _timed(fn: Callable[..., SuiteResult]) -> Callable[..., SuiteResult]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# instance generators

def random_digraph(rng: random.Random, n: int, p_edge: float = 0.4) -> Digraph:
    """Simple digraph on ``n`` vertices; cycles are allowed."""
    edges = [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < p_edge]
    return Digraph.from_edges(n, edges)


def random_g4(rng: random.Random, n_v1: int, n_w1: int, p_edge: float = 0.5,
              shuffle: bool = True) -> tuple[Digraph, G4Partition]:
    """Random graph with ``n_w1`` sinks fed by all ``n_v1`` other vertices.

    Edges among the ``V1`` vertices are random (cycles included).  With
    ``shuffle`` the vertex order is permuted so ``V1`` and ``W1`` interleave.
    """
    n = n_v1 + n_w1
    order = list(range(n))
    if shuffle:
        rng.shuffle(order)
    v1, w1 = order[:n_v1], order[n_v1:]
    edges = [(a, b) for a in v1 for b in v1 if a != b and rng.random() < p_edge]
    edges += [(a, b) for a in v1 for b in w1]
    rng.shuffle(edges)
    return Digraph.from_edges(n, edges), G4Partition(tuple(sorted(v1)), tuple(sorted(w1)))


def _random_tokens(rng: random.Random, n: int, hi: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, hi) for _ in range(n))


# suites

@_timed
def suite_yama(bound: int = 40) -> SuiteResult:
    """Closed-form Yama Nim values against the search engine on ``[0, bound]^2``."""
    res = SuiteResult("yama")
    rules, memo = YamaRules(), MemoTable()
    for x in range(bound + 1):
        for y in range(bound + 1):
            sg = sg_value(rules, (x, y), memo)
            res.record(sg == yama_sg((x, y)) and yama_is_p((x, y)) == (sg == 0), (x, y))
    return res


@_timed
def suite_sum(count: int = 200, max_vertices: int = 3, max_tokens: int = 5,
              seed: int = 0) -> SuiteResult:
    """Solve explicit disjunctive sums of random small instances; compare with the nim-sum."""
    rng = random.Random(seed)
    res = SuiteResult("sum")
    for _ in range(count):
        g1 = random_digraph(rng, rng.randint(1, max_vertices))
        g2 = random_digraph(rng, rng.randint(1, max_vertices))
        p1 = _random_tokens(rng, g1.n, max_tokens)
        p2 = _random_tokens(rng, g2.n, max_tokens)
        r1, r2 = dyn_rules(g1), dyn_rules(g2)
        direct = sg_value(sum_game(r1, r2), (p1, p2))
        res.record(direct == sg_value(r1, p1) ^ sg_value(r2, p2), (g1.edges, p1, g2.edges, p2))
    return res


def _g4_family(rng, count, w1_sizes, max_v1, max_tokens):
    for _ in range(count):
        g, part = random_g4(rng, rng.randint(0, max_v1), rng.choice(w1_sizes))
        yield g, part, _random_tokens(rng, g.n, max_tokens)


@_timed
def suite_g4_odd(count: int = 500, max_v1: int = 3, max_tokens: int = 6,
                 seed: int = 1) -> SuiteResult:
    res = SuiteResult("g4-odd")
    rng = random.Random(seed)
    for g, part, p in _g4_family(rng, count, (1, 3), max_v1, max_tokens):
        ok = detect_g4(g) == part and classify_g4_odd(g, part, p) == sg_value(dyn_rules(g), p)
        res.record(ok, (g.edges, p))
    return res


@_timed
def suite_g4_even(count: int = 500, max_v1: int = 3, max_tokens: int = 6,
                  seed: int = 2) -> SuiteResult:
    res = SuiteResult("g4-even")
    rng = random.Random(seed)
    for g, part, p in _g4_family(rng, count, (2, 4), max_v1, max_tokens):
        brute = is_p_position(dyn_rules(g), p)
        ok = detect_g4(g) == part and (classify_g4_even(g, part, p).value == "P") == brute
        res.record(ok, (g.edges, p))
    return res


@_timed
def suite_g5(max_x: int = 12, max_y: int = 8, max_z: int = 7) -> SuiteResult:
    res = SuiteResult("g5")
    g = Digraph.from_edges(4, G5_EDGES)
    rules, memo = dyn_rules(g), MemoTable()
    for x, y, z1, z2 in itertools.product(range(max_x + 1), range(max_y + 1),
                                          range(max_z + 1), range(max_z + 1)):
        p = (x, y, z1, z2)
        res.record(g5_is_p(*p) == is_p_position(rules, p, memo), p)
    return res


def star(n: int) -> Digraph:
    return Digraph.from_edges(n + 1, [(0, k) for k in range(1, n + 1)])


@_timed
def suite_g6(max_n: int = 4, x_extra: int = 5, max_y: int = 7) -> SuiteResult:
    """Star graphs with ``n`` leaves, centre tokens up to ``n + x_extra``."""
    res = SuiteResult("g6")
    for n in range(1, max_n + 1):
        rules, memo = dyn_rules(star(n)), MemoTable()
        for x in range(n + x_extra + 1):
            for ys in itertools.product(range(max_y + 1), repeat=n):
                p = (x,) + ys
                res.record(g6_is_p(n, x, ys) == is_p_position(rules, p, memo), p)
    return res


@_timed
def suite_w0(count: int = 100, max_v1: int = 3, max_w1: int = 4, max_tokens: int = 6,
             seed: int = 3) -> SuiteResult:
    """The auxiliary game against plain play on the graph with inert ``W1``."""
    res = SuiteResult("w0")
    rng = random.Random(seed)
    for _ in range(count):
        g, part = random_g4(rng, rng.randint(1, max_v1), rng.randint(1, max_w1))
        p = _random_tokens(rng, g.n, max_tokens)
        x, _ = part.split(p)
        h, q = w0_expansion(g, part, p)
        expanded = is_p_position(dyn_rules(h), q)
        res.record((aux_outcome(g, part, x).value == "P") == expanded, (g.edges, p))
    return res


def _formula_family(max_n: int, max_m: int, max_clause: int):
    return enumerate_poscnfs(max_n, max_m, max_clause)


@_timed
def suite_reduction_audit(max_n: int = 4, max_m: int = 3, max_clause: int = 3) -> SuiteResult:
    """Structural audit of every reduction graph in the family, plus the 6-variable example."""
    res = SuiteResult("reduction-audit")
    fig3 = parse_poscnf(FIG3_FORMULA)
    for f in _formula_family(max_n, max_m, max_clause) + [fig3]:
        report = audit_reduction(build_reduction(f))
        res.record(report.ok, (f.to_text(), [c.name for c in report.failed()]))
    rg = build_reduction(fig3)
    res.notes["fig3_vertices"] = rg.graph.n
    res.record(rg.graph.n == 43, ("fig3 vertex count", rg.graph.n))
    return res


@_timed
def suite_claim_parity(max_n: int = 3, max_m: int = 2, max_clause: int = 3,
                       max_states: int = 10_000_000) -> SuiteResult:
    res = SuiteResult("claim-parity")
    states = 0
    for f in _formula_family(max_n, max_m, max_clause):
        rep = verify_claim_even_moves(build_reduction(f), max_states)
        states += rep.states
        res.record(rep.holds, (f.to_text(), rep.detail, rep.witness))
    res.notes["states"] = states
    return res


@_timed
def suite_reduction_equiv(max_n: int = 3, max_m: int = 2, max_clause: int = 3,
                          max_states: int = 10_000_000) -> SuiteResult:
    res = SuiteResult("reduction-equiv")
    for f in _formula_family(max_n, max_m, max_clause):
        rep = check_equivalence(f, max_states)
        res.record(bool(rep.agree), (f.to_text(), rep))
    return res


@_timed
def suite_termination(count: int = 1000, max_vertices: int = 4, max_tokens: int = 4,
                      seed: int = 4) -> SuiteResult:
    """Every move in every reachable state drops the token total; search depth stays
    within the initial total."""
    res = SuiteResult("termination")
    rng = random.Random(seed)
    moves = 0
    for _ in range(count):
        g = random_digraph(rng, rng.randint(1, max_vertices))
        p = _random_tokens(rng, g.n, max_tokens)
        memo, stats = MemoTable(), SolveStats()
        sg_value(dyn_rules(g), p, memo, stats=stats)
        ok = stats.max_depth <= sum(p)
        for state, _ in memo.items():
            total = sum(state)
            for mv, q in dyn_moves(g, state):
                moves += 1
                if sum(q) != total - mv.removed + g.d_out(mv.vertex) or sum(q) > total - 1:
                    ok = False
        res.record(ok, (g.edges, p, stats.max_depth))
    res.notes["moves"] = moves
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "yama": suite_yama,
    "sum": suite_sum,
    "g4-odd": suite_g4_odd,
    "g4-even": suite_g4_even,
    "g5": suite_g5,
    "g6": suite_g6,
    "w0": suite_w0,
    "reduction-audit": suite_reduction_audit,
    "claim-parity": suite_claim_parity,
    "reduction-equiv": suite_reduction_equiv,
    "termination": suite_termination,
}
