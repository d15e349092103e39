"""Positive CNF formulas, the variable-selection game on them, and the
reduction from that game to Digraph Yama Nim.

Formula text format (one clause per line, DIMACS style)::

    c optional comment lines start with 'c'
    p poscnf <n_vars> <n_clauses>
    1 0
    2 3 4 0

Literals are positive integers in ``1..n_vars``; each clause ends with ``0``
and may span lines.  A negative literal is rejected outright.

Reduction graph layout, for variables ``X1..Xn`` and clauses ``C1..Cm``:

* ``x_i`` -> ``q_i.1`` -> ``q_i.2`` -> ``q_i.3`` for every variable, and
  ``q_1.3`` -> ``parity`` when ``n`` is odd;
* ``x_i`` -> ``c_j`` whenever ``X_i`` occurs in ``C_j``;
* ``c_j`` -> ``cpath_j.l.1`` -> ``cpath_j.l.2`` for ``l = 1..|C_j|-1``, plus
  ``c_j`` -> ``f_j`` and ``c_j`` -> ``w``;
* ``w`` -> ``wpath_l.1`` -> ``wpath_l.2`` for ``l = 1..m-1``.

``x_i`` starts with ``2 (d_out(x_i) + 1)`` tokens, every ``c_j`` and the parity
vertex with one, everything else with none.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import networkx as nx

from .digraph_yama import Digraph, Move, Position, dyn_rules
from .game_core import DEFAULT_MAX_ENTRIES, MemoTable, Outcome, ResourceLimitError, is_p_position


# formulas

class PosCnfError(ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line
        self.column = column


class NegativeLiteralError(PosCnfError):
    pass


@dataclass(frozen=True)
class PosCnf:
    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(sorted(set(c))) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.n < 0:
            raise PosCnfError("variable count must be non-negative")
        for c in clauses:
            if not c:
                raise PosCnfError("empty clause")
            for v in c:
                if not 1 <= v <= self.n:
                    raise PosCnfError(f"variable {v} out of range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def to_text(self) -> str:
        lines = [f"p poscnf {self.n} {self.m}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_poscnf(text: str) -> PosCnf:
    n = m = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if n is not None:
                raise PosCnfError("duplicate header", lineno, 1)
            if len(parts) != 4 or parts[1] != "poscnf":
                raise PosCnfError("header must be 'p poscnf <n> <m>'", lineno, 1)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise PosCnfError("header counts must be integers", lineno, 1) from None
            if n < 0 or m < 0:
                raise PosCnfError("header counts must be non-negative", lineno, 1)
            continue
        for match in re.finditer(r"\S+", line):
            tok, col = match.group(), match.start() + 1
            try:
                lit = int(tok)
            except ValueError:
                raise PosCnfError(f"expected an integer, got {tok!r}", lineno, col) from None
            if lit < 0:
                raise NegativeLiteralError(f"negated literal {lit} in a positive formula",
                                           lineno, col)
            if n is None:
                raise PosCnfError("clause before 'p poscnf' header", lineno, col)
            if lit == 0:
                if not current:
                    raise PosCnfError("empty clause", lineno, col)
                clauses.append(tuple(current))
                current = []
            elif lit > n:
                raise PosCnfError(f"variable {lit} out of range 1..{n}", lineno, col)
            else:
                current.append(lit)
    if n is None:
        raise PosCnfError("missing 'p poscnf' header")
    if current:
        raise PosCnfError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise PosCnfError(f"header announces {m} clauses, found {len(clauses)}")
    return PosCnf(n, tuple(clauses))


def poscnf_eval(f: PosCnf, assignment: Sequence[bool]) -> bool:
    if len(assignment) != f.n:
        raise ValueError(f"assignment has {len(assignment)} values for {f.n} variables")
    return all(any(assignment[v - 1] for v in c) for c in f.clauses)


class Player(str, enum.Enum):
    P1 = "P1"
    P0 = "P0"

    def __str__(self) -> str:
        return self.value


def poscnf_winner(f: PosCnf, max_vars: int = 20) -> Player:
    """Exact minimax for the selection game; P1 moves first and sets variables to 1."""
    if f.n > max_vars:
        raise ResourceLimitError(max_vars)
    full = (1 << f.n) - 1
    clause_masks = [sum(1 << (v - 1) for v in c) for c in f.clauses]
    memo: dict[tuple[int, int], bool] = {}

    def p1_wins(taken: int, ones: int) -> bool:
        if taken == full:
            return all(ones & cm for cm in clause_masks)
        key = (taken, ones)
        hit = memo.get(key)
        if hit is not None:
            return hit
        p1_turn = bin(taken).count("1") % 2 == 0
        free = [1 << k for k in range(f.n) if not taken >> k & 1]
        if p1_turn:
            res = any(p1_wins(taken | b, ones | b) for b in free)
        else:
            res = all(p1_wins(taken | b, ones) for b in free)
        memo[key] = res
        return res

    return Player.P1 if p1_wins(0, 0) else Player.P0


def enumerate_poscnfs(max_n: int, max_m: int, max_clause: int, min_n: int = 1,
                      min_m: int = 1) -> list[PosCnf]:
    """All formulas within the bounds, one representative per variable renaming.

    Clause multisets are considered, so repeated clauses are included; the
    representative is the lexicographically smallest relabelling.
    """
    out = []
    for n in range(min_n, max_n + 1):
        subsets = [c for k in range(1, min(max_clause, n) + 1)
                   for c in itertools.combinations(range(1, n + 1), k)]
        perms = list(itertools.permutations(range(1, n + 1)))
        for m in range(min_m, max_m + 1):
            seen = set()
            for combo in itertools.combinations_with_replacement(subsets, m):
                canon = min(
                    tuple(sorted(tuple(sorted(perm[v - 1] for v in c)) for c in combo))
                    for perm in perms)
                if canon not in seen:
                    seen.add(canon)
                    out.append(PosCnf(n, canon))
    return out


# reduction graph

class Role(NamedTuple):
    kind: str
    idx: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.idx:
            return self.kind
        return self.kind + ".".join(map(str, self.idx))


_ROLE_RE = re.compile(r"^(x|q|c|f|cpath|wpath|w|parity)((?:\d+)(?:\.\d+)*)?$")
_ROLE_ARITY = {"x": 1, "q": 2, "parity": 0, "c": 1, "f": 1, "cpath": 3, "w": 0, "wpath": 2}
SUBGRAPH = {"x": "G1", "q": "G1", "parity": "G1", "c": "G2", "f": "G2", "cpath": "G2",
            "w": "G3", "wpath": "G3"}


def parse_role(text: str) -> Role:
    m = _ROLE_RE.match(text)
    if not m:
        raise ValueError(f"unknown role {text!r}")
    kind = m.group(1)
    idx = tuple(int(s) for s in m.group(2).split(".")) if m.group(2) else ()
    if len(idx) != _ROLE_ARITY[kind]:
        raise ValueError(f"role {text!r} needs {_ROLE_ARITY[kind]} indices")
    return Role(kind, idx)


@dataclass
class ReductionGraph:
    graph: Digraph
    init: Position
    roles: tuple[Role, ...]
    _index: dict[Role, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._index = {r: v for v, r in enumerate(self.roles)}

    @property
    def subgraph_of(self) -> dict[Role, str]:
        return {r: SUBGRAPH[r.kind] for r in self.roles}

    def vertex(self, role: Role) -> int:
        return self._index[role]

    def vertices_of(self, kind: str) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r.kind == kind]

    def role_labels(self) -> dict[str, str]:
        return {self.graph.labels[v]: str(r) for v, r in enumerate(self.roles)}

    @classmethod
    def from_board(cls, g: Digraph, p: Position, roles: dict[str, str]) -> "ReductionGraph":
        return cls(g, tuple(p), tuple(parse_role(roles[lab]) for lab in g.labels))


def build_reduction(f: PosCnf) -> ReductionGraph:
    """Reduction graph for ``f``; labels are the role names."""
    if f.m < 1:
        raise PosCnfError("the reduction needs at least one clause")
    roles: list[Role] = []
    for i in range(1, f.n + 1):
        roles.append(Role("x", (i,)))
    for i in range(1, f.n + 1):
        roles += [Role("q", (i, k)) for k in (1, 2, 3)]
    if f.n % 2 == 1:
        roles.append(Role("parity"))
    for j, clause in enumerate(f.clauses, 1):
        roles += [Role("c", (j,)), Role("f", (j,))]
        for l in range(1, len(clause)):
            roles += [Role("cpath", (j, l, 1)), Role("cpath", (j, l, 2))]
    roles.append(Role("w"))
    for l in range(1, f.m):
        roles += [Role("wpath", (l, 1)), Role("wpath", (l, 2))]
    at = {r: v for v, r in enumerate(roles)}

    adj: list[list[int]] = [[] for _ in roles]
    for i in range(1, f.n + 1):
        adj[at[Role("x", (i,))]].append(at[Role("q", (i, 1))])
        adj[at[Role("q", (i, 1))]].append(at[Role("q", (i, 2))])
        adj[at[Role("q", (i, 2))]].append(at[Role("q", (i, 3))])
    if f.n % 2 == 1:
        adj[at[Role("q", (1, 3))]].append(at[Role("parity")])
    for j, clause in enumerate(f.clauses, 1):
        c = at[Role("c", (j,))]
        for i in clause:
            adj[at[Role("x", (i,))]].append(c)
        for l in range(1, len(clause)):
            first = at[Role("cpath", (j, l, 1))]
            adj[c].append(first)
            adj[first].append(at[Role("cpath", (j, l, 2))])
        adj[c].append(at[Role("f", (j,))])
        adj[c].append(at[Role("w")])
    w = at[Role("w")]
    for l in range(1, f.m):
        first = at[Role("wpath", (l, 1))]
        adj[w].append(first)
        adj[first].append(at[Role("wpath", (l, 2))])

    tokens = [0] * len(roles)
    for v, r in enumerate(roles):
        if r.kind == "x":
            tokens[v] = 2 * (len(adj[v]) + 1)
        elif r.kind in ("c", "parity"):
            tokens[v] = 1
    g = Digraph(len(roles), tuple(map(tuple, adj)), tuple(str(r) for r in roles))
    return ReductionGraph(g, tuple(tokens), tuple(roles))


# audit

@dataclass
class AuditCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class AuditReport:
    checks: list[AuditCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[AuditCheck]:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> AuditCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


# first vertex of a clause path, last of a w path, w, f, x, second vertex of Q
def _in_class_a(r: Role) -> bool:
    if r.kind in ("x", "parity", "f", "w"):
        return True
    if r.kind == "q":
        return r.idx[1] == 2
    if r.kind == "cpath":
        return r.idx[2] == 1
    if r.kind == "wpath":
        return r.idx[1] == 2
    return False


def _expected_shape(rg: ReductionGraph) -> tuple[dict[Role, set[Role]], list[str]]:
    """Expected out-neighbour roles per vertex, read off the clause membership
    encoded in the ``x -> c`` edges.  Also returns role-inventory problems."""
    roles = rg.roles
    g = rg.graph
    problems = []
    n = len(rg.vertices_of("x"))
    m = len(rg.vertices_of("c"))
    members: dict[int, set[int]] = {j: set() for j in range(1, m + 1)}
    for v in rg.vertices_of("x"):
        for u in g.out_adj[v]:
            if roles[u].kind == "c":
                members.setdefault(roles[u].idx[0], set()).add(roles[v].idx[0])

    expected: set[Role] = {Role("x", (i,)) for i in range(1, n + 1)}
    expected |= {Role("q", (i, k)) for i in range(1, n + 1) for k in (1, 2, 3)}
    if n % 2 == 1:
        expected.add(Role("parity"))
    for j in range(1, m + 1):
        expected |= {Role("c", (j,)), Role("f", (j,))}
        expected |= {Role("cpath", (j, l, k)) for l in range(1, len(members[j])) for k in (1, 2)}
    expected.add(Role("w"))
    expected |= {Role("wpath", (l, k)) for l in range(1, m) for k in (1, 2)}
    have = set(roles)
    if len(have) != len(roles):
        problems.append("some role is assigned to more than one vertex")
    if have - expected:
        problems.append(f"unexpected roles: {sorted(map(str, have - expected))}")
    if expected - have:
        problems.append(f"missing roles: {sorted(map(str, expected - have))}")

    shape: dict[Role, set[Role]] = {}
    for i in range(1, n + 1):
        shape[Role("x", (i,))] = {Role("q", (i, 1))} | {
            Role("c", (j,)) for j in members if i in members[j]}
        shape[Role("q", (i, 1))] = {Role("q", (i, 2))}
        shape[Role("q", (i, 2))] = {Role("q", (i, 3))}
        shape[Role("q", (i, 3))] = {Role("parity")} if (i == 1 and n % 2 == 1) else set()
    if n % 2 == 1:
        shape[Role("parity")] = set()
    for j in range(1, m + 1):
        paths = range(1, len(members[j]))
        shape[Role("c", (j,))] = ({Role("f", (j,)), Role("w")}
                                  | {Role("cpath", (j, l, 1)) for l in paths})
        shape[Role("f", (j,))] = set()
        for l in paths:
            shape[Role("cpath", (j, l, 1))] = {Role("cpath", (j, l, 2))}
            shape[Role("cpath", (j, l, 2))] = set()
    shape[Role("w")] = {Role("wpath", (l, 1)) for l in range(1, m)}
    for l in range(1, m):
        shape[Role("wpath", (l, 1))] = {Role("wpath", (l, 2))}
        shape[Role("wpath", (l, 2))] = set()
    return shape, problems


def audit_reduction(rg: ReductionGraph) -> AuditReport:
    """Structural checks on a reduction graph; failures are report entries."""
    g, roles, init = rg.graph, rg.roles, rg.init
    checks: list[AuditCheck] = []

    nxg = nx.DiGraph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    acyclic = nx.is_directed_acyclic_graph(nxg)
    checks.append(AuditCheck("acyclic", acyclic,
                             "" if acyclic else f"cycle {nx.find_cycle(nxg)}"))
    bip = nx.is_bipartite(nxg.to_undirected())
    checks.append(AuditCheck("bipartite", bip, "" if bip else "no proper 2-colouring"))
    bad = [(str(roles[a]), str(roles[b])) for a, b in g.edges
           if _in_class_a(roles[a]) == _in_class_a(roles[b])]
    checks.append(AuditCheck("partition", not bad, f"edges inside a class: {bad}" if bad else ""))

    shape, problems = _expected_shape(rg)
    if not problems:
        for v, r in enumerate(roles):
            got = {roles[u] for u in g.out_adj[v]}
            if got != shape.get(r, set()):
                problems.append(f"{r}: out-neighbours {sorted(map(str, got))}, expected "
                                f"{sorted(map(str, shape.get(r, set())))}")
    checks.append(AuditCheck("roles", not problems, "; ".join(problems)))

    deg_problems = []
    for v in rg.vertices_of("c"):
        size = sum(1 for u in rg.vertices_of("x") if v in g.out_adj[u])
        if g.d_out(v) != size + 1:
            deg_problems.append(f"d_out({roles[v]}) = {g.d_out(v)}, |C| + 1 = {size + 1}")
    checks.append(AuditCheck("clause_degree", not deg_problems, "; ".join(deg_problems)))

    m = len(rg.vertices_of("c"))
    ws = rg.vertices_of("w")
    w_ok = len(ws) == 1 and g.d_out(ws[0]) == m - 1
    checks.append(AuditCheck("w_degree", w_ok,
                             "" if w_ok else f"expected one w with out-degree {m - 1}"))

    tok_problems = []
    for v, r in enumerate(roles):
        if r.kind == "x":
            want = 2 * (g.d_out(v) + 1)
        elif r.kind in ("c", "parity"):
            want = 1
        else:
            want = 0
        if init[v] != want:
            tok_problems.append(f"{r} holds {init[v]}, expected {want}")
    checks.append(AuditCheck("tokens", not tok_problems, "; ".join(tok_problems)))

    n = len(rg.vertices_of("x"))
    par = rg.vertices_of("parity")
    par_ok = len(par) == n % 2 and all(g.d_out(v) == 0 for v in par)
    checks.append(AuditCheck("parity_vertex", par_ok,
                             "" if par_ok else f"n = {n} but {len(par)} parity vertices"))
    return AuditReport(checks)


# dynamic checks

DEAD_END_KINDS = ("cpath", "wpath")


def _is_dead_end(r: Role) -> bool:
    return r.kind in DEAD_END_KINDS or (r.kind == "q" and r.idx[1] >= 2)


@dataclass
class ClaimReport:
    """Result of exploring every playout from the initial position.

    ``even_moves`` is the main verdict: each finished playout made an even
    number of moves inside G1 and inside G2.  The other flags record that the
    path vertices are never playable and no clause vertex is played twice.
    """

    even_moves: bool
    dead_ends_inert: bool
    clauses_once: bool
    states: int
    witness: list[Move] | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.even_moves and self.dead_ends_inert and self.clauses_once


def verify_claim_even_moves(rg: ReductionGraph,
                            max_states: int = DEFAULT_MAX_ENTRIES) -> ClaimReport:
    g = rg.graph
    roles = rg.roles
    group = [SUBGRAPH[r.kind] for r in roles]
    need = [g.d_out(v) + 1 for v in range(g.n)]
    dead = [v for v in range(g.n) if _is_dead_end(roles[v])]
    clause_bit = {v: 1 << k for k, v in enumerate(rg.vertices_of("c"))}

    # state: (position, G1 parity, G2 parity, mask of clause vertices played)
    start = (rg.init, 0, 0, 0)
    parent: dict = {start: None}
    stack = [start]
    report = ClaimReport(True, True, True, 0)

    def playout(state) -> list[Move]:
        moves = []
        while parent[state] is not None:
            state, mv = parent[state]
            moves.append(mv)
        return moves[::-1]

    def fail(attr: str, state, msg: str) -> None:
        setattr(report, attr, False)
        if report.witness is None:
            report.witness = playout(state)
            report.detail = msg

    while stack:
        state = stack.pop()
        pos, p1, p2, played = state
        for v in dead:
            if pos[v] >= need[v]:
                fail("dead_ends_inert", state, f"{roles[v]} became playable")
        terminal = True
        for v in range(g.n):
            t = pos[v]
            if t < need[v]:
                continue
            terminal = False
            bit = clause_bit.get(v, 0)
            if bit & played:
                fail("clauses_once", state, f"{roles[v]} playable a second time")
            base = list(pos)
            for u in g.out_adj[v]:
                base[u] += 1
            q1 = p1 ^ (group[v] == "G1")
            q2 = p2 ^ (group[v] == "G2")
            for r in range(need[v], t + 1):
                base[v] = t - r
                nxt = (tuple(base), q1, q2, played | bit)
                if nxt not in parent:
                    if len(parent) >= max_states:
                        raise ResourceLimitError(max_states)
                    parent[nxt] = (state, Move(v, r))
                    stack.append(nxt)
        if terminal and (p1 or p2):
            fail("even_moves", state,
                 f"playout ends with odd move count in {'G1' if p1 else 'G2'}")
    report.states = len(parent)
    return report


@dataclass
class EquivalenceReport:
    formula_winner: Player
    dyn_outcome: Outcome | None
    agree: bool | None


class IncompleteCheck(ResourceLimitError):
    def __init__(self, limit: int, report: EquivalenceReport):
        super().__init__(limit)
        self.report = report


def check_equivalence(f: PosCnf, max_entries: int = DEFAULT_MAX_ENTRIES) -> EquivalenceReport:
    """Compare the formula game winner with the outcome of the reduction graph.

    They agree when P1 wins exactly if the first player wins on the graph.
    """
    winner = poscnf_winner(f)
    rg = build_reduction(f)
    try:
        is_p = is_p_position(dyn_rules(rg.graph), rg.init, MemoTable(max_entries))
    except ResourceLimitError:
        raise IncompleteCheck(max_entries, EquivalenceReport(winner, None, None)) from None
    dyn = Outcome.P if is_p else Outcome.N
    return EquivalenceReport(winner, dyn, (winner is Player.P1) == (dyn is Outcome.N))
