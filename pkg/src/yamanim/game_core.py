"""Generic solver for short impartial games under normal play.

A ruleset only has to say which positions follow a given one and supply a
non-negative integer measure that strictly drops on every move.  Everything
else (mex, Sprague-Grundy values, P/N outcomes, winning moves, disjunctive
sums) is built on top of that.

The search is an explicit-stack depth-first traversal rather than Python
recursion, so deep games do not hit the interpreter recursion limit and the
depth actually reached can be reported.
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Sequence

DEFAULT_MAX_ENTRIES = 10_000_000

Position = Hashable


class ResourceLimitError(RuntimeError):
    """Raised when a search visits more states than the configured cap."""

    def __init__(self, limit: int):
        super().__init__(f"state-space search exceeded {limit} memo entries")
        self.limit = limit


class MeasureError(AssertionError):
    """A move failed to decrease the termination measure."""


class Outcome(str, enum.Enum):
    P = "P"
    N = "N"

    def __str__(self) -> str:
        return self.value


class GameRules(ABC):
    """An impartial ruleset: an option map plus a termination witness."""

    @abstractmethod
    def options(self, position: Position) -> Sequence[Position]:
        """Successor positions, in a fixed deterministic order."""

    @abstractmethod
    def measure(self, position: Position) -> int:
        """Non-negative integer that every move strictly decreases."""


class MemoTable:
    """Write-once map from position to a solved value.

    ``max_entries`` bounds the table; exceeding it raises
    :class:`ResourceLimitError` so large instances fail loudly.
    """

    def __init__(self, max_entries: int = DEFAULT_MAX_ENTRIES):
        self.max_entries = max_entries
        self._data: dict[Position, Any] = {}

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: Position) -> bool:
        return key in self._data

    def __getitem__(self, key: Position) -> Any:
        return self._data[key]

    def get(self, key: Position, default: Any = None) -> Any:
        return self._data.get(key, default)

    def put(self, key: Position, value: Any) -> None:
        old = self._data.get(key, _MISSING)
        if old is not _MISSING:
            if old != value:
                raise ValueError(f"memo entry for {key!r} already holds {old!r}")
            return
        if len(self._data) >= self.max_entries:
            raise ResourceLimitError(self.max_entries)
        self._data[key] = value

    def items(self):
        return self._data.items()


_MISSING = object()


@dataclass
class SolveStats:
    """Counters filled in by the solvers when passed as ``stats=``."""

    max_depth: int = 0
    expanded: int = 0
    moves_checked: int = 0


def mex(values: Iterable[int]) -> int:
    """Smallest non-negative integer not in ``values``."""
    seen = set(values)
    k = 0
    while k in seen:
        k += 1
    return k


def _check_descent(rules: GameRules, parent: Position, children: Sequence[Position]) -> None:
    m = rules.measure(parent)
    for c in children:
        if not 0 <= rules.measure(c) < m:
            raise MeasureError(
                f"move {parent!r} -> {c!r} does not decrease the measure ({m})")


def sg_value(rules: GameRules, position: Position, memo: MemoTable | None = None, *,
             stats: SolveStats | None = None, check_measure: bool = False) -> int:
    """Sprague-Grundy value of ``position``.

    ``memo`` is filled with the value of every position visited and can be
    reused across calls on the same ruleset.
    """
    if memo is None:
        memo = MemoTable()
    data = memo._data
    if position in data:
        return data[position]
    cap = memo.max_entries
    options = rules.options
    max_depth = 0
    expanded = 0
    first = options(position)
    if check_measure:
        _check_descent(rules, position, first)
    # frames are [position, options, next option index]
    stack: list[list] = [[position, first, 0]]
    while stack:
        frame = stack[-1]
        opts = frame[1]
        i = frame[2]
        n = len(opts)
        while i < n and opts[i] in data:
            i += 1
        if i < n:
            frame[2] = i + 1
            child = opts[i]
            child_opts = options(child)
            if check_measure:
                _check_descent(rules, child, child_opts)
            stack.append([child, child_opts, 0])
            if len(stack) - 1 > max_depth:
                max_depth = len(stack) - 1
            continue
        stack.pop()
        pos = frame[0]
        if pos in data:
            continue
        if len(data) >= cap:
            raise ResourceLimitError(cap)
        data[pos] = mex({data[o] for o in opts})
        expanded += 1
    if stats is not None:
        stats.max_depth = max(stats.max_depth, max_depth)
        stats.expanded += expanded
    return data[position]


def is_p_position(rules: GameRules, position: Position, memo: MemoTable | None = None, *,
                  stats: SolveStats | None = None, check_measure: bool = False) -> bool:
    """Win/loss search without SG values; stops at the first winning option.

    The memo stores booleans (True for P-positions), so it must not be shared
    with :func:`sg_value`.
    """
    if memo is None:
        memo = MemoTable()
    data = memo._data
    if position in data:
        return data[position]
    cap = memo.max_entries
    options = rules.options
    max_depth = 0
    expanded = 0
    first = options(position)
    if check_measure:
        _check_descent(rules, position, first)
    stack: list[list] = [[position, first, 0]]
    while stack:
        frame = stack[-1]
        opts = frame[1]
        i = frame[2]
        n = len(opts)
        result = None
        while i < n:
            v = data.get(opts[i])
            if v is None:
                break
            if v:
                result = False
                break
            i += 1
        if result is None and i < n:
            frame[2] = i
            child = opts[i]
            child_opts = options(child)
            if check_measure:
                _check_descent(rules, child, child_opts)
            stack.append([child, child_opts, 0])
            if len(stack) - 1 > max_depth:
                max_depth = len(stack) - 1
            continue
        if result is None:
            result = True
        stack.pop()
        pos = frame[0]
        if pos not in data:
            if len(data) >= cap:
                raise ResourceLimitError(cap)
            data[pos] = result
            expanded += 1
    if stats is not None:
        stats.max_depth = max(stats.max_depth, max_depth)
        stats.expanded += expanded
    return data[position]


def outcome(rules: GameRules, position: Position, memo: MemoTable | None = None, *,
            method: str = "winloss") -> Outcome:
    """P/N classification, via ``"winloss"`` search (default) or ``"sg"``."""
    if method == "sg":
        return Outcome.P if sg_value(rules, position, memo) == 0 else Outcome.N
    if method == "winloss":
        return Outcome.P if is_p_position(rules, position, memo) else Outcome.N
    raise ValueError(f"unknown method {method!r}")


def best_move(rules: GameRules, position: Position,
              memo: MemoTable | None = None) -> Position | None:
    """First option with SG value 0, or None from a P-position.

    Ties go to enumeration order of ``rules.options``.
    """
    if memo is None:
        memo = MemoTable()
    for q in rules.options(position):
        if sg_value(rules, q, memo) == 0:
            return q
    return None


def sum_sg(rules1: GameRules, p1: Position, rules2: GameRules, p2: Position,
           memo1: MemoTable | None = None, memo2: MemoTable | None = None) -> int:
    """SG value of the disjunctive sum, computed component-wise as a nim-sum."""
    return sg_value(rules1, p1, memo1) ^ sg_value(rules2, p2, memo2)


class SumRules(GameRules):
    """Disjunctive sum: positions are pairs, a move is a move in one component."""

    def __init__(self, left: GameRules, right: GameRules):
        self.left = left
        self.right = right

    def options(self, position):
        a, b = position
        return ([(a2, b) for a2 in self.left.options(a)]
                + [(a, b2) for b2 in self.right.options(b)])

    def measure(self, position):
        a, b = position
        return self.left.measure(a) + self.right.measure(b)


def sum_game(rules1: GameRules, rules2: GameRules) -> SumRules:
    return SumRules(rules1, rules2)


class TerminalRules(GameRules):
    """The game with a single position and no moves."""

    def options(self, position):
        return ()

    def measure(self, position):
        return 0
