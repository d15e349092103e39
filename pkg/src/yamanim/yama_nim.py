"""Two-pile Yama Nim: remove at least two tokens from one pile, add one to the other."""

from __future__ import annotations

import numpy as np

from .game_core import GameRules

YamaPosition = tuple[int, int]


def yama_options(p: YamaPosition) -> list[YamaPosition]:
    """Options of ``(x, y)``, pile 1 first, removal amount ascending."""
    x, y = p
    return ([(x - i, y + 1) for i in range(2, x + 1)]
            + [(x + 1, y - i) for i in range(2, y + 1)])


def yama_is_p(p: YamaPosition) -> bool:
    x, y = p
    return abs(x - y) <= 1


def yama_sg(p: YamaPosition) -> int:
    x, y = p
    if abs(x - y) <= 1:
        return 0
    return min(x, y) + 1


class YamaRules(GameRules):
    def options(self, position):
        return yama_options(position)

    def measure(self, position):
        return position[0] + position[1]


def yama_table(bound: int) -> np.ndarray:
    """``(bound+1) x (bound+1)`` array of closed-form SG values, indexed ``[x, y]``."""
    x = np.arange(bound + 1)[:, None]
    y = np.arange(bound + 1)[None, :]
    table = np.minimum(x, y) + 1
    table[np.abs(x - y) <= 1] = 0
    return table
