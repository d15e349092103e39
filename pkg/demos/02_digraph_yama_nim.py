"""
Playing on a digraph
====================

A move at vertex v removes at least d_out(v) + 1 tokens from v and drops one
token on each out-neighbour.  With no edges this is Nim; on the 2-cycle it is
Yama Nim.
"""

# %%
from functools import reduce
from operator import xor

from yamanim import Digraph, dyn_best_move, dyn_moves, dyn_rules, sg_value, sum_game

# %%
nim3 = Digraph(3, ((), (), ()))
print(sg_value(dyn_rules(nim3), (3, 5, 7)), reduce(xor, (3, 5, 7)))

# %%
cycle = Digraph.from_edges(2, [(0, 1), (1, 0)])
for move, succ in dyn_moves(cycle, (4, 0)):
    print(move, succ)
print("SG(5, 2) on the 2-cycle:", sg_value(dyn_rules(cycle), (5, 2)))

# %%
# a directed triangle: tokens circulate, but the total still drops each move
tri = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0)], ["a", "b", "c"])
rules = dyn_rules(tri)
print("SG:", sg_value(rules, (4, 4, 5)))
print("winning move:", dyn_best_move(tri, (4, 4, 5)))

# %%
# disjunctive sum of the triangle and the 2-cycle: value is the nim-sum
s = sum_game(rules, dyn_rules(cycle))
print(sg_value(s, ((4, 4, 5), (5, 2))), sg_value(rules, (4, 4, 5)) ^ 3)
