"""
Two-pile Yama Nim
=================

Remove at least two tokens from one pile and add one to the other.  The
P-positions are the band |x - y| <= 1; off the band the SG value is
min(x, y) + 1.  Here the closed form is compared with the generic search.
"""

# %%
import numpy as np

from yamanim import MemoTable, YamaRules, sg_value, yama_sg
from yamanim.yama_nim import yama_table

# %%
# closed-form table, rows are x, columns are y
print(yama_table(8))

# %%
# the same table from exhaustive search
rules, memo = YamaRules(), MemoTable()
searched = np.array([[sg_value(rules, (x, y), memo) for y in range(41)] for x in range(41)])
print("search agrees with the formula on 0..40:", (searched == yama_table(40)).all())
print("positions solved:", len(memo))

# %%
# a winning move from (9, 2): go to a position of value 0
from yamanim import best_move
print(best_move(rules, (9, 2)), yama_sg(best_move(rules, (9, 2))))
