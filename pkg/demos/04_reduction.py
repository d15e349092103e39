"""
From positive CNF to Digraph Yama Nim
=====================================

Build the reduction graph of a small formula, audit its shape, check that
every playout makes an even number of moves in the variable and clause parts,
and compare the two games' winners.
"""

# %%
from yamanim.boardfile import dump_board
from yamanim.reduction import (audit_reduction, build_reduction, check_equivalence,
                               enumerate_poscnfs, parse_poscnf, poscnf_winner,
                               verify_claim_even_moves)

# %%
f = parse_poscnf("p poscnf 6 3\n1 0\n2 3 4 0\n2 5 6 0\n")
rg = build_reduction(f)
print(rg.graph.n, "vertices")
for check in audit_reduction(rg).checks:
    print(f"{check.name:15} {'ok' if check.ok else check.detail}")
print("formula winner:", poscnf_winner(f))

# %%
print(dump_board(rg.graph, rg.init, rg.role_labels())[:400], "...")

# %%
# every formula with at most 3 variables and 2 clauses
for g in enumerate_poscnfs(3, 2, 3):
    eq = check_equivalence(g)
    claim = verify_claim_even_moves(build_reduction(g))
    print(g.clauses, eq.formula_winner, eq.dyn_outcome, "agree" if eq.agree else "DISAGREE",
          "parity ok" if claim.holds else "parity BROKEN")
