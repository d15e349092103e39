"""
Graphs with a fully fed sink layer
==================================

When every non-sink feeds every sink, the game collapses onto the sink
tokens: an odd number of sinks gives SG = nim-sum of the sink tokens, an even
number needs one extra bit, the outcome of the game on the non-sinks alone.
"""

# %%
from yamanim import (Digraph, classify_auto, detect_g4, dyn_rules, is_p_position, sg_value,
                     w0_expansion)
from yamanim.digraph_yama import aux_outcome

# %%
# odd case: three sinks under a 2-cycle
g = Digraph.from_edges(5, [(0, 1), (1, 0)] + [(v, w) for v in (0, 1) for w in (2, 3, 4)])
part = detect_g4(g)
print(part)
for p in [(6, 2, 1, 2, 3), (0, 9, 5, 1, 1)]:
    print(p, classify_auto(g, p), "search:", sg_value(dyn_rules(g), p))

# %%
# the diamond and the star have their own closed forms
diamond = Digraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
print(classify_auto(diamond, (9, 4, 3, 3)), is_p_position(dyn_rules(diamond), (9, 4, 3, 3)))
star = Digraph.from_edges(3, [(0, 1), (0, 2)])
print(classify_auto(star, (3, 1, 0)), is_p_position(dyn_rules(star), (3, 1, 0)))

# %%
# the V1-only game equals plain play once the sinks are made inert
dpart = detect_g4(diamond)
for x in [(4, 0), (7, 3), (8, 1)]:
    h, q = w0_expansion(diamond, dpart, x + (0, 0))
    print(x, aux_outcome(diamond, dpart, x), "P" if is_p_position(dyn_rules(h), q) else "N")
