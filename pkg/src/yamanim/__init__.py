"""Digraph Yama Nim: solvers, closed-form classifiers and the hardness reduction."""

from .digraph_yama import (AuxRules, Digraph, DigraphRules, G4Partition, GraphError, Move,
                           aux_outcome, aux_rules, check_graph, dyn_best_move, dyn_moves,
                           dyn_rules, total_tokens, validate_graph)
from .game_core import (GameRules, MemoTable, Outcome, ResourceLimitError, SolveStats,
                        best_move, is_p_position, mex, outcome, sg_value, sum_game, sum_sg)
from .structure_theorems import (ClassificationResult, Method, classify_auto,
                                 classify_g4_even, classify_g4_odd, detect_g4, g5_is_p,
                                 g6_is_p, w0_expansion)
from .yama_nim import YamaRules, yama_is_p, yama_options, yama_sg

__version__ = "0.1.0"
