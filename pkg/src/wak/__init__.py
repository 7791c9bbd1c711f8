"""Exact solver toolkit for Weighted Arc-Kayles."""

__version__ = "0.1.0"

from .core import (GameMove, GamePosition, Outcome, apply_move, connected_components, disjoint_union,
                   format_position, legal_moves, parse_position, position_from_json, position_to_json,
                   strip_dead_vertices)
from .reduce import ReductionStep, canonicalize, certificate, reduce_once
from .solver import Solver, TranspositionTable, best_moves, grundy, grundy_of_sum, mex, outcome

__all__ = [
    "GameMove", "GamePosition", "Outcome", "ReductionStep", "Solver", "TranspositionTable",
    "apply_move", "best_moves", "canonicalize", "certificate", "connected_components",
    "disjoint_union", "format_position", "grundy", "grundy_of_sum", "legal_moves", "mex",
    "outcome", "parse_position", "position_from_json", "position_to_json", "reduce_once",
    "strip_dead_vertices",
]
