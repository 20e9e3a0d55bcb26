"""brookslab: constructive Brooks-type colorings on finite and windowed graphs.

Submodules: ``graph`` (graphs, windows, blocks), ``coloring`` (checking,
greedy and exhaustive list coloring), ``gallai``, ``oneended``, ``brooks``
and ``factor`` (Cayley windows and factor-of-IID experiments).
"""
from .brooks import BrooksInstance, brooks_color, even_equivalence, two_color
from .coloring import brute_force_list_color, check_coloring, greedy_color
from .errors import (
    BrooksLabError,
    BudgetExceededError,
    GraphFormatError,
    InvariantViolation,
    PreconditionError,
    WindowTooSmallError,
)
from .gallai import classify_component, color_non_gallai
from .graph import Graph, WindowedGraph, blocks, build_graph, parse_edge_list
from .oneended import OneEndedFunction, one_ended_forest, pointaway, rank_list_color

__version__ = "0.1.0"

__all__ = [
    "BrooksInstance", "brooks_color", "even_equivalence", "two_color",
    "brute_force_list_color", "check_coloring", "greedy_color",
    "BrooksLabError", "BudgetExceededError", "GraphFormatError", "InvariantViolation",
    "PreconditionError", "WindowTooSmallError",
    "classify_component", "color_non_gallai",
    "Graph", "WindowedGraph", "blocks", "build_graph", "parse_edge_list",
    "OneEndedFunction", "one_ended_forest", "pointaway", "rank_list_color",
]
