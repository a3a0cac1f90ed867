"""Descendents of Q-polynomial distance-regular graphs, with exact arithmetic."""

from .graphs import BudgetExceeded, DistanceRegularGraph, Graph, NotDistanceRegular, build
from .leonard import ClassicalParameters, ParameterArray, detect_classical, expand, fit_from_graph, rho_descendent
from .scheme import build_scheme
from .subsets import analyze, enumerate_descendents
from .verify import verify_all

__all__ = [
    "BudgetExceeded",
    "ClassicalParameters",
    "DistanceRegularGraph",
    "Graph",
    "NotDistanceRegular",
    "ParameterArray",
    "analyze",
    "build",
    "build_scheme",
    "detect_classical",
    "enumerate_descendents",
    "expand",
    "fit_from_graph",
    "rho_descendent",
    "verify_all",
]
__version__ = "0.1.0"
