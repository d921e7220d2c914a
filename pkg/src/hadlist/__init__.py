"""Exact tools for list colouring with colour classes on K_t-minor-free graphs:
minor search, (lambda, C)-list colouring, obstacle gadgets and their
clique-sum compositions."""
from .colouring import (ListAssignment, clique_sdr, find_bfold, find_coloring,
                        is_valid_assignment)
from .errors import BudgetExceeded, CapExceeded, InvalidInput
from .graph import Graph, clique_sum
from .lambdas import ColourClasses, Lambda, leq_order, parse_lambda
from .minors import MinorModel, find_kt_minor, verify_minor_model

__all__ = [
    "BudgetExceeded", "CapExceeded", "ColourClasses", "Graph", "InvalidInput",
    "Lambda", "ListAssignment", "MinorModel", "clique_sdr", "clique_sum",
    "find_bfold", "find_coloring", "find_kt_minor", "is_valid_assignment",
    "leq_order", "parse_lambda", "verify_minor_model",
]
