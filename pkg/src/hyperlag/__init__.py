"""Lagrangians of uniform hypergraphs: exact values, optimization, freeness and density probes."""

from .errors import HypergraphError, ParseError
from .freeness import FreenessWitness, contains, extension, free_of_family
from .hypergraph import (
    FamilySpec,
    Hypergraph,
    canonical_form,
    complete_graph,
    construct,
    covers_pairs,
    delete,
    disjoint_union,
    link_graph,
    s2n,
    star,
)
from .io import parse_hg, read_graph, write_graph
from .lagrangian import (
    MaximizeConfig,
    OptimizationResult,
    WeightVector,
    brute_force_lambda,
    complete_lambda,
    evaluate,
    is_dense,
    maximize,
    motzkin_straus,
    symmetrize,
)
from .search import SearchBudget, SearchReport, lambda_perfect_scan, search

__version__ = "0.1.0"

__all__ = [
    "HypergraphError",
    "ParseError",
    "FreenessWitness",
    "contains",
    "extension",
    "free_of_family",
    "FamilySpec",
    "Hypergraph",
    "canonical_form",
    "complete_graph",
    "construct",
    "covers_pairs",
    "delete",
    "disjoint_union",
    "link_graph",
    "s2n",
    "star",
    "parse_hg",
    "read_graph",
    "write_graph",
    "MaximizeConfig",
    "OptimizationResult",
    "WeightVector",
    "brute_force_lambda",
    "complete_lambda",
    "evaluate",
    "is_dense",
    "maximize",
    "motzkin_straus",
    "symmetrize",
    "SearchBudget",
    "SearchReport",
    "lambda_perfect_scan",
    "search",
]
