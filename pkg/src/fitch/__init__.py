"""Directed xenology (Fitch) graphs: recognition, tree reconstruction, editing.

The package is organised around two reconstruction pipelines for the same
object -- the unique least-resolved edge-labeled tree explaining a Fitch
graph -- plus an exhaustive small-scale oracle used to cross-validate both.
"""

import sys

# Trees built from caterpillar-heavy inputs can be ~n deep; the default
# recursion limit of 1000 is too small for the sizes the benchmarks use.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))

from .digraph import (
    Digraph,
    TriangleCatalog,
    TriangleClass,
    classify_triangle,
    find_invalid_triangle,
    induced_subrelation,
    is_fitch,
    triangle_pattern,
)
from .phylo_tree import (
    EdgeLabeledTree,
    canonical_form,
    contract_edge,
    displays,
    extract_relation,
    is_irrelevant_edge,
    is_least_resolved,
    lca,
    reduce_least_resolved,
    restrict,
)
from .triples import (
    InconsistentTriplesError,
    NotFitchError,
    RootedTriple,
    build_aho,
    informative_triples,
    label_tree,
    tree_from_triples,
)
from .dicotree import (
    Cotree,
    NotDiCographError,
    check_fitch_cotree,
    cotree_to_fitch_tree,
    decompose,
    tree_from_cotree,
)
from .oracle import (
    brute_force_is_valid,
    brute_force_min_tree,
    derive_triangle_catalog,
    enumerate_labeled_trees,
)
from .editing import (
    EditBudget,
    EditSolution,
    brute_force_modification,
    solve_modification,
)
from .generator import ScenarioConfig, bench, random_fitch, random_tree

__all__ = [
    "Digraph",
    "TriangleCatalog",
    "TriangleClass",
    "classify_triangle",
    "find_invalid_triangle",
    "induced_subrelation",
    "is_fitch",
    "triangle_pattern",
    "EdgeLabeledTree",
    "canonical_form",
    "contract_edge",
    "displays",
    "extract_relation",
    "is_irrelevant_edge",
    "is_least_resolved",
    "lca",
    "reduce_least_resolved",
    "restrict",
    "InconsistentTriplesError",
    "NotFitchError",
    "RootedTriple",
    "build_aho",
    "informative_triples",
    "label_tree",
    "tree_from_triples",
    "Cotree",
    "NotDiCographError",
    "check_fitch_cotree",
    "cotree_to_fitch_tree",
    "decompose",
    "tree_from_cotree",
    "brute_force_is_valid",
    "brute_force_min_tree",
    "derive_triangle_catalog",
    "enumerate_labeled_trees",
    "EditBudget",
    "EditSolution",
    "brute_force_modification",
    "solve_modification",
    "ScenarioConfig",
    "bench",
    "random_fitch",
    "random_tree",
]
