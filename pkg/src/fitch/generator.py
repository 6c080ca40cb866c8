"""Seeded random scenario generation and the two-pipeline benchmark.

The PRNG is numpy's PCG64 (a named generator with published reference
outputs), seeded per config, so identical configs give byte-identical
artifacts on every platform.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .digraph import Digraph
from .phylo_tree import EdgeLabeledTree, Node, canonical_form, extract_relation

MODES = ("binary-yule", "random-multifurcating")


@dataclass(frozen=True)
class ScenarioConfig:
    """n leaves, HGT probability p per edge, PRNG seed, topology mode."""

    n: int
    p: float
    seed: int
    mode: str = "binary-yule"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2 leaves")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be in [0, 1]")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


def _yule_children(n: int, rng: np.random.Generator) -> list:
    """Child lists of a random binary tree grown by repeated leaf splits.

    Node 0 is the root; a node is a leaf iff its child list is empty.
    """
    kids: list[list[int]] = [[1, 2], [], []]
    leaves = [1, 2]
    while len(leaves) < n:
        pos = int(rng.integers(len(leaves)))
        v = leaves[pos]
        a, b = len(kids), len(kids) + 1
        kids[v] = [a, b]
        kids.append([])
        kids.append([])
        # replace the split leaf in place, append the sibling
        leaves[pos] = a
        leaves.append(b)
    return kids


def _multifurcating_children(n: int, rng: np.random.Generator) -> list:
    """Child lists of a random multifurcating phylogenetic tree: each
    internal node splits its leaf count into a uniform random composition
    of >= 2 blocks."""
    kids: list[list[int]] = [[]]
    # stack of (node id, number of leaves to place below it)
    stack = [(0, n)]
    while stack:
        v, m = stack.pop()
        if m == 1:
            continue
        nblocks = int(rng.integers(2, m + 1))
        cuts = np.sort(rng.choice(m - 1, size=nblocks - 1, replace=False)) + 1
        sizes = np.diff(np.concatenate(([0], cuts, [m])))
        for size in sizes.tolist():
            c = len(kids)
            kids.append([])
            kids[v].append(c)
            stack.append((c, size))
    return kids


def random_tree(cfg: ScenarioConfig) -> EdgeLabeledTree:
    """Seeded random phylogenetic tree on leaves l1..ln with each edge
    labeled 1 independently with probability p."""
    rng = np.random.default_rng(cfg.seed)
    if cfg.mode == "binary-yule":
        kids = _yule_children(cfg.n, rng)
    else:
        kids = _multifurcating_children(cfg.n, rng)
    # leaf names in preorder appearance, labels drawn in node-id order
    labels = rng.random(len(kids)) < cfg.p
    parents = [None] * len(kids)
    for v, cs in enumerate(kids):
        for c in cs:
            parents[c] = v
    counter = 0
    names = [None] * len(kids)
    stack = [0]
    while stack:
        v = stack.pop()
        if not kids[v]:
            counter += 1
            names[v] = f"l{counter}"
        stack.extend(reversed(kids[v]))
    nodes = [
        Node(
            parents[v],
            tuple(kids[v]),
            None if v == 0 else int(labels[v]),
            names[v],
        )
        for v in range(len(kids))
    ]
    return EdgeLabeledTree(nodes, root=0)


def random_fitch(cfg: ScenarioConfig) -> Digraph:
    """Relation of a random tree; Fitch by construction."""
    return extract_relation(random_tree(cfg))


def bench(sizes: Iterable[int], template: ScenarioConfig) -> list:
    """Run both reconstruction pipelines on identical random inputs.

    Returns rows (n, algo, ms, tree_vertices); outputs of the two
    pipelines are cross-checked for canonical equality before any timing
    is reported.
    """
    from .dicotree import tree_from_cotree
    from .oracle import derive_triangle_catalog
    from .triples import tree_from_triples

    cat = derive_triangle_catalog()
    rows = []
    for n in sizes:
        cfg = replace(template, n=n)
        g = random_fitch(cfg)
        results = {}
        timings = {}
        for algo, fn in (("triples", tree_from_triples), ("cotree", tree_from_cotree)):
            t0 = time.perf_counter()
            tree = fn(g, cat) if algo == "triples" else fn(g)
            timings[algo] = (time.perf_counter() - t0) * 1000.0
            results[algo] = tree
        if canonical_form(results["triples"]) != canonical_form(results["cotree"]):
            raise AssertionError(f"pipelines disagree at n={n}")
        for algo in ("triples", "cotree"):
            rows.append((n, algo, timings[algo], len(results[algo].nodes)))
    return rows
