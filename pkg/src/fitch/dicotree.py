"""Di-cograph decomposition into an ordered cotree, the structural check
that a cotree describes a Fitch graph, and the caterpillar transform that
turns such a cotree into an explaining edge-labeled tree.

The decomposition is a quotient recursion: at every level the vertex set
is split by parallel, series or order composition (in that order of
attempts); failure of all three on a multi-vertex set certifies a
forbidden induced subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .digraph import Digraph
from .phylo_tree import EdgeLabeledTree, TreeSpec, reduce_least_resolved
from .triples import NotFitchError

PAR0 = "par0"
SER1 = "ser1"
DIR1 = "dir1"


class NotDiCographError(Exception):
    """No parallel/series/order split exists; ``witness`` is the vertex
    set of the undecomposable quotient."""

    def __init__(self, witness):
        super().__init__(f"not a di-cograph (witness: {sorted(witness)})")
        self.witness = witness


@dataclass(frozen=True)
class Cotree:
    """Ordered cotree node.  Inner nodes carry a composition label and at
    least two children; leaves carry a vertex name.  Children of a dir1
    node are ordered so that all arcs point left-to-right."""

    label: Optional[str] = None
    name: Optional[str] = None
    children: tuple = ()

    def __post_init__(self):
        if self.children:
            if self.label not in (PAR0, SER1, DIR1):
                raise ValueError(f"bad inner label {self.label!r}")
            if self.name is not None:
                raise ValueError("inner cotree nodes are unnamed")
            if len(self.children) < 2:
                raise ValueError("inner cotree nodes need >= 2 children")
            for c in self.children:
                if c.label == self.label:
                    raise ValueError("adjacent cotree labels must differ")
        else:
            if self.label is not None:
                raise ValueError("leaves carry no label")
            if not self.name:
                raise ValueError("leaf needs a vertex name")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaf_names(self) -> list:
        out = []
        stack = [self]
        while stack:
            nd = stack.pop()
            if nd.is_leaf:
                out.append(nd.name)
            else:
                stack.extend(reversed(nd.children))
        return out


def _components(adj: np.ndarray) -> list:
    """Connected components of a symmetric boolean adjacency matrix,
    as index arrays in ascending order of smallest member."""
    m = adj.shape[0]
    unseen = np.ones(m, dtype=bool)
    comps = []
    while unseen.any():
        start = int(np.argmax(unseen))
        comp = np.zeros(m, dtype=bool)
        frontier = np.zeros(m, dtype=bool)
        comp[start] = frontier[start] = True
        while frontier.any():
            nxt = adj[frontier].any(axis=0) & ~comp
            comp |= nxt
            frontier = nxt
        unseen &= ~comp
        comps.append(np.nonzero(comp)[0])
    return comps


def _decompose(M: np.ndarray, idx: np.ndarray, names: tuple) -> Cotree:
    if len(idx) == 1:
        return Cotree(name=names[int(idx[0])])
    A = M[np.ix_(idx, idx)]
    m = len(idx)
    off = ~np.eye(m, dtype=bool)

    # (a) parallel: weak connected components
    comps = _components(A | A.T)
    if len(comps) > 1:
        kids = tuple(_decompose(M, idx[c], names) for c in comps)
        return Cotree(label=PAR0, children=kids)

    # (b) series: components of "not both arcs"
    both = A & A.T
    comps = _components(~both & off)
    if len(comps) > 1:
        kids = tuple(_decompose(M, idx[c], names) for c in comps)
        return Cotree(label=SER1, children=kids)

    # (c) order: components of "not exactly one arc"; cross pairs then
    # carry exactly one arc each, so only direction uniformity is left
    # to verify
    one = A != A.T
    comps = _components(~one & off)
    if len(comps) > 1:
        # in a valid order composition every member of a component has the
        # same external out-degree, strictly decreasing along the order;
        # rank by one representative, then verify the full block structure
        inside = np.zeros(m, dtype=bool)
        wins = []
        for c in comps:
            inside[:] = False
            inside[c] = True
            wins.append(int(A[int(c[0])][~inside].sum()))
        order = sorted(range(len(comps)), key=lambda t: -wins[t])
        ok = all(
            A[np.ix_(comps[order[p]], comps[order[q]])].all()
            for p in range(len(comps))
            for q in range(p + 1, len(comps))
        )
        if ok:
            kids = tuple(
                _decompose(M, idx[comps[t]], names) for t in order
            )
            return Cotree(label=DIR1, children=kids)

    raise NotDiCographError(tuple(names[int(i)] for i in idx))


def decompose(g: Digraph) -> Cotree:
    """Unique ordered cotree of a di-cograph; NotDiCographError otherwise."""
    if len(g) < 1:
        raise ValueError("need at least one vertex")
    if len(g) == 1:
        return Cotree(name=g.vertices[0])
    M = g.adjacency_matrix()
    return _decompose(M, np.arange(len(g)), g.vertices)


def cotree_relation(ct: Cotree) -> Digraph:
    """Relation defined by the lca-label rule; used to cross-check that
    decomposition is faithful."""
    arcs = []

    def walk(node: Cotree) -> list:
        if node.is_leaf:
            return [node.name]
        groups = [walk(c) for c in node.children]
        for i, gi in enumerate(groups):
            for j, gj in enumerate(groups):
                if i == j:
                    continue
                if node.label == SER1:
                    arcs.extend((u, v) for u in gi for v in gj)
                elif node.label == DIR1 and i < j:
                    arcs.extend((u, v) for u in gi for v in gj)
        return [x for grp in groups for x in grp]

    leaves = walk(ct)
    return Digraph(leaves, arcs)


def check_fitch_cotree(ct: Cotree) -> Optional[tuple]:
    """None iff the cotree's relation is a Fitch graph; otherwise the
    offending inner-node pair (ancestor, descendant).

    Violations: (i) a par0 node with any inner descendant; (ii) a dir1
    node with a ser1 node inside a non-rightmost child subtree.
    """
    # stack entries: (node, nearest par0 ancestor, nearest dir1 ancestor
    # left via a non-rightmost child)
    stack = [(ct, None, None)]
    while stack:
        node, par0_anc, dir1_anc = stack.pop()
        if node.is_leaf:
            continue
        if node is not ct:
            if par0_anc is not None and node.label != PAR0:
                return (par0_anc, node)
            if dir1_anc is not None and node.label == SER1:
                return (dir1_anc, node)
        p = node if node.label == PAR0 else par0_anc
        last = len(node.children) - 1
        for pos, child in enumerate(node.children):
            if node.label == DIR1 and pos != last:
                d = node
            else:
                d = dir1_anc
            stack.append((child, p, d))
    return None


def _fitch_spec(node: Cotree) -> TreeSpec:
    """Subtree spec (without the edge label to the parent)."""
    if node.is_leaf:
        return node.name
    if node.label in (PAR0, SER1):
        lab = 0 if node.label == PAR0 else 1
        return [(_fitch_spec(c), lab) for c in node.children]
    # dir1: caterpillar (x1,(x2,(...(x_{k-1},xk)...))); inner edges and the
    # edge to xk get 1, the edges to x1..x_{k-1} get 0
    subs = [_fitch_spec(c) for c in node.children]
    cur = [(subs[-2], 0), (subs[-1], 1)]
    for s in reversed(subs[:-2]):
        cur = [(s, 0), (cur, 1)]
    return cur


def cotree_to_fitch_tree(ct: Cotree) -> EdgeLabeledTree:
    """Edge-labeled tree explaining the cotree's relation; requires the
    cotree to pass check_fitch_cotree.  Not necessarily least-resolved."""
    bad = check_fitch_cotree(ct)
    if bad is not None:
        raise ValueError(f"cotree does not describe a Fitch graph: {bad}")
    if ct.is_leaf:
        raise ValueError("single-vertex cotree has no tree representation")
    return EdgeLabeledTree.from_spec(_fitch_spec(ct))


def tree_from_cotree(g: Digraph) -> EdgeLabeledTree:
    """Least-resolved explaining tree via decomposition; NotFitchError
    (with the failing witness) when g is not Fitch."""
    if len(g) < 2:
        raise ValueError("relation must have at least 2 vertices")
    try:
        ct = decompose(g)
    except NotDiCographError as e:
        raise NotFitchError(e.witness) from e
    bad = check_fitch_cotree(ct)
    if bad is not None:
        raise NotFitchError(bad)
    return reduce_least_resolved(cotree_to_fitch_tree(ct))
