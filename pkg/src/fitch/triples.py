"""Reconstruction via informative triples: per-triangle triple extraction,
the classical BUILD (Aho) recursion, and the in-degree edge labeling that
turns the Aho tree into the least-resolved explaining tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .digraph import Digraph, TriangleCatalog
from .phylo_tree import EdgeLabeledTree, Node, TreeSpec


class NotFitchError(Exception):
    """Input relation is not a Fitch graph; ``witness`` localizes why."""

    def __init__(self, witness):
        super().__init__(f"not a Fitch graph (witness: {witness})")
        self.witness = witness


class InconsistentTriplesError(Exception):
    """No tree displays all given triples."""


@dataclass(frozen=True)
class RootedTriple:
    """Rooted triple ab|c: the pair {a,b} is grouped below the outlier c."""

    pair: frozenset
    outlier: str

    def __post_init__(self):
        if len(self.pair) != 2 or self.outlier in self.pair:
            raise ValueError("triple needs three pairwise distinct leaves")

    def __str__(self):
        a, b = sorted(self.pair)
        return f"{a}{b}|{self.outlier}"


def _informative_index_arrays(g: Digraph, cat: TriangleCatalog):
    """Informative triples as three parallel index arrays (pair a, pair b,
    outlier c) into g.vertices; vectorized over all vertex triples."""
    n = len(g.vertices)
    if n < 3:
        z = np.zeros(0, dtype=np.int32)
        return z, z, z
    M = g.adjacency_matrix().astype(np.int32)
    info = np.array([c.informative for c in cat.by_pattern], dtype=bool)
    tmpl = np.zeros((64, 3), dtype=np.int32)
    for p, c in enumerate(cat.by_pattern):
        if c.informative:
            (p1, p2), po = c.template
            tmpl[p] = (p1, p2, po)
    outs = []
    for i in range(n - 2):
        J, K = np.triu_indices(n - i - 1, k=1)
        J = (J + i + 1).astype(np.int32)
        K = (K + i + 1).astype(np.int32)
        pat = (
            M[i, J]
            + 2 * M[J, i]
            + 4 * M[i, K]
            + 8 * M[K, i]
            + 16 * M[J, K]
            + 32 * M[K, J]
        )
        keep = info[pat]
        if not keep.any():
            continue
        Js, Ks, pats = J[keep], K[keep], pat[keep]
        trip = np.stack(
            [np.full(len(Js), i, dtype=np.int32), Js, Ks], axis=1
        )
        picked = np.take_along_axis(trip, tmpl[pats], axis=1)
        outs.append(picked)
    if not outs:
        z = np.zeros(0, dtype=np.int32)
        return z, z, z
    picked = np.concatenate(outs)
    return picked[:, 0], picked[:, 1], picked[:, 2]


def informative_triples(g: Digraph, cat: TriangleCatalog) -> set:
    """Triples demanded by the informative (A5-A8) triangles of g."""
    ta, tb, tc = _informative_index_arrays(g, cat)
    verts = g.vertices
    return {
        RootedTriple(frozenset((verts[a], verts[b])), verts[c])
        for a, b, c in zip(ta.tolist(), tb.tolist(), tc.tolist())
    }


def _aho(S: np.ndarray, ta, tb, tc, names, n_total: int) -> TreeSpec:
    """BUILD recursion; S holds sorted global leaf indices, the triple
    arrays are restricted to S.  Returns a (sub, 0) spec list."""
    if len(ta) == 0:
        return [(names[i], 0) for i in S.tolist()]
    m = len(S)
    loc = np.full(n_total, -1, dtype=np.int32)
    loc[S] = np.arange(m, dtype=np.int32)
    la, lb, lc = loc[ta], loc[tb], loc[tc]
    adj = coo_matrix(
        (np.ones(len(la), dtype=np.int8), (la, lb)), shape=(m, m)
    )
    ncomp, comp = connected_components(adj, directed=False)
    if ncomp == 1:
        raise InconsistentTriplesError(
            f"triples admit no tree on {[names[i] for i in S.tolist()]}"
        )
    compa = comp[la]
    inside = compa == comp[lc]
    children = []
    for cid in range(ncomp):
        members = S[comp == cid]
        if len(members) == 1:
            children.append((names[int(members[0])], 0))
            continue
        keep = inside & (compa == cid)
        sub = _aho(members, ta[keep], tb[keep], tc[keep], names, n_total)
        children.append((sub, 0))
    return children


def build_aho(triples: Iterable[RootedTriple], leaves: Iterable[str]) -> EdgeLabeledTree:
    """Aho tree on the given leaf set, with placeholder 0 labels on every
    edge (labels are assigned separately by :func:`label_tree`).

    Raises InconsistentTriplesError when no tree displays all triples.
    Needs at least two leaves since that is the smallest tree the type
    admits.
    """
    lv = tuple(sorted(set(leaves)))
    if len(lv) < 2:
        raise ValueError("need at least 2 leaves")
    idx = {name: i for i, name in enumerate(lv)}
    ta, tb, tc = [], [], []
    for t in triples:
        a, b = sorted(t.pair)
        for name in (a, b, t.outlier):
            if name not in idx:
                raise ValueError(f"triple mentions unknown leaf {name!r}")
        ta.append(idx[a])
        tb.append(idx[b])
        tc.append(idx[t.outlier])
    spec = _aho(
        np.arange(len(lv), dtype=np.int32),
        np.asarray(ta, dtype=np.int32),
        np.asarray(tb, dtype=np.int32),
        np.asarray(tc, dtype=np.int32),
        lv,
        len(lv),
    )
    return EdgeLabeledTree.from_spec(spec)


def label_tree(topology: EdgeLabeledTree, g: Digraph) -> EdgeLabeledTree:
    """Unique correct labeling of the Aho tree of g's informative triples:
    inner edges get 1; the outer edge to leaf v gets 1 iff every other
    vertex has an arc to v."""
    if topology.leaf_names != frozenset(g.vertices):
        raise ValueError("leaf set of topology differs from vertex set")
    full = len(g.vertices) - 1
    indeg: dict = {}
    for _, v in g.arcs:
        indeg[v] = indeg.get(v, 0) + 1
    nodes = []
    for i, nd in enumerate(topology.nodes):
        if i == topology.root:
            nodes.append(nd)
        elif nd.is_leaf:
            lab = 1 if indeg.get(nd.name, 0) == full else 0
            nodes.append(Node(nd.parent, nd.children, lab, nd.name))
        else:
            nodes.append(Node(nd.parent, nd.children, 1, None))
    return EdgeLabeledTree(nodes, root=topology.root)


def tree_from_triples(g: Digraph, cat: TriangleCatalog) -> EdgeLabeledTree:
    """Least-resolved explaining tree of a Fitch graph, via the informative
    triple pipeline; raises NotFitchError with a witness triangle otherwise."""
    from .digraph import find_invalid_triangle

    witness = find_invalid_triangle(g, cat)
    if witness is not None:
        raise NotFitchError(witness)
    n = len(g)
    if n < 2:
        raise ValueError("relation must have at least 2 vertices")
    if n == 2:
        topo = EdgeLabeledTree.from_spec([(v, 0) for v in g.vertices])
    else:
        ta, tb, tc = _informative_index_arrays(g, cat)
        spec = _aho(
            np.arange(n, dtype=np.int32), ta, tb, tc, g.vertices, n
        )
        topo = EdgeLabeledTree.from_spec(spec)
    return label_tree(topo, g)
