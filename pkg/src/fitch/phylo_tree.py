"""Rooted edge-labeled phylogenetic trees and the operations that connect
them to xenology relations: relation extraction, labeled restriction,
extended contraction, least-resolved reduction and canonical forms.

A tree value is immutable.  Nodes are addressed by integer ids (preorder of
construction); an edge is identified by the id of its lower endpoint.
Every edge carries a {0,1} label, stored on the child node; the root has
no label.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .digraph import Digraph

# Construction spec: a leaf is its name; an inner node is a sequence of
# (child spec, edge label) pairs.
TreeSpec = Union[str, Sequence[tuple["TreeSpec", int]]]


@dataclass(frozen=True)
class Node:
    parent: Optional[int]
    children: tuple[int, ...]
    label: Optional[int]
    name: Optional[str]

    @property
    def is_leaf(self) -> bool:
        return not self.children


class EdgeLabeledTree:
    """Immutable rooted tree with {0,1} edge labels and named leaves."""

    __slots__ = ("nodes", "root", "_leaf_ids", "_post", "_depth")

    def __init__(self, nodes: Sequence[Node], root: int = 0):
        nodes = tuple(nodes)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "_leaf_ids", None)
        object.__setattr__(self, "_post", None)
        object.__setattr__(self, "_depth", None)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("EdgeLabeledTree is immutable")

    def _validate(self):
        names = [nd.name for nd in self.nodes if nd.is_leaf]
        if len(names) < 2:
            raise ValueError("a tree needs at least two leaves")
        if len(set(names)) != len(names):
            raise ValueError("duplicate leaf names")
        for i, nd in enumerate(self.nodes):
            if i == self.root:
                if nd.label is not None or nd.parent is not None:
                    raise ValueError("root must not carry a parent edge")
            else:
                if nd.label not in (0, 1):
                    raise ValueError(f"edge label of node {i} must be 0 or 1")
            if nd.is_leaf and nd.name is None:
                raise ValueError(f"leaf {i} has no name")
            if not nd.is_leaf and nd.name is not None:
                raise ValueError(f"inner node {i} must be unnamed")

    @classmethod
    def from_spec(cls, spec: TreeSpec) -> "EdgeLabeledTree":
        """Build a tree from a nested (child, label) spec; iterative so deep
        caterpillars do not hit the recursion limit."""
        if isinstance(spec, str):
            raise ValueError("root spec must be an inner node")
        parents: list[Optional[int]] = []
        labels: list[Optional[int]] = []
        names: list[Optional[str]] = []
        kids: list[list[int]] = []

        def new_node(parent, label, name):
            parents.append(parent)
            labels.append(label)
            names.append(name)
            kids.append([])
            return len(parents) - 1

        # children pushed in reverse so ids follow preorder left-to-right
        work: list[tuple[TreeSpec, Optional[int], Optional[int]]] = [(spec, None, None)]
        while work:
            node_spec, parent, label = work.pop()
            if isinstance(node_spec, str):
                i = new_node(parent, label, node_spec)
            else:
                node_spec = list(node_spec)
                if len(node_spec) < 1:
                    raise ValueError("inner node without children")
                i = new_node(parent, label, None)
                for child_spec, child_label in reversed(node_spec):
                    work.append((child_spec, i, child_label))
            if parent is not None:
                kids[parent].append(i)
        # reversed push order above means children lists are left-to-right
        nodes = [
            Node(parents[i], tuple(kids[i]), labels[i], names[i])
            for i in range(len(parents))
        ]
        return cls(nodes, root=0)

    # -- basic accessors -------------------------------------------------

    def leaf_ids(self) -> dict:
        cache = object.__getattribute__(self, "_leaf_ids")
        if cache is None:
            cache = {nd.name: i for i, nd in enumerate(self.nodes) if nd.is_leaf}
            object.__setattr__(self, "_leaf_ids", cache)
        return cache

    @property
    def leaf_names(self) -> frozenset:
        return frozenset(self.leaf_ids())

    def postorder(self) -> list:
        """Node ids with every child before its parent (iterative)."""
        cache = object.__getattribute__(self, "_post")
        if cache is None:
            order = []
            stack = [self.root]
            while stack:
                v = stack.pop()
                order.append(v)
                stack.extend(self.nodes[v].children)
            order.reverse()
            cache = order
            object.__setattr__(self, "_post", cache)
        return cache

    def depth(self, v: int) -> int:
        cache = object.__getattribute__(self, "_depth")
        if cache is None:
            cache = {self.root: 0}
            stack = [self.root]
            while stack:
                u = stack.pop()
                for c in self.nodes[u].children:
                    cache[c] = cache[u] + 1
                    stack.append(c)
            object.__setattr__(self, "_depth", cache)
        return cache[v]

    @property
    def phylogenetic(self) -> bool:
        for i, nd in enumerate(self.nodes):
            if nd.is_leaf:
                continue
            deg = len(nd.children) + (0 if i == self.root else 1)
            if i == self.root and deg < 2:
                return False
            if i != self.root and deg < 3:
                return False
        return True

    def inner_edges(self) -> list:
        """Lower endpoints of all inner edges."""
        return [
            i
            for i, nd in enumerate(self.nodes)
            if i != self.root and not nd.is_leaf
        ]

    def edges(self) -> list:
        return [i for i in range(len(self.nodes)) if i != self.root]

    def __repr__(self):
        return f"<EdgeLabeledTree {canonical_form(self)}>"


# -- least common ancestor ----------------------------------------------


def lca(t: EdgeLabeledTree, leaves: Iterable[str]) -> int:
    ids = []
    lookup = t.leaf_ids()
    for name in leaves:
        if name not in lookup:
            raise ValueError(f"unknown leaf {name!r}")
        ids.append(lookup[name])
    if not ids:
        raise ValueError("leaf set must be nonempty")
    cur = ids[0]
    for other in ids[1:]:
        a, b = cur, other
        da, db = t.depth(a), t.depth(b)
        while da > db:
            a = t.nodes[a].parent
            da -= 1
        while db > da:
            b = t.nodes[b].parent
            db -= 1
        while a != b:
            a = t.nodes[a].parent
            b = t.nodes[b].parent
        cur = a
    return cur


# -- relation extraction -------------------------------------------------


def extract_relation(t: EdgeLabeledTree) -> Digraph:
    """Digraph with arc (x, y) iff the path lca(x,y) -> y has a 1-edge."""
    nodes = t.nodes
    # leaves[v]: all leaf names below v; ones[v]: those whose path from v
    # contains a 1-edge
    leaves: dict = {}
    ones: dict = {}
    arcs = set()
    for v in t.postorder():
        nd = nodes[v]
        if nd.is_leaf:
            leaves[v] = [nd.name]
            ones[v] = []
            continue
        my_leaves = []
        my_ones = []
        child_leaves = []
        child_targets = []
        for c in nd.children:
            cl = leaves.pop(c)
            targets = cl if nodes[c].label == 1 else ones.pop(c)
            if nodes[c].label == 1:
                ones.pop(c)
            child_leaves.append(cl)
            child_targets.append(targets)
            my_leaves.extend(cl)
            my_ones.extend(targets)
        total = len(my_leaves)
        for cl, targets in zip(child_leaves, child_targets):
            if not targets or len(cl) == total:
                continue
            cl_set = set(cl)
            sources = [x for x in my_leaves if x not in cl_set]
            arcs.update(itertools.product(sources, targets))
        leaves[v] = my_leaves
        ones[v] = my_ones
    return Digraph(leaves[t.root], arcs)


# -- restriction and display ---------------------------------------------


def restrict(t: EdgeLabeledTree, keep: Iterable[str]) -> EdgeLabeledTree:
    """Labeled restriction: topology of t restricted to ``keep``, each edge
    labeled 1 iff its corresponding path in t contains a 1-edge."""
    ks = set(keep)
    unknown = ks - t.leaf_names
    if unknown:
        raise ValueError(f"unknown leaves: {sorted(unknown)}")
    if len(ks) < 2:
        raise ValueError("restriction needs at least two leaves")

    def rec(v: int):
        nd = t.nodes[v]
        if nd.is_leaf:
            return (nd.name, False) if nd.name in ks else None
        survived = []
        for c in t.nodes[v].children:
            r = rec(c)
            if r is None:
                continue
            sub, h = r
            survived.append((sub, h or t.nodes[c].label == 1))
        if not survived:
            return None
        if len(survived) == 1:
            return survived[0]
        return ([(sub, 1 if h else 0) for sub, h in survived], False)

    spec, _ = rec(t.root)
    return EdgeLabeledTree.from_spec(spec)


def clusters(t: EdgeLabeledTree) -> dict:
    """Map node id -> frozenset of leaf names below it."""
    out: dict = {}
    for v in t.postorder():
        nd = t.nodes[v]
        if nd.is_leaf:
            out[v] = frozenset((nd.name,))
        else:
            acc = set()
            for c in nd.children:
                acc |= out[c]
            out[v] = frozenset(acc)
    return out


def displays(big: EdgeLabeledTree, small: EdgeLabeledTree) -> bool:
    """True iff ``small`` is displayed by ``big`` in the labeled sense."""
    if not small.leaf_names <= big.leaf_names:
        raise ValueError("leaf set of the displayed tree must be contained")
    r = restrict(big, small.leaf_names)
    r_clusters = clusters(r)
    cluster_node = {c: v for v, c in r_clusters.items()}
    s_clusters = clusters(small)
    for v in range(len(small.nodes)):
        if s_clusters[v] not in cluster_node:
            return False
    for v in range(len(small.nodes)):
        if v == small.root:
            continue
        u = small.nodes[v].parent
        rv = cluster_node[s_clusters[v]]
        ru = cluster_node[s_clusters[u]]
        has_one = False
        w = rv
        while w != ru:
            if r.nodes[w].label == 1:
                has_one = True
            w = r.nodes[w].parent
        if has_one != (small.nodes[v].label == 1):
            return False
    return True


# -- contraction ---------------------------------------------------------


def _all_paths_carry_one(t: EdgeLabeledTree) -> dict:
    """For each node v: True iff every path from v to a leaf below it
    contains a 1-edge (False for leaves)."""
    flag: dict = {}
    for v in t.postorder():
        nd = t.nodes[v]
        if nd.is_leaf:
            flag[v] = False
        else:
            flag[v] = all(
                t.nodes[c].label == 1 or flag[c] for c in nd.children
            )
    return flag


def is_irrelevant_edge(t: EdgeLabeledTree, e: int) -> bool:
    """An edge is irrelevant iff it is an inner edge and every leaf path
    below its lower endpoint carries a 1-edge."""
    if not 0 <= e < len(t.nodes) or e == t.root:
        raise ValueError(f"no edge with lower endpoint {e}")
    nd = t.nodes[e]
    if nd.is_leaf:
        return False
    return _all_paths_carry_one(t)[e]


def _rebuild(t: EdgeLabeledTree, drop: set, relabel: Optional[dict] = None) -> EdgeLabeledTree:
    """New tree without the nodes in ``drop`` (inner, non-root); each kept
    node keeps its own edge label (simple contraction semantics), except
    where ``relabel`` overrides."""
    anchor: dict = {t.root: t.root}
    parents: dict = {}
    stack = [t.root]
    order = [t.root]
    while stack:
        u = stack.pop()
        for c in t.nodes[u].children:
            anchor[c] = anchor[u] if c in drop else c
            if c not in drop:
                parents[c] = anchor[u]
                order.append(c)
            stack.append(c)
    new_id = {old: i for i, old in enumerate(order)}
    kids: list[list[int]] = [[] for _ in order]
    for old in order[1:]:
        kids[new_id[parents[old]]].append(new_id[old])
    labels = relabel or {}
    nodes = []
    for old in order:
        nd = t.nodes[old]
        if old == t.root:
            nodes.append(Node(None, tuple(kids[new_id[old]]), None, None))
        else:
            lab = labels.get(old, nd.label)
            nodes.append(
                Node(new_id[parents[old]], tuple(kids[new_id[old]]), lab,
                     nd.name if nd.is_leaf else None)
            )
    return EdgeLabeledTree(nodes, root=0)


def contract_edge(t: EdgeLabeledTree, e: int) -> EdgeLabeledTree:
    """Extended contraction of the edge with lower endpoint ``e``.

    Inner edges contract simply.  Contracting an outer edge removes the
    leaf and repairs the degree violations: a suppressed degree-2 vertex
    merges its two incident edges into one labeled 1 iff either was 1; a
    degree-1 root is deleted and its child becomes the root.
    """
    if not 0 <= e < len(t.nodes) or e == t.root:
        raise ValueError(f"no edge with lower endpoint {e}")
    nd = t.nodes[e]
    if not nd.is_leaf:
        return _rebuild(t, {e})

    u = nd.parent
    remaining = [c for c in t.nodes[u].children if c != e]
    if u == t.root and len(remaining) == 1 and t.nodes[remaining[0]].is_leaf:
        raise ValueError("contracting this edge would leave a single leaf")

    if u == t.root:
        if len(remaining) >= 2:
            return _rebuild(t, {e})
        # degree-1 root: delete root, child becomes root (label discarded)
        new_root = remaining[0]
        return _reroot_without(t, drop_leaf=e, old_root=u, new_root=new_root)
    if len(remaining) >= 2:
        return _rebuild(t, {e})
    # u becomes degree 2: merge (par(u), u) and (u, c) into one edge
    c = remaining[0]
    merged = 1 if (t.nodes[u].label == 1 or t.nodes[c].label == 1) else 0
    return _rebuild(t, {e, u}, relabel={c: merged})


def _reroot_without(t: EdgeLabeledTree, drop_leaf: int, old_root: int,
                    new_root: int) -> EdgeLabeledTree:
    spec = _spec_of(t, new_root)
    return EdgeLabeledTree.from_spec(spec)


def _spec_of(t: EdgeLabeledTree, v: int) -> TreeSpec:
    """Nested spec of the subtree rooted at v (iterative)."""
    nd = t.nodes[v]
    if nd.is_leaf:
        return nd.name
    built: dict = {}
    for w in t.postorder():
        wd = t.nodes[w]
        if wd.is_leaf:
            built[w] = wd.name
        else:
            built[w] = [(built[c], t.nodes[c].label) for c in wd.children]
        if w == v:
            break
    return built[v]


# -- least-resolved reduction --------------------------------------------


def is_least_resolved(t: EdgeLabeledTree) -> bool:
    """True iff every inner edge is a 1-edge whose lower endpoint also has
    an incident outer 0-edge."""
    for v in t.inner_edges():
        if t.nodes[v].label != 1:
            return False
        if not any(
            t.nodes[c].is_leaf and t.nodes[c].label == 0
            for c in t.nodes[v].children
        ):
            return False
    return True


def reduce_least_resolved(t: EdgeLabeledTree) -> EdgeLabeledTree:
    """Contract all inner 0-edges and irrelevant edges; the result is the
    unique least-resolved tree explaining the same relation.

    The contractible set is computed once up front: contraction of these
    edges neither creates new contractible edges nor invalidates the
    remaining ones, so the result is order-independent.
    """
    flag = _all_paths_carry_one(t)
    drop = {
        v
        for v in t.inner_edges()
        if t.nodes[v].label == 0 or flag[v]
    }
    if not drop:
        return t
    return _rebuild(t, drop)


# -- canonical form ------------------------------------------------------


def canonical_form(t: EdgeLabeledTree) -> str:
    """Canonical string; equal iff the trees are isomorphic as rooted
    leaf-labeled edge-labeled trees."""
    enc: dict = {}
    for v in t.postorder():
        nd = t.nodes[v]
        if nd.is_leaf:
            enc[v] = nd.name
        else:
            parts = sorted(
                (enc[c], t.nodes[c].label) for c in nd.children
            )
            enc[v] = "(" + ",".join(f"{s}:{l}" for s, l in parts) + ")"
    return enc[t.root]
