"""Exhaustive ground truth for small leaf sets.

Enumerates every phylogenetic tree topology with every {0,1} edge labeling
(hard-capped at 5 leaves), and derives from that enumeration the triangle
catalog used by the recognition code, the brute-force validity test, and
the vertex-minimum explaining trees.  Nothing in here is transcribed from
a figure; the catalog is recomputed from first principles on import of the
first caller.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional

from .digraph import (
    Digraph,
    TriangleCatalog,
    TriangleClass,
    permute_pattern,
    triangle_pattern,
)
from .phylo_tree import (
    EdgeLabeledTree,
    TreeSpec,
    canonical_form,
    extract_relation,
    reduce_least_resolved,
)

MAX_LEAVES = 5


def _set_partitions(items: tuple) -> Iterator[tuple]:
    """All partitions of ``items`` into nonempty blocks (tuples of tuples)."""
    if len(items) == 1:
        yield ((items[0],),)
        return
    first = items[0]
    for part in _set_partitions(items[1:]):
        for i in range(len(part)):
            yield part[:i] + ((first,) + part[i],) + part[i + 1:]
        yield ((first,),) + part


def _topologies(leaves: tuple) -> Iterator:
    """All phylogenetic tree shapes on the given leaves.

    A shape is a leaf name or a tuple of child shapes.  Each tree
    corresponds to exactly one recursive partition (the root children's
    leaf sets), so no shape is produced twice.
    """
    if len(leaves) == 1:
        yield leaves[0]
        return
    for part in _set_partitions(leaves):
        if len(part) < 2:
            continue
        for combo in itertools.product(*[list(_topologies(b)) for b in part]):
            yield combo


def _edge_count(shape) -> int:
    if isinstance(shape, str):
        return 1
    return 1 + sum(_edge_count(c) for c in shape)


def _child_spec(shape, labels: Iterator[int]):
    label = next(labels)
    if isinstance(shape, str):
        return (shape, label)
    return ([_child_spec(c, labels) for c in shape], label)


def enumerate_labeled_trees(leaves: Iterable[str]) -> Iterator[EdgeLabeledTree]:
    """Every phylogenetic tree on exactly these leaves with every edge
    labeling; each canonical form appears exactly once."""
    lv = tuple(sorted(leaves))
    if len(set(lv)) != len(lv):
        raise ValueError("duplicate leaf names")
    if not 2 <= len(lv) <= MAX_LEAVES:
        raise ValueError(f"leaf count must be in [2, {MAX_LEAVES}], got {len(lv)}")
    for shape in _topologies(lv):
        m = sum(_edge_count(c) for c in shape)
        for bits in itertools.product((0, 1), repeat=m):
            it = iter(bits)
            spec = [_child_spec(c, it) for c in shape]
            yield EdgeLabeledTree.from_spec(spec)


# -- triangle catalog ----------------------------------------------------

_catalog: Optional[TriangleCatalog] = None

# Pinned patterns for the three invalid classes whose edge sets are known
# in closed form; everything else is named by orbit minimum.
_F1_PATTERN = 0b000001          # {(x,y)}
_F5_PATTERN = 0b000011          # {(x,y),(y,x)}
_F8_PATTERN = 0b010111          # {(x,y),(y,x),(x,z),(y,z)}


def _is_binary_triple_tree(t: EdgeLabeledTree) -> bool:
    return len(t.nodes) == 5


def _template_of(t: EdgeLabeledTree, pos: dict) -> tuple[tuple[int, int], int]:
    """Grouped-pair / outlier positions of a binary 3-leaf tree."""
    root_children = t.nodes[t.root].children
    cherry = next(c for c in root_children if not t.nodes[c].is_leaf)
    pair = sorted(pos[t.nodes[c].name] for c in t.nodes[cherry].children)
    (outlier,) = [
        pos[t.nodes[c].name] for c in root_children if t.nodes[c].is_leaf
    ]
    return ((pair[0], pair[1]), outlier)


def derive_triangle_catalog() -> TriangleCatalog:
    """Catalog over all 64 labeled triangle patterns, derived by exhausting
    the 3-leaf tree enumeration; cached after the first call."""
    global _catalog
    if _catalog is not None:
        return _catalog

    names = ("x", "y", "z")
    pos = {"x": 0, "y": 1, "z": 2}
    # pattern -> {canonical form of reduced explaining tree: tree}
    explainers: list[dict] = [dict() for _ in range(64)]
    for t in enumerate_labeled_trees(names):
        g = extract_relation(t)
        p = triangle_pattern(g, *names)
        r = reduce_least_resolved(t)
        explainers[p].setdefault(canonical_form(r), r)

    valid = [bool(explainers[p]) for p in range(64)]
    informative = [
        valid[p]
        and len(explainers[p]) == 1
        and _is_binary_triple_tree(next(iter(explainers[p].values())))
        for p in range(64)
    ]

    # orbits under vertex relabeling
    orbit_of: dict[int, int] = {}
    orbits: dict[int, list] = {}
    for p in range(64):
        if p in orbit_of:
            continue
        orb = sorted(
            {permute_pattern(p, perm) for perm in itertools.permutations((0, 1, 2))}
        )
        for q in orb:
            orbit_of[q] = orb[0]
        orbits[orb[0]] = orb
    for rep, orb in orbits.items():
        assert len({valid[q] for q in orb}) == 1, "validity not orbit-uniform"
        assert len({informative[q] for q in orb}) == 1

    valid_info = sorted(r for r in orbits if valid[r] and informative[r])
    valid_plain = sorted(r for r in orbits if valid[r] and not informative[r])
    invalid = sorted(r for r in orbits if not valid[r])
    assert len(valid_info) == 4 and len(valid_plain) == 4
    assert len(invalid) == 8
    assert len(orbits) == 16

    label_of_rep: dict[int, str] = {}
    for i, rep in enumerate(valid_plain):
        label_of_rep[rep] = f"A{i + 1}"
    for i, rep in enumerate(valid_info):
        label_of_rep[rep] = f"A{i + 5}"
    pinned = {
        orbit_of[_F1_PATTERN]: "F1",
        orbit_of[_F5_PATTERN]: "F5",
        orbit_of[_F8_PATTERN]: "F8",
    }
    assert len(pinned) == 3
    for rep, lab in pinned.items():
        assert not valid[rep], f"{lab} pattern unexpectedly valid"
        label_of_rep[rep] = lab
    free_labels = iter(["F2", "F3", "F4", "F6", "F7"])
    for rep in invalid:
        if rep not in label_of_rep:
            label_of_rep[rep] = next(free_labels)

    def class_id(lab: str) -> int:
        return int(lab[1:]) + (0 if lab[0] == "A" else 8)

    classes = []
    for p in range(64):
        lab = label_of_rep[orbit_of[p]]
        template = None
        if informative[p]:
            template = _template_of(next(iter(explainers[p].values())), pos)
        classes.append(
            TriangleClass(
                class_id=class_id(lab),
                label=lab,
                valid=valid[p],
                informative=informative[p],
                template=template,
            )
        )
    _catalog = TriangleCatalog(tuple(classes))
    return _catalog


# -- brute-force validity and minimum trees ------------------------------

# leaf tuple -> {arcs frozenset: (min vertex count, {canonical form: spec})}
_min_index: dict[tuple, dict] = {}


def _node_count(shape_spec: TreeSpec) -> int:
    # spec of the root's child list
    count = 1
    stack = list(shape_spec)
    while stack:
        sub, _ = stack.pop()
        count += 1
        if not isinstance(sub, str):
            stack.extend(sub)
    return count


def _index_for(leaves: tuple) -> dict:
    if leaves in _min_index:
        return _min_index[leaves]
    index: dict = {}
    for t in enumerate_labeled_trees(leaves):
        rel = extract_relation(t).arcs
        n = len(t.nodes)
        entry = index.get(rel)
        if entry is None or n < entry[0]:
            index[rel] = (n, {canonical_form(t): t})
        elif n == entry[0]:
            entry[1].setdefault(canonical_form(t), t)
    _min_index[leaves] = index
    return index


def _check_cap(g: Digraph):
    if len(g) > MAX_LEAVES:
        raise ValueError(f"brute force capped at {MAX_LEAVES} vertices")
    if len(g) < 2:
        raise ValueError("brute force needs at least 2 vertices")


def brute_force_is_valid(g: Digraph) -> bool:
    """True iff some enumerated tree on vertices(g) extracts exactly g."""
    _check_cap(g)
    return g.arcs in _index_for(g.vertices)


def brute_force_min_tree(g: Digraph) -> set:
    """All explaining trees of minimum vertex count (deduplicated by
    canonical form)."""
    _check_cap(g)
    entry = _index_for(g.vertices).get(g.arcs)
    if entry is None:
        raise ValueError("relation is not explained by any tree")
    return set(entry[1].values())
