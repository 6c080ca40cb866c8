"""Irreflexive directed graphs over named vertices, and recognition of the
relations that can be explained by an edge-labeled tree ("Fitch graphs").

Recognition works entirely on induced 3-vertex subgraphs.  A triangle over
an ordered vertex triple (x, y, z) is encoded as a 6-bit pattern:

    bit 0: (x, y)    bit 1: (y, x)
    bit 2: (x, z)    bit 3: (z, x)
    bit 4: (y, z)    bit 5: (z, y)

The catalog mapping each of the 64 patterns to its isomorphism class,
validity and (for the four informative classes) the rooted-triple template
is *derived* by exhaustive enumeration in :mod:`fitch.oracle`, not hardcoded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

Arc = tuple[str, str]

# (source position, target position) for bits 0..5 of a triangle pattern
PATTERN_BITS: tuple[tuple[int, int], ...] = (
    (0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1),
)


class Digraph:
    """Immutable irreflexive digraph over uniquely named vertices.

    Vertices iterate in sorted name order regardless of construction order,
    so all derived output is deterministic.
    """

    __slots__ = ("vertices", "arcs", "_out", "_in")

    def __init__(self, vertices: Iterable[str], arcs: Iterable[Arc] = ()):
        vs = tuple(sorted(vertices))
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex names")
        for v in vs:
            if not isinstance(v, str) or not v:
                raise ValueError(f"vertex names must be nonempty strings, got {v!r}")
        vset = set(vs)
        aset = set()
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-arc ({u!r}, {v!r}) not allowed")
            if u not in vset or v not in vset:
                raise ValueError(f"arc ({u!r}, {v!r}) has undeclared endpoint")
            aset.add((u, v))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arcs", frozenset(aset))
        object.__setattr__(self, "_out", None)
        object.__setattr__(self, "_in", None)

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self.vertices == other.vertices
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.vertices, self.arcs))

    def __repr__(self):
        return f"Digraph({list(self.vertices)!r}, {sorted(self.arcs)!r})"

    def __len__(self):
        return len(self.vertices)

    def has_arc(self, u: str, v: str) -> bool:
        return (u, v) in self.arcs

    def _adjacency(self):
        out = object.__getattribute__(self, "_out")
        if out is None:
            out = {v: set() for v in self.vertices}
            inc = {v: set() for v in self.vertices}
            for u, v in self.arcs:
                out[u].add(v)
                inc[v].add(u)
            object.__setattr__(self, "_out", out)
            object.__setattr__(self, "_in", inc)
        return out, object.__getattribute__(self, "_in")

    def out_neighbors(self, v: str) -> set:
        return self._adjacency()[0][v]

    def in_neighbors(self, v: str) -> set:
        return self._adjacency()[1][v]

    def adjacency_matrix(self) -> np.ndarray:
        """Boolean matrix indexed by sorted vertex position."""
        n = len(self.vertices)
        idx = {v: i for i, v in enumerate(self.vertices)}
        mat = np.zeros((n, n), dtype=bool)
        if self.arcs:
            rows = np.fromiter((idx[u] for u, v in self.arcs), dtype=np.int64,
                               count=len(self.arcs))
            cols = np.fromiter((idx[v] for u, v in self.arcs), dtype=np.int64,
                               count=len(self.arcs))
            mat[rows, cols] = True
        return mat


@dataclass(frozen=True)
class TriangleClass:
    """Classification of one labeled triangle pattern.

    ``template`` is only set for informative classes: a pair of positions in
    {0,1,2} that must be grouped under a common inner vertex, plus the
    outlier position.
    """

    class_id: int
    label: str
    valid: bool
    informative: bool
    template: Optional[tuple[tuple[int, int], int]] = None


@dataclass(frozen=True)
class TriangleCatalog:
    """Lookup table over all 64 labeled triangle patterns."""

    by_pattern: tuple[TriangleClass, ...]

    def __post_init__(self):
        if len(self.by_pattern) != 64:
            raise ValueError("catalog must cover all 64 patterns")

    def valid_mask(self) -> np.ndarray:
        return np.array([c.valid for c in self.by_pattern], dtype=bool)


def triangle_pattern(g: Digraph, x: str, y: str, z: str) -> int:
    """Bitmask of the arcs present among the ordered triple (x, y, z)."""
    names = (x, y, z)
    if len(set(names)) != 3:
        raise ValueError("triangle vertices must be distinct")
    vset = set(g.vertices)
    for v in names:
        if v not in vset:
            raise ValueError(f"unknown vertex {v!r}")
    mask = 0
    for bit, (s, t) in enumerate(PATTERN_BITS):
        if (names[s], names[t]) in g.arcs:
            mask |= 1 << bit
    return mask


def permute_pattern(pattern: int, perm: tuple[int, int, int]) -> int:
    """Pattern of the same triangle after relabeling position p -> perm[p]."""
    out = 0
    bit_of = {pair: i for i, pair in enumerate(PATTERN_BITS)}
    for bit, (s, t) in enumerate(PATTERN_BITS):
        if pattern & (1 << bit):
            out |= 1 << bit_of[(perm[s], perm[t])]
    return out


def classify_triangle(pattern: int, cat: TriangleCatalog) -> TriangleClass:
    if not 0 <= pattern < 64:
        raise ValueError("pattern out of range")
    return cat.by_pattern[pattern]


def find_invalid_triangle(g: Digraph, cat: TriangleCatalog) -> Optional[tuple[str, str, str]]:
    """Lexicographically first invalid induced triangle, or None if all valid.

    Cubic in the vertex count; vectorized with numpy above a small size.
    """
    n = len(g.vertices)
    if n < 3:
        return None
    if n < 24:
        for x, y, z in itertools.combinations(g.vertices, 3):
            if not cat.by_pattern[triangle_pattern(g, x, y, z)].valid:
                return (x, y, z)
        return None

    mat = g.adjacency_matrix()
    valid = cat.valid_mask()
    verts = g.vertices
    for i in range(n - 2):
        row_i = mat[i]
        col_i = mat[:, i]
        for j in range(i + 1, n - 1):
            zs = slice(j + 1, n)
            pat = (
                int(mat[i, j])
                + 2 * int(mat[j, i])
                + 4 * row_i[zs]
                + 8 * col_i[zs]
                + 16 * mat[j, zs]
                + 32 * mat[zs, j]
            )
            bad = ~valid[pat]
            if bad.any():
                k = j + 1 + int(np.argmax(bad))
                return (verts[i], verts[j], verts[k])
    return None


def is_fitch(g: Digraph, cat: TriangleCatalog) -> bool:
    """True iff every induced triangle of ``g`` is valid."""
    return find_invalid_triangle(g, cat) is None


def induced_subrelation(g: Digraph, keep: Iterable[str]) -> Digraph:
    """Subgraph induced by the vertex subset ``keep``."""
    ks = set(keep)
    unknown = ks - set(g.vertices)
    if unknown:
        raise ValueError(f"unknown vertices: {sorted(unknown)}")
    return Digraph(ks, (a for a in g.arcs if a[0] in ks and a[1] in ks))
