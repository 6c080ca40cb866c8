"""Bounded-search solver for the Fitch graph modification problem: given
budgets for vertex deletions, arc deletions and arc insertions, find edits
that make the input a Fitch graph, or report infeasibility.

Branching happens inside one invalid triangle at a time, which is what
makes the search fixed-parameter bounded: any feasible edit set must touch
every forbidden triangle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import Digraph, TriangleCatalog, find_invalid_triangle, is_fitch

Arc = tuple


@dataclass(frozen=True)
class EditBudget:
    """Maximum number of vertex deletions (i), arc deletions (j) and arc
    insertions (k)."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if min(self.i, self.j, self.k) < 0:
            raise ValueError("budgets must be nonnegative")


@dataclass(frozen=True)
class EditSolution:
    deleted_vertices: frozenset
    deleted_arcs: frozenset
    inserted_arcs: frozenset

    def apply(self, g: Digraph) -> Digraph:
        verts = [v for v in g.vertices if v not in self.deleted_vertices]
        vset = set(verts)
        arcs = (g.arcs - self.deleted_arcs) | self.inserted_arcs
        return Digraph(verts, (a for a in arcs if a[0] in vset and a[1] in vset))

    def size(self) -> tuple:
        return (
            len(self.deleted_vertices),
            len(self.deleted_arcs),
            len(self.inserted_arcs),
        )


def _edited(g: Digraph, dv: frozenset, da: frozenset, ia: frozenset) -> Digraph:
    return EditSolution(dv, da, ia).apply(g)


def solve_modification(
    g: Digraph, b: EditBudget, cat: TriangleCatalog
) -> EditSolution | None:
    """First feasible edit set under a deterministic branch order (vertex
    deletions, then arc deletions, then insertions, lexicographic inside
    each group), or None when no edit set within budget works.

    Edits are never undone: deleted arcs are only original ones, inserted
    arcs are only originally absent ones, and no branch re-inserts a
    deleted arc or re-deletes an inserted one.
    """
    original = g.arcs
    seen: set = set()

    def search(cur: Digraph, dv, da, ia, i, j, k):
        sig = (dv, da, ia)
        if sig in seen:
            return None
        seen.add(sig)
        w = find_invalid_triangle(cur, cat)
        if w is None:
            return EditSolution(dv, da, ia)
        triple = sorted(w)
        if i > 0:
            for v in triple:
                res = search(
                    induced_without(cur, v), dv | {v}, da, ia, i - 1, j, k
                )
                if res is not None:
                    return res
        pairs = sorted(itertools.permutations(triple, 2))
        if j > 0:
            for arc in pairs:
                # deleting an inserted arc would undo an edit
                if arc in cur.arcs and arc in original:
                    res = search(
                        Digraph(cur.vertices, cur.arcs - {arc}),
                        dv, da | {arc}, ia, i, j - 1, k,
                    )
                    if res is not None:
                        return res
        if k > 0:
            for arc in pairs:
                # re-inserting a deleted arc would undo an edit
                if arc not in cur.arcs and arc not in original:
                    res = search(
                        Digraph(cur.vertices, cur.arcs | {arc}),
                        dv, da, ia | {arc}, i, j, k - 1,
                    )
                    if res is not None:
                        return res
        return None

    def induced_without(cur: Digraph, v: str) -> Digraph:
        keep = [u for u in cur.vertices if u != v]
        return Digraph(keep, (a for a in cur.arcs if v not in a))

    empty = frozenset()
    return search(g, empty, empty, empty, b.i, b.j, b.k)


def brute_force_modification(
    g: Digraph, b: EditBudget, cat: TriangleCatalog
) -> EditSolution | None:
    """Exhaustive search over all edit sets within budget; guard-railed to
    tiny instances."""
    if len(g) > 4 or b.i + b.j + b.k > 3:
        raise ValueError("brute force capped at 4 vertices and 3 total edits")
    verts = g.vertices
    present = sorted(g.arcs)
    absent = sorted(
        (u, v)
        for u in verts
        for v in verts
        if u != v and (u, v) not in g.arcs
    )
    for ni in range(b.i + 1):
        for dv in itertools.combinations(verts, ni):
            for nj in range(b.j + 1):
                for da in itertools.combinations(present, nj):
                    for nk in range(b.k + 1):
                        for ia in itertools.combinations(absent, nk):
                            sol = EditSolution(
                                frozenset(dv), frozenset(da), frozenset(ia)
                            )
                            if is_fitch(sol.apply(g), cat):
                                return sol
    return None
