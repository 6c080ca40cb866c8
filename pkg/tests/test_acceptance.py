"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line (run with ``pytest -s`` to see them inline).

The shared round-trip corpus (1000 seeded random trees) is computed once
per session and feeds criteria 5 through 8.
"""

import math
import time

import numpy as np
import pytest

import fitch.oracle as oracle_mod
from fitch import (
    Digraph,
    EditBudget,
    brute_force_is_valid,
    brute_force_min_tree,
    brute_force_modification,
    canonical_form,
    check_fitch_cotree,
    decompose,
    derive_triangle_catalog,
    displays,
    extract_relation,
    informative_triples,
    is_fitch,
    is_least_resolved,
    label_tree,
    random_fitch,
    random_tree,
    reduce_least_resolved,
    solve_modification,
    tree_from_cotree,
    tree_from_triples,
    ScenarioConfig,
)

from conftest import all_digraphs


def report(num, name, ok):
    print(f"\nACCEPTANCE {num} ({name}): {'PASS' if ok else 'FAIL'}", flush=True)
    assert ok, f"criterion {num} ({name}) failed"


def corpus_configs():
    ps = [0.0, 0.1, 0.5, 1.0]
    modes = ["binary-yule", "random-multifurcating"]
    for i in range(1000):
        n = 2 + i % 63
        yield ScenarioConfig(n, ps[i % 4], 10_000 + i, modes[i % 2])


def pair_lcas(t):
    """Map frozenset{x,y} -> lca node id, via per-node child clusters."""
    out = {}
    leafsets = {}
    for v in t.postorder():
        nd = t.nodes[v]
        if nd.is_leaf:
            leafsets[v] = [nd.name]
            continue
        groups = [leafsets[c] for c in nd.children]
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                for x in groups[i]:
                    for y in groups[j]:
                        out[frozenset((x, y))] = v
        leafsets[v] = [x for g in groups for x in g]
    return out


@pytest.fixture(scope="session")
def corpus(cat):
    """Per-tree results for criteria 5-8, computed in a single pass."""
    results = dict(
        roundtrip_failures=[],
        label_contract_failures=[],
        structure_failures=[],
        cotree_failures=[],
        elapsed=0.0,
    )
    t0 = time.perf_counter()
    for cfg in corpus_configs():
        src = random_tree(cfg)
        g = extract_relation(src)
        tag = (cfg.n, cfg.p, cfg.seed, cfg.mode)

        # criterion 5: recognition, double reconstruction, round trip
        try:
            if not is_fitch(g, cat):
                raise AssertionError("extracted relation not recognized")
            t_tri = tree_from_triples(g, cat)
            t_cot = tree_from_cotree(g)
            red = reduce_least_resolved(src)
            if extract_relation(t_tri) != g or extract_relation(t_cot) != g:
                raise AssertionError("round trip broke the relation")
            if canonical_form(t_tri) != canonical_form(t_cot):
                raise AssertionError("pipelines disagree")
            if not displays(red, t_tri):
                raise AssertionError("reconstruction not displayed")
        except AssertionError as e:
            results["roundtrip_failures"].append((tag, str(e)))
            continue

        # criterion 6: Algorithm-1 labeling equals the reduced source
        if canonical_form(t_tri) != canonical_form(red):
            results["label_contract_failures"].append(tag)

        # criterion 7: least-resolved + distinguishing triples
        ok7 = is_least_resolved(t_tri)
        if ok7:
            lcas = pair_lcas(t_tri)
            from fitch.phylo_tree import clusters

            cl = clusters(t_tri)
            distinguished = set()
            for trip in informative_triples(g, cat):
                v = lcas[trip.pair]
                u = t_tri.nodes[v].parent
                if u is not None and trip.outlier in cl[u] and trip.outlier not in cl[v]:
                    distinguished.add(v)
            ok7 = all(v in distinguished for v in t_tri.inner_edges())
        if not ok7:
            results["structure_failures"].append(tag)

        # criterion 8: cotree structure
        try:
            ct = decompose(g)
            if check_fitch_cotree(ct) is not None:
                raise AssertionError("cotree check failed")
            if g.arcs and ct.label == "par0":
                raise AssertionError("nonempty relation not weakly connected")
            stack = [ct]
            while stack:
                node = stack.pop()
                if node.is_leaf:
                    continue
                if node.label == "par0" and not all(
                    c.is_leaf for c in node.children
                ):
                    raise AssertionError("par0 with inner child")
                stack.extend(node.children)
        except AssertionError as e:
            results["cotree_failures"].append((tag, str(e)))
    results["elapsed"] = time.perf_counter() - t0
    return results


def test_criterion_1_triangle_census():
    oracle_mod._catalog = None  # time a fresh derivation
    t0 = time.perf_counter()
    cat = derive_triangle_catalog()
    elapsed = time.perf_counter() - t0
    by_label = {}
    for c in cat.by_pattern:
        by_label.setdefault(c.label, c)
    ok = (
        len(by_label) == 16
        and sum(1 for c in by_label.values() if c.valid) == 8
        and sum(1 for c in by_label.values() if not c.valid) == 8
        and sum(1 for c in by_label.values() if c.informative) == 4
        and cat.by_pattern[0b000001].label == "F1"
        and cat.by_pattern[0b000011].label == "F5"
        and cat.by_pattern[0b010111].label == "F8"
        and elapsed < 1.0
    )
    report(1, "triangle census", ok)


def test_criterion_2_two_vertex_completeness(cat):
    t0 = time.perf_counter()
    ok = True
    for g in all_digraphs(("a", "b")):
        ok &= is_fitch(g, cat)
        ok &= brute_force_is_valid(g)
        t1 = tree_from_triples(g, cat)
        t2 = tree_from_cotree(g)
        ok &= extract_relation(t1) == g and extract_relation(t2) == g
    ok &= time.perf_counter() - t0 < 1.0
    report(2, "two-vertex completeness", ok)


def test_criterion_3_recognition_equals_oracle(cat):
    t0 = time.perf_counter()
    mismatches = sum(
        1
        for g in all_digraphs(("a", "b", "c", "d"))
        if is_fitch(g, cat) != brute_force_is_valid(g)
    )
    elapsed = time.perf_counter() - t0
    report(3, "recognition = oracle on 4 vertices",
           mismatches == 0 and elapsed < 60.0)


def test_criterion_4_uniqueness_minimality(cat):
    failures = 0
    cases = []
    for i in range(500):
        cfg = ScenarioConfig(2 + i % 4, [0.0, 0.1, 0.5, 1.0][i % 4],
                             20_000 + i, ["binary-yule", "random-multifurcating"][i % 2])
        cases.append(random_fitch(cfg))
    cases.extend(
        g for g in all_digraphs(("a", "b", "c")) if brute_force_is_valid(g)
    )
    for g in cases:
        mins = brute_force_min_tree(g)
        if len(mins) != 1:
            failures += 1
            continue
        want = canonical_form(next(iter(mins)))
        if canonical_form(tree_from_triples(g, cat)) != want:
            failures += 1
        elif canonical_form(tree_from_cotree(g)) != want:
            failures += 1
    report(4, "uniqueness and minimality", failures == 0)


def test_criterion_5_round_trip(corpus):
    ok = not corpus["roundtrip_failures"] and corpus["elapsed"] < 300.0
    if corpus["roundtrip_failures"]:
        print(corpus["roundtrip_failures"][:5])
    report(5, "round trip on 1000 random trees", ok)


def test_criterion_6_labeling_contract(corpus):
    ok = not corpus["label_contract_failures"]

    # scaling of the labeling step alone: fit log-log slope of its cost
    # against max(|arcs|, |leaves|)
    xs, ys = [], []
    for n in (250, 500, 1000):
        for seed in (1, 2, 3):
            g = random_fitch(ScenarioConfig(n, 0.5, 30_000 + seed))
            topo = reduce_least_resolved(
                random_tree(ScenarioConfig(n, 0.5, 30_000 + seed))
            )
            best = min(
                _timed(label_tree, topo, g) for _ in range(3)
            )
            xs.append(math.log(max(len(g.arcs), n)))
            ys.append(math.log(best))
    slope = np.polyfit(xs, ys, 1)[0]
    print(f"\nlabel_tree log-log slope: {slope:.3f}")
    ok &= slope <= 1.2
    report(6, "labeling contract and linear scaling", ok)


def _timed(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def test_criterion_7_least_resolved_structure(corpus):
    report(7, "least-resolved structure and distinguishing triples",
           not corpus["structure_failures"])


def test_criterion_8_cotree_properties(corpus):
    report(8, "cotree properties", not corpus["cotree_failures"])


def test_criterion_9_editing_solver(cat):
    t0 = time.perf_counter()
    budgets = [
        EditBudget(i, j, k)
        for i in range(3)
        for j in range(3)
        for k in range(3)
        if i + j + k <= 2
    ]
    discrepancies = 0
    for names in (("a", "b"), ("a", "b", "c"), ("a", "b", "c", "d")):
        for g in all_digraphs(names):
            for b in budgets:
                sol = solve_modification(g, b, cat)
                bf = brute_force_modification(g, b, cat)
                if (sol is None) != (bf is None):
                    discrepancies += 1
                    continue
                if sol is not None:
                    ni, nj, nk = sol.size()
                    if (
                        ni > b.i
                        or nj > b.j
                        or nk > b.k
                        or not is_fitch(sol.apply(g), cat)
                    ):
                        discrepancies += 1
    elapsed = time.perf_counter() - t0
    print(f"\nediting sweep: {elapsed:.1f}s")
    report(9, "editing solver completeness", discrepancies == 0 and elapsed < 300.0)


def test_criterion_10_performance_smoke(cat):
    g_big = random_fitch(ScenarioConfig(2000, 0.5, 40_001))
    t_big = _timed(tree_from_cotree, g_big)

    g_med = random_fitch(ScenarioConfig(300, 0.5, 40_002))
    t_rec = _timed(is_fitch, g_med, cat)

    g_cmp = random_fitch(ScenarioConfig(500, 0.5, 40_003))
    t_cot = _timed(tree_from_cotree, g_cmp)
    t_tri = _timed(tree_from_triples, g_cmp, cat)

    print(f"\ncotree n=2000: {t_big:.2f}s; recognition n=300: {t_rec:.2f}s; "
          f"n=500 cotree {t_cot:.3f}s vs triples {t_tri:.3f}s")
    ok = t_big < 60.0 and t_rec < 30.0 and t_cot < t_tri
    report(10, "performance smoke", ok)
