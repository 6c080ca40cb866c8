import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fitch import (
    Digraph,
    classify_triangle,
    extract_relation,
    find_invalid_triangle,
    induced_subrelation,
    is_fitch,
    random_tree,
    triangle_pattern,
)
from fitch.digraph import permute_pattern

from conftest import small_digraphs, tree_configs


def test_construction_rejects_bad_input():
    with pytest.raises(ValueError):
        Digraph(["a", "a"])
    with pytest.raises(ValueError):
        Digraph(["a", "b"], [("a", "a")])
    with pytest.raises(ValueError):
        Digraph(["a", "b"], [("a", "c")])
    with pytest.raises(ValueError):
        Digraph(["a", ""])


def test_vertices_sorted_and_immutable():
    g = Digraph(["c", "a", "b"])
    assert g.vertices == ("a", "b", "c")
    with pytest.raises(AttributeError):
        g.arcs = frozenset()


def test_triangle_pattern_examples():
    g = Digraph("abc", [("a", "b")])
    assert triangle_pattern(g, "a", "b", "c") == 0b000001
    assert triangle_pattern(Digraph("abc"), "a", "b", "c") == 0
    g2 = Digraph("abc", [("c", "a"), ("c", "b")])
    # bits (z,x) and (z,y)
    assert triangle_pattern(g2, "a", "b", "c") == 0b101000
    with pytest.raises(ValueError):
        triangle_pattern(g, "a", "a", "b")
    with pytest.raises(ValueError):
        triangle_pattern(g, "a", "b", "x")


def test_classify_examples(cat):
    f1 = classify_triangle(0b000001, cat)
    assert not f1.valid and f1.label == "F1"
    f5 = classify_triangle(0b000011, cat)
    assert not f5.valid and f5.label == "F5"
    info = classify_triangle(0b101000, cat)
    assert info.valid and info.informative
    assert info.template == ((0, 1), 2)


def test_is_fitch_examples(cat):
    assert is_fitch(Digraph("ab", [("a", "b")]), cat)
    g = Digraph("abc", [("a", "b")])
    assert find_invalid_triangle(g, cat) == ("a", "b", "c")
    g5 = Digraph(
        "abcd",
        [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b"), ("d", "c")],
    )
    assert is_fitch(g5, cat)


def test_induced_subrelation_examples():
    g = Digraph(
        "abcd",
        [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b"), ("d", "c")],
    )
    assert induced_subrelation(g, g.vertices) == g
    assert induced_subrelation(
        Digraph("abc", [("c", "a"), ("c", "b")]), {"a", "b"}
    ) == Digraph("ab")
    assert induced_subrelation(g, {"a", "c", "d"}) == Digraph(
        "acd", [("c", "a"), ("d", "a"), ("d", "c")]
    )
    with pytest.raises(ValueError):
        induced_subrelation(g, {"a", "x"})


@given(small_digraphs())
def test_witness_is_invalid_triangle(cat, g):
    w = find_invalid_triangle(g, cat)
    if w is not None:
        p = triangle_pattern(g, *w)
        assert not classify_triangle(p, cat).valid
    else:
        for t in itertools.combinations(g.vertices, 3):
            assert classify_triangle(triangle_pattern(g, *t), cat).valid


@settings(max_examples=30)
@given(tree_configs(max_n=12), st.randoms())
def test_heredity(cat, cfg, rnd):
    g = extract_relation(random_tree(cfg))
    assert is_fitch(g, cat)
    keep = [v for v in g.vertices if rnd.random() < 0.6]
    assert is_fitch(induced_subrelation(g, keep), cat)


def test_permutation_closure(cat):
    for p in range(64):
        cid = cat.by_pattern[p].class_id
        for perm in itertools.permutations((0, 1, 2)):
            assert cat.by_pattern[permute_pattern(p, perm)].class_id == cid


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_vectorized_recognition_matches_reference(cat, data):
    """The numpy path (n >= 24) must agree with the brute triple scan."""
    import random

    seed = data.draw(st.integers(0, 10**6))
    rnd = random.Random(seed)
    names = tuple(f"v{i:02d}" for i in range(26))
    arcs = [
        (u, v) for u in names for v in names if u != v and rnd.random() < 0.08
    ]
    g = Digraph(names, arcs)
    got = find_invalid_triangle(g, cat)
    want = None
    for t in itertools.combinations(names, 3):
        if not cat.by_pattern[triangle_pattern(g, *t)].valid:
            want = t
            break
    assert got == want
