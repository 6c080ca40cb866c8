import pytest
from hypothesis import given, settings

from fitch import Digraph, ScenarioConfig, bench, is_fitch, random_fitch, random_tree
from fitch.formats import serialize_newick

from conftest import tree_configs


def test_config_validation():
    with pytest.raises(ValueError):
        ScenarioConfig(1, 0.5, 0)
    with pytest.raises(ValueError):
        ScenarioConfig(5, 1.5, 0)
    with pytest.raises(ValueError):
        ScenarioConfig(5, 0.5, 0, "nope")


@settings(max_examples=30, deadline=None)
@given(tree_configs())
def test_determinism(cfg):
    assert serialize_newick(random_tree(cfg)) == serialize_newick(random_tree(cfg))


@settings(max_examples=30, deadline=None)
@given(tree_configs())
def test_tree_shape(cfg):
    t = random_tree(cfg)
    assert t.phylogenetic
    assert t.leaf_names == {f"l{i}" for i in range(1, cfg.n + 1)}


def test_forced_labels():
    t0 = random_tree(ScenarioConfig(8, 0.0, 3))
    assert all(nd.label == 0 for i, nd in enumerate(t0.nodes) if i != t0.root)
    assert random_fitch(ScenarioConfig(8, 0.0, 3)) == Digraph(t0.leaf_names)
    t1 = random_tree(ScenarioConfig(8, 1.0, 3))
    assert all(nd.label == 1 for i, nd in enumerate(t1.nodes) if i != t1.root)


def test_binary_mode_is_binary():
    t = random_tree(ScenarioConfig(17, 0.5, 9, "binary-yule"))
    for i, nd in enumerate(t.nodes):
        if not nd.is_leaf:
            assert len(nd.children) == 2


@settings(max_examples=20, deadline=None)
@given(tree_configs(max_n=16))
def test_generated_relations_are_fitch(cat, cfg):
    assert is_fitch(random_fitch(cfg), cat)


def test_bench_rows():
    assert bench([], ScenarioConfig(2, 0.5, 0)) == []
    rows = bench([10, 20], ScenarioConfig(2, 0.4, 5))
    assert [(r[0], r[1]) for r in rows] == [
        (10, "triples"), (10, "cotree"), (20, "triples"), (20, "cotree"),
    ]
    assert rows[0][3] == rows[1][3]  # same output tree size per n
    assert all(r[2] >= 0 for r in rows)
