import itertools

import pytest
from hypothesis import strategies as st

from fitch import Digraph, ScenarioConfig, derive_triangle_catalog, random_tree


@pytest.fixture(scope="session")
def cat():
    return derive_triangle_catalog()


def tree_configs(max_n=20, modes=("binary-yule", "random-multifurcating")):
    """Strategy for ScenarioConfig values; seeds make shrinking useful."""
    return st.builds(
        ScenarioConfig,
        n=st.integers(2, max_n),
        p=st.sampled_from([0.0, 0.1, 0.5, 1.0]),
        seed=st.integers(0, 2**32 - 1),
        mode=st.sampled_from(modes),
    )


def trees(max_n=20):
    return tree_configs(max_n).map(random_tree)


def small_digraphs(names=("a", "b", "c", "d")):
    pairs = [(u, v) for u in names for v in names if u != v]
    return st.sets(st.sampled_from(pairs)).map(lambda arcs: Digraph(names, arcs))


def all_digraphs(names):
    """Deterministic exhaustive enumeration, not a strategy."""
    pairs = [(u, v) for u in names for v in names if u != v]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield Digraph(names, [p for p, b in zip(pairs, bits) if b])
