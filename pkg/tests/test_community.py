import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import make_graph
from graphcall.community import default_k, fit_communities
from graphcall.errors import BadK, EmptyGraph, UnknownNode

TRIANGLES = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]


def partition(model):
    groups = {}
    for node, label in model.labels_.items():
        groups.setdefault(label, set()).add(node)
    return sorted(groups.values(), key=lambda group: sorted(group))


class TestFit:
    def test_two_disjoint_triangles(self):
        model = fit_communities(make_graph(TRIANGLES), k=2, seed=0)
        assert partition(model) == [{"0", "1", "2"}, {"3", "4", "5"}]

    def test_every_node_its_own_community(self):
        graph = make_graph(TRIANGLES)
        model = fit_communities(graph, k=6, seed=0)
        assert model.community_count() == 6
        assert sorted(model.sizes_) == [1] * 6

    def test_single_community(self):
        model = fit_communities(make_graph(TRIANGLES), k=1, seed=0)
        assert model.community_count() == 1
        assert set(model.labels_.values()) == {0}

    def test_default_k(self):
        assert default_k(8) == 2
        assert default_k(1) == 1
        graph = make_graph(TRIANGLES)
        model = fit_communities(graph, seed=0)
        assert model.community_count() == default_k(6)

    def test_exactly_k_nonempty(self):
        # Duplicate affinity rows (two isolated node pairs) still yield k
        # nonempty communities.
        graph = make_graph([(0, 1), (2, 3)], nodes=[0, 1, 2, 3, 4, 5])
        model = fit_communities(graph, k=4, seed=1)
        assert model.community_count() == 4
        assert all(size >= 1 for size in model.sizes_)

    def test_errors(self):
        graph = make_graph(TRIANGLES)
        with pytest.raises(BadK):
            fit_communities(graph, k=0)
        with pytest.raises(BadK):
            fit_communities(graph, k=7)
        with pytest.raises(EmptyGraph):
            fit_communities(make_graph([], nodes=[]))
        with pytest.raises(UnknownNode):
            fit_communities(graph, k=2).community("99")


@pytest.fixture(scope="module")
def model():
    return fit_communities(make_graph(TRIANGLES), k=2, seed=0)


class TestReads:
    def test_count(self, model):
        assert model.community_count() == 2

    def test_check(self, model):
        assert model.common_community_check("0", "1") is True
        assert model.common_community_check("0", "3") is False

    def test_sizes(self, model):
        assert model.community_size("0") == 3
        assert model.community_max_size() == 3
        assert model.community_avg_size() == pytest.approx(3.0)

    def test_size_invariants(self, model):
        assert sum(model.sizes_) == 6
        assert model.community_avg_size() * model.community_count() == pytest.approx(6)


class TestDeterminismAndInvariance:
    def test_same_seed_same_partition(self):
        a = fit_communities(make_graph(TRIANGLES), k=2, seed=42)
        b = fit_communities(make_graph(TRIANGLES), k=2, seed=42)
        assert a.labels_ == b.labels_

    def test_insertion_order_irrelevant(self):
        rng = random.Random(9)
        edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5), (5, 6), (6, 7)]
        base = fit_communities(make_graph(edges), k=3, seed=5)
        for _ in range(5):
            shuffled = edges[:]
            rng.shuffle(shuffled)
            flipped = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in shuffled]
            other = fit_communities(make_graph(flipped), k=3, seed=5)
            assert partition(other) == partition(base)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=12))
    possible = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(possible), unique=True, max_size=len(possible)))
    k = draw(st.integers(min_value=1, max_value=n))
    seed = draw(st.integers(min_value=0, max_value=10))
    return n, edges, k, seed


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_common_community_check_is_equivalence(params):
    n, edges, k, seed = params
    graph = make_graph(edges, nodes=range(n))
    model = fit_communities(graph, k=k, seed=seed)
    nodes = sorted(graph.nodes)
    for a in nodes:
        assert model.common_community_check(a, a)
    for a in nodes:
        for b in nodes:
            assert model.common_community_check(a, b) == model.common_community_check(b, a)
    for a in nodes:
        for b in nodes:
            for c in nodes:
                if model.common_community_check(a, b) and model.common_community_check(b, c):
                    assert model.common_community_check(a, c)
    assert sum(model.sizes_) == n
    assert model.community_count() == k
