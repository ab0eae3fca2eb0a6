from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from perles.graphs import (
    Graph,
    GraphError,
    are_isomorphic,
    cartesian_product,
    complete_graph,
    connected_components,
    cycle_graph,
    distance_two_pairs,
    find_isomorphism,
    induced_subgraph,
    is_k_regular,
    local_connectivity,
    naatz_k_connected,
    path_graph,
    petersen_graph,
    vertex_connectivity,
)


def random_graph(rng, n, p):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.node_count))
    H.add_edges_from(G.edges)
    return H


def test_constructors():
    assert len(complete_graph(5).edges) == 10
    assert is_k_regular(cycle_graph(6), 2).ok
    assert not is_k_regular(path_graph(3), 2).ok
    P = petersen_graph()
    assert is_k_regular(P, 3).ok and len(P.edges) == 15
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_cartesian_product_numbering():
    Q = cartesian_product(complete_graph(2), cycle_graph(4))
    assert Q.node_count == 8 and is_k_regular(Q, 3).ok
    assert (0, 4) in Q.edges and (4, 5) in Q.edges


def test_induced_subgraph_and_components():
    G = cycle_graph(6)
    sub, nodes = induced_subgraph(G, [0, 1, 3, 4])
    assert nodes == [0, 1, 3, 4] and sub.edges == ((0, 1), (2, 3))
    assert connected_components(sub) == [[0, 1], [2, 3]]


@pytest.mark.parametrize("G, kappa", [
    (complete_graph(5), 4), (cycle_graph(7), 2), (path_graph(4), 1), (petersen_graph(), 3),
    (Graph.from_edges(4, [(0, 1), (2, 3)]), 0),
])
def test_vertex_connectivity_examples(G, kappa):
    assert vertex_connectivity(G) == kappa


def test_vertex_connectivity_against_networkx():
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(2, 11)
        G = random_graph(rng, n, rng.uniform(0.2, 0.9))
        assert vertex_connectivity(G) == nx.node_connectivity(to_nx(G))


def test_local_connectivity_against_networkx():
    rng = random.Random(9)
    checked = 0
    for _ in range(120):
        G = random_graph(rng, rng.randint(4, 12), rng.uniform(0.2, 0.7))
        H = to_nx(G)
        for s in range(G.node_count):
            for t in range(s + 1, G.node_count):
                if t in G.adjacency[s]:
                    continue
                assert local_connectivity(G, s, t) == nx.algorithms.connectivity.local_node_connectivity(H, s, t)
                checked += 1
    assert checked > 500
    with pytest.raises(GraphError):
        local_connectivity(complete_graph(3), 0, 1)


def test_local_connectivity_cap():
    assert local_connectivity(petersen_graph(), 0, 2, cap=2) == 2


def test_distance_two_pairs():
    assert distance_two_pairs(path_graph(4)) == [(0, 2), (1, 3)]
    assert distance_two_pairs(complete_graph(4)) == []


def test_naatz_needs_connectivity_and_size():
    G = Graph.from_edges(8, [(i, j) for i in range(4) for j in range(i + 1, 4)] +
                         [(i, j) for i in range(4, 8) for j in range(i + 1, 8)])
    res = naatz_k_connected(G, 3)
    assert not res.ok and res.witness == (0, 4)
    with pytest.raises(GraphError):
        naatz_k_connected(complete_graph(3), 3)
    assert naatz_k_connected(petersen_graph(), 3).ok
    assert not naatz_k_connected(petersen_graph(), 4).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 10), st.integers(0, 2 ** 30), st.sampled_from([2, 3]))
def test_naatz_matches_exact(n, seed, k):
    G = random_graph(random.Random(seed), n, 0.5)
    assert naatz_k_connected(G, k).ok == (vertex_connectivity(G) >= k)


def test_isomorphism_against_networkx():
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randint(1, 9)
        G = random_graph(rng, n, 0.4)
        perm = list(range(n))
        rng.shuffle(perm)
        H = Graph.from_edges(n, [(perm[u], perm[v]) for u, v in G.edges])
        m = find_isomorphism(G, H)
        assert m is not None
        assert all(m[v] in H.adjacency[m[u]] for u, v in G.edges)
        K = random_graph(rng, n, 0.4)
        assert are_isomorphic(G, K) == nx.is_isomorphic(to_nx(G), to_nx(K))


def test_isomorphism_respects_colours():
    G = path_graph(3)
    assert find_isomorphism(G, G, [0, 1, 0], [0, 1, 0]) is not None
    assert find_isomorphism(G, G, [1, 0, 0], [0, 1, 0]) is None


def test_regular_non_isomorphic_pairs():
    # two 3-regular graphs on 6 nodes: prism and K_{3,3}
    prism = cartesian_product(complete_graph(2), complete_graph(3))
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    assert not are_isomorphic(prism, k33)
