from __future__ import annotations

import random

import networkx as nx
import pytest

from perles.complex import build_complex, dual_graph, free_ridges, induced_pure_subcomplex, star
from perles.conjecture import (
    CoreError,
    ModelError,
    SimplePolytopeModel,
    brute_force_candidates,
    brute_force_perles_subgraphs,
    check_conjecture,
    check_model,
    check_obstruction,
    complement_connected,
    compute_core,
    enumerate_perles_subgraphs,
    facet_subgraph_vertex_sets,
    format_model,
    format_report,
    from_simplicial_boundary,
    gamma_of_subgraph,
    is_perles_subgraph,
    parse_model,
    parse_report,
    report_fields,
    report_to_json,
    search_candidates,
    to_simplicial_boundary,
    weak_perles_flag,
)
from perles.generators import (
    CyclicSpec,
    cube_model,
    cyclic_facets_gale,
    simplex_boundary,
    simplex_model,
    stacked_boundary,
    truncate_vertex_model,
)
from perles.graphs import Graph, are_isomorphic, cartesian_product, complete_graph, induced_subgraph, is_connected

OCTAHEDRON = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]


def test_model_validation():
    with pytest.raises(ModelError):
        SimplePolytopeModel.from_facets(3, [(0, 1, 2)])
    with pytest.raises(ModelError):
        SimplePolytopeModel.from_facets(0, [(0,)])
    P = simplex_model(4)
    assert P.facet_membership == P.facets
    assert are_isomorphic(P.graph, complete_graph(5))


def test_from_simplicial_boundary():
    P = from_simplicial_boundary(simplex_boundary(4))
    assert (P.d, P.vertex_count, len(P.facets)) == (4, 5, 5)
    cube = from_simplicial_boundary(build_complex(OCTAHEDRON))
    assert (cube.d, cube.vertex_count, len(cube.facets)) == (3, 8, 6)
    q3 = cartesian_product(cartesian_product(complete_graph(2), complete_graph(2)), complete_graph(2))
    assert are_isomorphic(cube.graph, q3)
    assert cube.graph.edges == dual_graph(build_complex(OCTAHEDRON)).edges
    with pytest.raises(ModelError):
        from_simplicial_boundary(build_complex([(0, 1, 2), (1, 2, 3)]))


def test_to_simplicial_boundary_inverts():
    Delta = cyclic_facets_gale(CyclicSpec(4, 7))
    P = from_simplicial_boundary(Delta)
    D2, index = to_simplicial_boundary(P)
    assert D2 == Delta and index == list(range(P.vertex_count))


def test_facet_subgraph_sets():
    assert len(facet_subgraph_vertex_sets(simplex_model(4))) == 5
    assert all(len(F) == 4 for F in facet_subgraph_vertex_sets(cube_model(3)))
    P = truncate_vertex_model(cube_model(3), 2)
    assert len(facet_subgraph_vertex_sets(P)) == len(P.facets)


def test_is_perles_subgraph_examples():
    S = simplex_model(4)
    assert is_perles_subgraph(S, S.facets[0]).is_perles
    assert not is_perles_subgraph(S, [0]).regular
    Q = cube_model(3)
    c = is_perles_subgraph(Q, [0, 7])
    assert not c.regular and not c.connected
    with pytest.raises(ModelError):
        is_perles_subgraph(S, [])
    with pytest.raises(ModelError):
        is_perles_subgraph(S, range(5))


def test_weak_flag():
    S = simplex_model(4)
    assert weak_perles_flag(S, S.facets[0])
    assert not weak_perles_flag(cube_model(3), [0, 7])


@pytest.mark.parametrize("P, count", [
    (simplex_model(4), 5), (cube_model(3), 6), (truncate_vertex_model(cube_model(3), 0), 7),
    (from_simplicial_boundary(cyclic_facets_gale(CyclicSpec(4, 6))), 6),
])
def test_enumeration_examples(P, count):
    found = enumerate_perles_subgraphs(P)
    assert [c.vertex_set for c in found] == [c.vertex_set for c in brute_force_perles_subgraphs(P)]
    assert len(found) == count
    assert sorted(c.vertex_set for c in found) == facet_subgraph_vertex_sets(P)


def test_enumeration_on_random_regular_graphs():
    """Non-polytopal regular graphs have plenty of non-facet candidates."""
    nontrivial = 0
    for seed in range(120):
        rng = random.Random(seed)
        d = rng.choice([3, 4])
        n = rng.choice([x for x in range(d + 1, 17) if x * d % 2 == 0])
        G = Graph.from_edges(n, nx.random_regular_graph(d, n, seed=seed).edges())
        a = [c.vertex_set for c in search_candidates(G, d)]
        assert a == [c.vertex_set for c in brute_force_candidates(G, d)]
        nontrivial += len(a)
    assert nontrivial > 100


def test_parallel_enumeration_matches():
    P = from_simplicial_boundary(cyclic_facets_gale(CyclicSpec(4, 8)))
    assert enumerate_perles_subgraphs(P, workers=2) == enumerate_perles_subgraphs(P)


def test_brute_force_guard():
    with pytest.raises(ModelError):
        brute_force_perles_subgraphs(cube_model(5))


def test_search_rejects_irregular_graph():
    with pytest.raises(ModelError):
        search_candidates(Graph.from_edges(3, [(0, 1)]), 2)


def test_gamma_of_subgraph():
    D = simplex_boundary(4)
    assert gamma_of_subgraph(D, D.facets_containing((0,))) == star(D, (0,))
    assert gamma_of_subgraph(D, range(5)) == D


def test_every_candidate_has_one_free_ridge_per_facet(corpus):
    for P in corpus.values():
        Delta, index = to_simplicial_boundary(P)
        for c in enumerate_perles_subgraphs(P):
            Gamma = gamma_of_subgraph(Delta, [index[v] for v in c.vertex_set])
            owners = [f for _, f in free_ridges(Gamma)]
            assert sorted(owners) == sorted(Gamma.facets)
            assert compute_core(Delta, Gamma).is_empty


def test_core_of_vertex_star_is_empty():
    D = stacked_boundary(4, [0, 3])
    for v in D.vertices:
        G = star(D, (v,))
        core = compute_core(D, G)
        assert core.is_empty
        rep = check_obstruction(D, G, core)
        assert rep.ok and rep.is_vertex_star and rep.star_vertex == v


def test_core_precondition_error():
    D = simplex_boundary(4)
    G = induced_pure_subcomplex(D, [0, 1])
    with pytest.raises(CoreError) as err:
        compute_core(D, G)
    assert err.value.facet in G.facets


def test_complement_connectivity_graph_vs_complex(corpus):
    """Graph-level non-separation equals connectivity of the complement's dual graph."""
    for P in corpus.values():
        Delta, index = to_simplicial_boundary(P)
        for F in P.facets[:3]:
            H = [index[v] for v in F]
            rest = [v for v in range(P.vertex_count) if v not in set(F)]
            sub, _ = induced_subgraph(P.graph, rest)
            assert complement_connected(Delta, gamma_of_subgraph(Delta, H)) == is_connected(sub)


def test_check_conjecture_simplex():
    r = check_conjecture(simplex_boundary(4), polytope_id="simplex", homology_crosscheck=True)
    assert r.satisfies and len(r.candidates) == 5 and not r.violations
    assert all(ok for _, ok in r.homology_crosscheck)
    b = check_conjecture(simplex_boundary(4), brute_force=True)
    assert [c.vertex_set for c in b.candidates] == [c.vertex_set for c in r.candidates]


def test_check_conjecture_octahedron():
    r = check_conjecture(build_complex(OCTAHEDRON))
    assert r.satisfies and len(r.facet_subgraphs) == 6


def test_given_candidates_drop_non_candidates():
    r = check_model(cube_model(3), candidates=[[0, 1], [0, 1, 2, 3]])
    assert [c.vertex_set for c in r.candidates] == [(0, 1, 2, 3)]


def test_report_round_trip():
    r = check_conjecture(simplex_boundary(4), polytope_id="s")
    fields = report_fields(r)
    text = format_report(fields, header="run at some time")
    assert text.startswith("# ")
    assert parse_report(text) == [(k, v if not isinstance(v, tuple) else list(v)) for k, v in fields]
    assert '"verdict": "satisfies"' in report_to_json(fields)


def test_model_file_round_trip():
    P = truncate_vertex_model(cube_model(3), 1)
    assert parse_model(format_model(P)) == P
    with pytest.raises(ModelError):
        parse_model("x 3\n0 1 2\n")
