from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemefusion import generators as gen
from schemefusion.errors import NotAnEdge, TooLarge
from schemefusion.fusegraph import (
    FusingGraph,
    contract,
    contraction_check,
    fused_graph,
    fusing_graph,
    graph_profile,
    has_claw_naive,
    require_hamiltonian,
    to_dot,
)
from schemefusion.scheme import spectrum, validate_table


def graph(n, edges):
    return FusingGraph.build([{i} for i in range(1, n + 1)], [({a}, {b}) for a, b in edges])


def path(n):
    return graph(n, [(i, i + 1) for i in range(1, n)])


def has_spanning_path(G):
    verts = list(G.vertices)
    return any(all(G.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))
               for p in permutations(verts))


def has_spanning_cycle(G):
    verts = list(G.vertices)
    if len(verts) < 3:
        return False
    first, rest = verts[0], verts[1:]
    return any(all(G.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))
               for c in ((first,) + p for p in permutations(rest)))


random_graphs = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.sampled_from(list(combinations(range(1, n + 1), 2)))
                                            if n > 1 else st.nothing())))


# --- profiles -------------------------------------------------------------------

def test_path_five_profile():
    prof = graph_profile(path(5))
    assert prof == {"connected": True, "isPath": True, "maxDegree": 2, "hasClaw": False,
                    "hamiltonian": False, "edgeCount": 4}


def test_triangle_plus_isolated_vertex_profile():
    prof = graph_profile(graph(4, [(1, 2), (1, 3), (2, 3)]))
    assert not prof["connected"] and not prof["isPath"]
    assert prof["maxDegree"] == 2 and prof["edgeCount"] == 3


def test_complete_four_profile():
    prof = graph_profile(graph(4, combinations(range(1, 5), 2)))
    assert prof["connected"] and not prof["isPath"]
    assert prof["hasClaw"] and prof["hamiltonian"] and prof["edgeCount"] == 6


def test_hamiltonicity_size_limit():
    assert graph_profile(path(13))["hamiltonian"] is None
    with pytest.raises(TooLarge):
        require_hamiltonian(path(13))


@given(random_graphs)
@settings(max_examples=200, deadline=None)
def test_claw_flag_matches_naive_search(g):
    n, edges = g
    G = graph(n, edges)
    assert graph_profile(G)["hasClaw"] == has_claw_naive(G)


@given(random_graphs)
@settings(max_examples=150, deadline=None)
def test_hamiltonian_cycle_matches_permutation_search(g):
    n, edges = g
    G = graph(n, edges)
    assert graph_profile(G)["hamiltonian"] == has_spanning_cycle(G)


@given(random_graphs)
@settings(max_examples=150, deadline=None)
def test_path_flag_matches_definition(g):
    n, edges = g
    G = graph(n, edges)
    is_path = len(edges) == n - 1 and has_spanning_path(G)
    assert graph_profile(G)["isPath"] == is_path


# --- contraction ----------------------------------------------------------------

def test_contract_path():
    H = contract(path(3), {1}, {2})
    assert H.edge_list() == [((1, 2), (3,))]


def test_contract_triangle():
    H = contract(graph(3, [(1, 2), (1, 3), (2, 3)]), {1}, {2})
    assert len(H.vertices) == 2 and len(H.edges) == 1


def test_contract_star_spoke_gives_path():
    H = contract(graph(4, [(1, 2), (1, 3), (1, 4)]), {1}, {2})
    assert graph_profile(H)["isPath"] and len(H.edges) == 2


def test_contract_non_edge():
    with pytest.raises(NotAnEdge):
        contract(path(3), {1}, {3})


# --- graphs of schemes ------------------------------------------------------------

@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_chain_graphs_are_paths(d):
    spec = spectrum(validate_table(gen.wreath_chain(*([2] * d))))
    assert fusing_graph(spec.P).edge_list() == path(d).edge_list()
    assert fusing_graph(spec.Q).edge_list() == path(d).edge_list()


def test_clique_plus_vertex_graphs(clique_vertex_spec):
    triangle = [((1,), (2,)), ((1,), (3,)), ((2,), (3,))]
    assert fusing_graph(clique_vertex_spec.P).edge_list() == triangle
    H = fusing_graph(clique_vertex_spec.Q)
    iso = [l for l in range(1, 5) if clique_vertex_spec.P[l, 4] < 0]
    assert len(iso) == 1 and H.degree({iso[0]}) == 0 and len(H.edges) == 3


def test_grid_graph_is_triangle(grid_spec):
    assert len(fusing_graph(grid_spec.P).edges) == 3


def test_contraction_inside_fused_graph_chain(chain222_spec):
    res = contraction_check(chain222_spec.P, 1, 2)
    assert res["ok"]
    assert len(fused_graph(chain222_spec.P, 1, 2).edges) == 1


@pytest.mark.parametrize("i,j", [(1, 2), (1, 3), (2, 3)])
def test_contraction_inside_fused_graph_grid(grid_spec, i, j):
    assert contraction_check(grid_spec.P, i, j)["ok"]


def test_proper_containment_example(johnson7_spec):
    """Three classes, one strongly regular relation: fusing the edge gives K2 > K1 + K1."""
    G = fusing_graph(johnson7_spec.P)
    assert G.edge_list() == [((1,), (3,))]
    res = contraction_check(johnson7_spec.P, 1, 3)
    assert res["ok"] and res["strict"]
    assert len(contract(G, {1}, {3}).edges) == 0
    assert len(fused_graph(johnson7_spec.P, 1, 3).edges) == 1


def test_dot_export():
    text = to_dot(path(3), name="relations")
    assert text.startswith("graph relations {")
    assert '"1" -- "2";' in text and '"2" -- "3";' in text
    assert text.rstrip().endswith("}")
