import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qaoa_bounds.graph import (CapacityError, Graph, GraphError, RootedSubgraph, cut_value, girth,
                               max_cut_brute, minimum_cycle_basis, neighborhood_subgraph,
                               parse_graph, read_graph, serialize_graph)
from qaoa_bounds.graphs_lib import (NAMED_GRAPHS, complete_k4, cube, fig1_graph, heawood, hex_torus,
                                    mcgee, mobius_kantor, petersen, prism, random_cubic)

seeds = st.integers(0, 2**32 - 1)
sizes = st.sampled_from([4, 6, 8, 10, 12])


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


def test_graph_normalizes_and_rejects():
    g = Graph(3, ((1, 0), (2, 1)))
    assert g.edges == ((0, 1), (1, 2))
    assert g.degree(1) == 2 and g.has_edge(1, 0)
    with pytest.raises(GraphError, match="self-loop"):
        Graph(2, ((1, 1),))
    with pytest.raises(GraphError, match="duplicate"):
        Graph(2, ((0, 1), (1, 0)))
    with pytest.raises(GraphError, match="degree 4"):
        Graph(5, ((0, 1), (0, 2), (0, 3), (0, 4)))
    with pytest.raises(GraphError, match="out of range"):
        Graph(2, ((0, 5),))


def test_named_graphs_are_cubic():
    for name, make in NAMED_GRAPHS.items():
        g = make()
        assert g.is_cubic(), name
        assert g.deficient_vertex() is None


def test_girths():
    assert girth(complete_k4()) == 3
    assert girth(cube()) == 4
    assert girth(petersen()) == 5
    assert girth(heawood()) == 6
    assert girth(mobius_kantor()) == 6
    assert girth(mcgee()) == 7
    assert girth(hex_torus(6, 6)) == 6
    assert girth(Graph(3, ((0, 1), (1, 2)))) == float("inf")
    assert mcgee().vertex_count == 24 and heawood().vertex_count == 14


def test_deficient_vertex_named():
    g = Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)))
    assert g.deficient_vertex() == 2


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphError, match="line 2"):
        parse_graph("0 1\n0 x\n")
    with pytest.raises(GraphError, match="line 3: duplicate edge"):
        parse_graph("# c\n0 1\n1 0\n")
    with pytest.raises(GraphError, match="line 1: self-loop"):
        parse_graph("2 2\n")
    with pytest.raises(GraphError, match="line 4: vertex 0 exceeds degree"):
        parse_graph("0 1\n0 2\n0 3\n0 4\n")
    with pytest.raises(GraphError, match="expected two"):
        parse_graph("0 1 2\n")


@given(seeds, sizes)
def test_serialize_roundtrip(seed, n):
    g = random_cubic(n, np.random.default_rng(seed))
    assert parse_graph(serialize_graph(g)) == g


def test_read_graph(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# petersen\n" + serialize_graph(petersen()))
    assert read_graph(p) == petersen()


def test_neighborhood_of_high_girth_graph_is_tree():
    s = neighborhood_subgraph(mcgee(), (0, 1), 2)
    assert (s.graph.vertex_count, s.graph.edge_count) == (14, 13)
    s.validate()
    s1 = neighborhood_subgraph(heawood(), heawood().edges[3], 1)
    assert (s1.graph.vertex_count, s1.graph.edge_count) == (6, 5)


def test_neighborhood_keeps_only_inner_edges():
    # rung edge of the triangular prism: the triangle edges (1,2), (4,5) and
    # the other rungs join two distance-1 vertices and are dropped
    g = prism(3)
    s = neighborhood_subgraph(g, (0, 3), 1)
    assert (s.graph.vertex_count, s.graph.edge_count) == (6, 5)


@given(seeds, st.sampled_from([6, 8, 10]), st.integers(1, 2))
def test_neighborhood_contains_center_and_is_connected(seed, n, p):
    g = random_cubic(n, np.random.default_rng(seed))
    e = g.edges[seed % g.edge_count]
    s = neighborhood_subgraph(g, e, p)
    assert s.graph.has_edge(0, 1)
    assert s.graph.components() == 1
    assert max(s.distances()) <= p


@given(seeds, st.sampled_from([4, 6, 8, 10]))
def test_max_cut_matches_exhaustive(seed, n):
    g = random_cubic(n, np.random.default_rng(seed))
    res = max_cut_brute(g)
    best = max(cut_value(g, [1 if (b >> v) & 1 else -1 for v in range(n)]) for b in range(1 << n))
    assert res.best_cut == best
    assert cut_value(g, res.witness) == best


def test_max_cut_bipartite_and_limits():
    assert str(max_cut_brute(cube())) == "12/12"
    assert str(max_cut_brute(petersen())) == "12/15"
    assert str(max_cut_brute(complete_k4())) == "4/6"
    with pytest.raises(CapacityError):
        max_cut_brute(Graph(40, ()))


@given(seeds, st.sampled_from([4, 6, 8, 10, 12, 14]))
def test_cycle_basis_matches_networkx(seed, n):
    g = random_cubic(n, np.random.default_rng(seed))
    ours = minimum_cycle_basis(g)
    ref = nx.minimum_cycle_basis(to_nx(g))
    assert len(ours) == len(ref) == g.edge_count - g.vertex_count + 1
    assert sorted(map(len, ours)) == sorted(map(len, ref))
    for cyc in ours:
        assert len(set(cyc)) == len(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            assert g.has_edge(a, b)


def test_fig1_graph_counts(atlas1):
    from qaoa_bounds.atlas import count_subgraphs
    counts = count_subgraphs(fig1_graph(), atlas1).counts
    assert counts == {0: 4, 1: 1, 2: 10}


def test_relabel_preserves_structure(rng):
    g = petersen()
    perm = rng.permutation(g.vertex_count)
    h = g.relabel(perm)
    assert h.edge_count == g.edge_count and h.is_cubic()
    assert nx.is_isomorphic(to_nx(g), to_nx(h))


def test_rooted_subgraph_validate():
    with pytest.raises(GraphError):
        RootedSubgraph(Graph(3, ((0, 2), (1, 2))), 1).validate()
