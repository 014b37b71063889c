import pytest
from hypothesis import given

from ternary_betti.graph import (
    Graph,
    GraphError,
    add_isolated_vertex,
    as_mask,
    disjoint_union,
    family,
    format_adjacency_list,
    induced_subgraph,
    members,
    parse_adjacency_list,
    parse_family,
    residual,
    residual_mask,
)

from oracles import brute_residual_vertices
from strategies import graphs


def cyc(n):
    return family("cycle", n)


def test_construction_rejects_asymmetric_adjacency():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))


def test_construction_rejects_self_loop():
    with pytest.raises(GraphError):
        Graph(1, (1,))
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])


def test_construction_rejects_stray_bits():
    with pytest.raises(GraphError):
        Graph(2, (0b100, 0))
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_vertex_cap():
    Graph(64, (0,) * 64)
    with pytest.raises(GraphError):
        Graph(65, (0,) * 65)


def test_mask_helpers():
    assert as_mask([0, 3]) == 0b1001
    assert as_mask(0b101) == 0b101
    assert members(0b10110) == [1, 2, 4]


# 1-indexed examples shifted to 0-indexed labels
def test_residual_cycle6_single_vertex():
    sub, mapping = residual(cyc(6), {0}, set())
    assert mapping == (2, 3, 4)
    assert sub.edges() == [(0, 1), (1, 2)]


def test_residual_covering_sets_give_null_graph():
    assert residual(cyc(6), {0, 3}, set())[0].n == 0
    assert residual(cyc(9), {0, 3, 6}, set())[0].n == 0


def test_residual_overlap_is_an_error():
    with pytest.raises(GraphError):
        residual_mask(cyc(5), {1}, {1, 2})


def test_induced_subgraph_examples():
    sub, mapping = induced_subgraph(cyc(5), {0, 1, 2})
    assert sub.edges() == [(0, 1), (1, 2)] and mapping == (0, 1, 2)
    assert induced_subgraph(cyc(5), set())[0] == Graph.null()
    g = cyc(7)
    assert induced_subgraph(g, range(7))[0] == g


def test_families():
    tri = family("cycle", 3)
    assert tri.edges() == [(0, 1), (0, 2), (1, 2)]
    p1 = family("path", 1)
    assert p1.n == 1 and p1.edge_count == 0
    c9 = family("cycle", 9)
    assert c9.edge_count == 9 and all(c9.degree(v) == 2 for v in range(9))
    assert family("complete", 4).edge_count == 6
    assert family("empty", 3).edge_count == 0


@pytest.mark.parametrize("text", ["cycle", "cycle:", "cycle:x", "cycle:2", "star:4", "path:-1"])
def test_bad_family_strings(text):
    with pytest.raises(GraphError):
        parse_family(text)


def test_parse_family():
    assert parse_family("cycle:6") == cyc(6)


def test_adjacency_list_round_trip():
    g = cyc(5)
    assert parse_adjacency_list(format_adjacency_list(g)) == g
    assert parse_adjacency_list("# comment\n3\n0 1  # edge\n") == Graph.from_edges(3, [(0, 1)])


@pytest.mark.parametrize("text", ["", "x\n", "3\n0\n", "3\n0 5\n", "2\n0 a\n"])
def test_adjacency_list_errors(text):
    with pytest.raises(GraphError):
        parse_adjacency_list(text)


def test_disjoint_union_and_isolated_vertex():
    g = disjoint_union(family("path", 2), family("path", 2))
    assert g.edges() == [(0, 1), (2, 3)]
    h = add_isolated_vertex(cyc(3))
    assert h.n == 4 and h.degree(3) == 0


@given(graphs())
def test_residual_empty_is_identity(g):
    assert residual(g, 0, 0)[0] == g


@given(graphs(min_n=1))
def test_residual_matches_brute_force(g):
    x = {v for v in range(g.n) if v % 3 == 0}
    y = {v for v in range(g.n) if v % 3 == 1 and v not in x}
    _, mapping = residual(g, x, y)
    assert list(mapping) == brute_residual_vertices(g, x, y)


@given(graphs(min_n=2))
def test_residual_composes(g):
    # X + {v} in one step equals {v} applied to the residual, after relabeling
    v = g.n - 1
    x = 1 if not g.has_edge(0, v) else 0
    y = 0
    sub, mapping = residual(g, x, y)
    if v not in mapping:
        return
    outer, outer_map = residual(g, x | (1 << v), y)
    inner, inner_map = residual(sub, {mapping.index(v)}, set())
    assert outer == inner
    assert outer_map == tuple(mapping[i] for i in inner_map)
