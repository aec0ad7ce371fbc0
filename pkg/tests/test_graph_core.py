import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete
from oracles import atlas_graphs, brute_minimal_separators, brute_separating, to_nx, union_find_parts
from raagsplit import graph_core as gc
from raagsplit.graph_core import Graph, GraphError

SMALL = atlas_graphs(5)


def test_graph_rejects_loops_and_unknown_vertices():
    with pytest.raises(GraphError):
        Graph("ab", [("a", "a")])
    with pytest.raises(GraphError):
        Graph("ab", [("a", "z")])
    with pytest.raises(GraphError):
        Graph(["a", "a"])


def test_edges_are_unordered():
    assert Graph("ab", [("a", "b")]) == Graph("ab", [("b", "a")])


def test_induced_subgraph_examples(p3, c4):
    tri = complete(3)
    assert gc.induced_subgraph(tri, {"a", "b"}) == Graph("ab", [("a", "b")])
    assert gc.induced_subgraph(tri, set()) == Graph([])
    sub = gc.induced_subgraph(c4, {"a", "c"})
    assert sub.vertices == ("a", "c") and not sub.edges
    with pytest.raises(GraphError):
        gc.induced_subgraph(p3, {"q"})


def test_components_examples(p3, c4):
    assert gc.components(p3) == [frozenset("abc")]
    assert gc.components(Graph("xy")) == [{"x"}, {"y"}]
    assert gc.components(gc.induced_subgraph(c4, {"b", "d"})) == [{"b"}, {"d"}]


def test_is_separating_examples(p3, c4, k3):
    assert gc.is_separating(p3, {"b"})
    assert gc.is_separating(c4, {"a", "c"})
    for r in range(4):
        for s in itertools.combinations(k3.vertices, r):
            assert not gc.is_separating(k3, s)
    assert not gc.is_separating(p3, p3.vertices)
    assert gc.is_separating(Graph("xy"), set())


def test_separates_examples(p3, c4):
    assert gc.separates(p3, {"b"}, "a", "c")
    assert not gc.separates(p3, set(), "a", "c")
    assert gc.separates(c4, {"a", "c"}, "b", "d")
    with pytest.raises(GraphError):
        gc.separates(p3, {"b"}, "b", "c")


def test_cut_vertices_examples(p3, c4):
    bowtie = Graph("abmcd", [("a", "b"), ("a", "m"), ("b", "m"), ("m", "c"), ("m", "d"), ("c", "d")])
    assert gc.cut_vertices(p3) == {"b"}
    assert gc.cut_vertices(c4) == frozenset()
    assert gc.cut_vertices(bowtie) == {"m"}


def test_cut_cliques_examples(p3, c4):
    assert gc.cut_cliques(p3) == [{"b"}]
    assert gc.cut_cliques(c4) == []
    assert gc.cut_cliques(Graph("xyz", [("y", "z")]))[0] == frozenset()


def test_minimal_separators_examples(p3, c4):
    assert gc.minimal_separators(p3) == [{"b"}]
    assert gc.minimal_separators(c4) == [{"a", "c"}, {"b", "d"}]
    assert gc.minimal_separators(complete(4)) == []


def test_minimal_separators_bound():
    big = Graph([f"v{i}" for i in range(17)])
    with pytest.raises(gc.BoundExceeded):
        gc.minimal_separators(big)
    assert gc.minimal_separators(Graph("abc"), bound=3) == [frozenset()]


def test_is_complete_examples(p3, k3):
    assert gc.is_complete(k3)
    assert gc.is_complete(Graph("a"))
    assert not gc.is_complete(p3)


@pytest.mark.parametrize("g", SMALL, ids=repr)
def test_separation_matches_union_find(g):
    for r in range(len(g) + 1):
        for s in itertools.combinations(g.vertices, r):
            s = frozenset(s)
            assert gc.is_separating(g, s) == (union_find_parts(g, s) >= 2)


@pytest.mark.parametrize("g", SMALL, ids=repr)
def test_characterizations_match_brute_force(g):
    h = to_nx(g)
    assert gc.cut_vertices(g) == {v for v in g.vertices if union_find_parts(g, {v}) >= 2}
    if len(g) and nx.is_connected(h):
        assert gc.cut_vertices(g) == set(nx.articulation_points(h))
    mins = gc.minimal_separators(g)
    assert set(mins) == brute_minimal_separators(g)
    if len(gc.components(g)) == 1:
        # disconnected graphs have the empty set as sole minimal separator
        assert gc.cut_vertices(g) == {next(iter(s)) for s in mins if len(s) == 1}
    cliques = [s for s in brute_separating(g) if gc.is_complete(gc.induced_subgraph(g, s))]
    assert set(gc.cut_cliques(g)) == set(cliques)
    for s in gc.cut_cliques(g):
        assert gc.is_separating(g, s) and gc.is_clique(g, s)


def test_output_order_is_size_then_lexicographic():
    g = Graph("abcdef", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "a")])
    seps = gc.minimal_separators(g)
    keys = [gc.vertex_set_key(g, s) for s in seps]
    assert keys == sorted(keys)


@st.composite
def graphs(draw):
    n = draw(st.integers(0, 7))
    names = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(names, 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(names, edges)


@given(graphs())
def test_components_partition(g):
    parts = gc.components(g)
    assert sum(len(p) for p in parts) == len(g)
    assert frozenset().union(*parts) == frozenset(g.vertices)
    assert len(parts) == union_find_parts(g)
    mins = [min(g.index(v) for v in p) for p in parts]
    assert mins == sorted(mins)


def test_parse_line_format():
    g = gc.parse_graph("a b c\na b\n\nb c\n")
    assert g == Graph("abc", [("a", "b"), ("b", "c")])
    assert gc.parse_graph(gc.format_graph(g)) == g


def test_parse_dot_subset():
    g = gc.parse_graph('graph G {\n  a -- b -- c;\n  d;\n  "c" -- a [color=red];\n}')
    assert g.vertices == ("a", "b", "c", "d")
    assert len(g.edges) == 3


@pytest.mark.parametrize(
    "text, line",
    [("a b\na z\n", "line 2"), ("a b\na b c\n", "line 2"), ("a b\n\nb b\n", "line 3")],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphError, match=line):
        gc.parse_graph(text)
