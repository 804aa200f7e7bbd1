import pytest

from cosetgi.errors import ParseError
from cosetgi.graph import (
    DiGraph,
    complement,
    complete_graph,
    directed_cycle,
    empty_graph,
    format_edge_list,
    in_degree_sequence,
    is_connected,
    is_undirected,
    out_degree_sequence,
    parse_edge_list,
    to_dot,
    weak_components,
)
from cosetgi.perm import Permutation


def test_no_loops():
    with pytest.raises(ValueError):
        DiGraph(3, [1, 0, 0])  # bit 0 set on row 0


def test_complement_k4_is_empty():
    assert complement(complete_graph(4)) == empty_graph(4)


def test_complement_involution_and_edge_count():
    g = DiGraph.from_edges(5, [(0, 1), (2, 3), (4, 0)])
    assert complement(complement(g)) == g
    assert g.arc_count() + complement(g).arc_count() == 5 * 4


def test_is_undirected():
    assert not is_undirected(directed_cycle(3))
    assert is_undirected(complete_graph(4))
    assert is_undirected(DiGraph.from_edges(3, [(0, 1)], undirected=True))


def test_degree_sequences():
    g = directed_cycle(4)
    assert out_degree_sequence(g) == [1, 1, 1, 1]
    assert in_degree_sequence(g) == [1, 1, 1, 1]


def test_weak_components_edgeless():
    assert len(weak_components(empty_graph(5))) == 5


def test_weak_components_k5():
    assert len(weak_components(complete_graph(5))) == 1
    assert is_connected(complete_graph(5))


def test_weak_components_direction_ignored():
    g = DiGraph.from_edges(4, [(0, 1), (2, 1), (3, 2)])
    assert len(weak_components(g)) == 1


def test_relabel_and_automorphism():
    g = directed_cycle(5)
    rot = Permutation([(i + 1) % 5 for i in range(5)])
    assert g.relabel(rot) == g
    assert g.is_automorphism(rot)
    refl = Permutation([(5 - i) % 5 for i in range(5)])
    assert not g.is_automorphism(refl)


def test_edge_list_round_trip():
    for g in [directed_cycle(5), complete_graph(4),
              DiGraph.from_edges(6, [(0, 1), (2, 5)], undirected=True)]:
        assert parse_edge_list(format_edge_list(g)) == g


def test_edge_list_errors():
    with pytest.raises(ParseError):
        parse_edge_list("")
    with pytest.raises(ParseError):
        parse_edge_list("3 1 nonsense\n1 2\n")
    with pytest.raises(ParseError):
        parse_edge_list("3 1 directed\n1 9\n")
    try:
        parse_edge_list("3 2 directed\n1 2\n1 x\n")
    except ParseError as e:
        assert e.position == 3
    else:
        pytest.fail("expected ParseError")


def test_to_dot_mentions_edges():
    dot = to_dot(directed_cycle(3))
    assert "digraph" in dot and "v1 -> v2" in dot
    dot = to_dot(complete_graph(3))
    assert "graph" in dot and "--" in dot
