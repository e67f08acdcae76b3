import numpy as np
import pytest

from app.core.errors import GraphFormatError
from app.schemas.graph import Graph
from app.services import graphs
from app.services.graphs import make_path
from app.services.serialization import GraphFormat, parse_graph, serialize_graph


def test_parse_edge_list():
    g = parse_graph(b"3\n0 1\n1 2\n")
    assert g == Graph.from_edges(3, [(0, 1), (1, 2)])


def test_parse_edge_list_skips_blank_lines():
    assert parse_graph("4\n\n0 3\n\n") == Graph.from_edges(4, [(0, 3)])


def test_single_vertex():
    assert parse_graph("1\n") == Graph(dimension=1)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("3\n1 1\n", "self-loop"),
        ("3\n0 3\n", "out of range"),
        ("3\n1 0\n", "i < j"),
        ("3\n0 1\n0 1\n", "duplicate"),
        ("three\n0 1\n", "vertex count"),
        ("0\n", "positive"),
        ("3\n0  1\n", "expected 'i j'"),
        ("3\n01 2\n", "expected 'i j'"),
        ("3\n-1 2\n", "expected 'i j'"),
    ],
)
def test_parse_edge_list_errors(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph(text)


def test_non_ascii_input_is_a_format_error():
    with pytest.raises(GraphFormatError):
        parse_graph("2\n0 1\n".encode("utf-16"))


def test_parse_json():
    g = parse_graph('{"dimension": 3, "edges": [[1, 2], [0, 1]]}')
    assert g.edges == ((0, 1), (1, 2))


def test_parse_json_errors():
    with pytest.raises(GraphFormatError):
        parse_graph('{"dimension": 2, "edges": [[0, 0]]}')
    with pytest.raises(GraphFormatError):
        parse_graph('{"dimension": 2, "edges": [[0, 1]]', GraphFormat.JSON)


def test_dot_is_write_only():
    with pytest.raises(GraphFormatError):
        parse_graph("graph G {}", "dot")


def test_serialize_edge_list():
    assert serialize_graph(make_path(3)) == b"3\n0 1\n1 2\n"


GENERATED = [
    graphs.make_path(1),
    graphs.make_path(7),
    graphs.make_complete(6),
    graphs.make_star(8),
    graphs.make_hub_k_regular(7, 3),
    graphs.make_hub_k_regular(9, 4, generator_seed=5),
    graphs.make_m_ary_tree(3, 3),
    graphs.make_glued_tree(3),
    graphs.random_connected_graph(12, np.random.default_rng(3)),
]


@pytest.mark.parametrize("fmt", [GraphFormat.EDGE_LIST, GraphFormat.JSON])
@pytest.mark.parametrize("g", GENERATED, ids=lambda g: f"D{g.dimension}-E{g.num_edges}")
def test_round_trip(g, fmt):
    assert parse_graph(serialize_graph(g, fmt)) == g


def test_serialize_dot_marks_seed():
    text = serialize_graph(make_path(3), "dot").decode()
    assert text.startswith("graph G {")
    assert "0 [shape=doublecircle];" in text
    assert "0 -- 1;" in text and "1 -- 2;" in text
    assert text.rstrip().endswith("}")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"dimension": 3.0, "edges": [[0, 1]]}', "dimension must be an integer"),
        ('{"dimension": "2", "edges": [[0, 1]]}', "dimension must be an integer"),
        ('{"dimension": 3, "edges": [[0.9, 2]]}', "vertex must be an integer"),
        ('{"dimension": 3, "edges": [[true, 2]]}', "vertex must be an integer"),
        ('{"dimension": 3, "edges": [["0", 2]]}', "vertex must be an integer"),
        ('{"dimension": 2, "edges": [1]}', "two endpoints"),
        ('{"dimension": 3, "edges": [[0, 1, 2]]}', "two endpoints"),
        ('{"dimension": 2, "edges": null}', "list of vertex pairs"),
        ('{"dimension": 2, "edges": "01"}', "list of vertex pairs"),
        ('{"dimension": 3, "edges": [[2, 1], [1, 2]]}', "duplicate"),
        ('{"dimension": 3, "edges": [[2, 9]]}', "out of range"),
        ('{"dimension": 3, "edges": [[-1, 2]]}', "out of range"),
    ],
)
def test_parse_json_rejects_malformed_values(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_graph(text)


def test_graph_accepts_numpy_integers():
    g = Graph.from_edges(np.int64(3), [(np.int64(2), np.int32(0))])
    assert g.dimension == 3 and type(g.dimension) is int
    assert g.edges == ((0, 2),)
