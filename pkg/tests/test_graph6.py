import networkx as nx
import pytest
from hypothesis import given

from tests.settings import STANDARD_SETTINGS
from tests.utils import graphs, to_networkx
from turanbench.config import configure
from turanbench.errors import InvalidArgument
from turanbench.graph import Graph
from turanbench.graph6 import (
    HEADER,
    decode_graph6,
    encode_graph6,
    read_graph6,
    write_graph6,
)


def test_known_encodings():
    assert encode_graph6(Graph.empty(0)) == "?"
    assert encode_graph6(Graph.empty(1)) == "@"
    assert encode_graph6(Graph.complete(4)) == "C~"
    assert decode_graph6("C~") == Graph.complete(4)
    assert decode_graph6(HEADER + "C~\n") == Graph.complete(4)
    assert decode_graph6(b"  C~ ") == Graph.complete(4)


def test_long_size_prefix():
    configure(max_vertices=70)
    text = encode_graph6(Graph.empty(63))
    assert text.startswith("~??~")
    assert decode_graph6(text) == Graph.empty(63)


@STANDARD_SETTINGS
@given(graphs(min_n=1, max_n=12))
def test_matches_networkx(g):
    expected = nx.to_graph6_bytes(to_networkx(g), header=False)
    assert encode_graph6(g) == expected.decode("ascii").strip()
    assert decode_graph6(expected) == g


@pytest.mark.parametrize(
    "text",
    [
        "",
        "C",
        "C~~",
        "B@",
        "A@",
        "B\x7f",
        "~~???",
    ],
)
def test_rejects_malformed(text):
    with pytest.raises(InvalidArgument):
        decode_graph6(text)


def test_rejects_too_many_vertices():
    # 65 vertices, one over the default limit.
    with pytest.raises(InvalidArgument):
        decode_graph6("~?@@" + "?" * 347)


def test_file_round_trip(tmp_path):
    path = tmp_path / "graphs.g6"
    graphs = [Graph.complete(4), Graph.empty(2), Graph.complete(5)]

    write_graph6(path, graphs)
    assert path.read_text() == "C~\nA?\nD~{\n"
    assert read_graph6(path) == graphs

    write_graph6(path, graphs, header=True)
    assert read_graph6(path) == graphs
