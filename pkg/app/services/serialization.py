import enum
import re
from typing import Optional, Union

from pydantic import ValidationError

from app.core.errors import GraphFormatError
from app.schemas.graph import Graph


class GraphFormat(str, enum.Enum):
    EDGE_LIST = "edge-list"
    JSON = "json"
    DOT = "dot"


_COUNT = re.compile(r"(0|[1-9][0-9]*)")
_EDGE = re.compile(r"(0|[1-9][0-9]*) (0|[1-9][0-9]*)")


def _sniff(text: str) -> GraphFormat:
    return GraphFormat.JSON if text.lstrip().startswith("{") else GraphFormat.EDGE_LIST


def _parse_edge_list(text: str) -> Graph:
    lines = text.split("\n")
    if not _COUNT.fullmatch(lines[0]):
        raise GraphFormatError(f"line 1: expected vertex count, got {lines[0]!r}")
    dimension = int(lines[0])
    if dimension < 1:
        raise GraphFormatError("line 1: vertex count must be positive")

    edges = set()
    for number, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        match = _EDGE.fullmatch(line)
        if not match:
            raise GraphFormatError(f"line {number}: expected 'i j', got {line!r}")
        i, j = int(match.group(1)), int(match.group(2))
        if i == j:
            raise GraphFormatError(f"line {number}: self-loop at vertex {i}")
        if j >= dimension:
            raise GraphFormatError(f"line {number}: vertex {j} out of range for D={dimension}")
        if i > j:
            raise GraphFormatError(f"line {number}: endpoints must satisfy i < j, got {i} {j}")
        if (i, j) in edges:
            raise GraphFormatError(f"line {number}: duplicate edge {i} {j}")
        edges.add((i, j))
    return Graph.from_edges(dimension, edges)


def parse_graph(data: Union[bytes, str], format: Optional[Union[GraphFormat, str]] = None) -> Graph:
    """Parse edge-list or JSON graph text; the format is sniffed when not given."""
    try:
        text = data.decode("ascii") if isinstance(data, bytes) else data
    except UnicodeDecodeError as exc:
        raise GraphFormatError("graph text must be ASCII") from exc
    fmt = GraphFormat(format) if format is not None else _sniff(text)

    if fmt is GraphFormat.DOT:
        raise GraphFormatError("DOT is a write-only format")
    if fmt is GraphFormat.EDGE_LIST:
        return _parse_edge_list(text)
    try:
        return Graph.model_validate_json(text)
    except ValidationError as exc:
        raise GraphFormatError(f"invalid graph JSON: {exc.errors()[0]['msg']}") from exc


def serialize_graph(g: Graph, format: Union[GraphFormat, str] = GraphFormat.EDGE_LIST) -> bytes:
    fmt = GraphFormat(format)
    if fmt is GraphFormat.EDGE_LIST:
        text = f"{g.dimension}\n" + "".join(f"{i} {j}\n" for i, j in g.edges)
    elif fmt is GraphFormat.JSON:
        text = g.model_dump_json() + "\n"
    else:
        lines = ["graph G {", "  0 [shape=doublecircle];"]
        lines += [f"  {v};" for v in range(1, g.dimension)]
        lines += [f"  {i} -- {j};" for i, j in g.edges]
        lines.append("}")
        text = "\n".join(lines) + "\n"
    return text.encode("ascii")
