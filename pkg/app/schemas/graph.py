import operator
from typing import Any, Iterable, List, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _as_index(value: Any, what: str) -> int:
    """``value`` as a Python int; floats, strings and booleans are rejected."""
    if isinstance(value, (bool, np.bool_)):
        raise ValueError(f"{what} must be an integer, got {value!r}")
    try:
        return operator.index(value)
    except TypeError:
        raise ValueError(f"{what} must be an integer, got {value!r}") from None


class Graph(BaseModel):
    """Undirected simple graph on ``dimension`` labeled vertices.

    The adjacency matrix doubles as the quantum-walk Hamiltonian (J = 1).
    Vertex 0 is the Krylov seed and the DFS root by convention. Edges are
    stored as ``(i, j)`` pairs with ``i < j``, sorted lexicographically, so
    two graphs with the same edge set compare (and hash) equal.
    """

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=1)
    edges: Tuple[Tuple[int, int], ...] = ()

    @field_validator("dimension", mode="before")
    @classmethod
    def _check_dimension(cls, value: Any) -> int:
        return _as_index(value, "dimension")

    @field_validator("edges", mode="before")
    @classmethod
    def _normalize_edges(cls, raw: Any) -> Tuple[Tuple[int, int], ...]:
        if raw is None or isinstance(raw, (str, bytes, dict)):
            raise ValueError("edges must be a list of vertex pairs")
        try:
            items = list(raw)
        except TypeError:
            raise ValueError("edges must be a list of vertex pairs") from None

        seen = set()
        for edge in items:
            if isinstance(edge, (str, bytes, dict)):
                raise ValueError(f"edge {edge!r} must have exactly two endpoints")
            try:
                first, second = edge
            except (TypeError, ValueError):
                raise ValueError(f"edge {edge!r} must have exactly two endpoints") from None
            i, j = _as_index(first, "vertex"), _as_index(second, "vertex")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return tuple(sorted(seen))

    @model_validator(mode="after")
    def _check_range(self) -> "Graph":
        for i, j in self.edges:
            if i < 0 or j >= self.dimension:
                raise ValueError(f"edge ({i}, {j}) out of range for dimension {self.dimension}")
        return self

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        matrix = np.zeros((self.dimension, self.dimension))
        if self.edges:
            rows, cols = np.array(self.edges).T
            matrix[rows, cols] = 1.0
            matrix[cols, rows] = 1.0
        return matrix

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1).astype(int)

    def neighbors(self, vertex: int) -> List[int]:
        return sorted({j for i, j in self.edges if i == vertex} | {i for i, j in self.edges if j == vertex})

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.dimension))
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def from_edges(cls, dimension: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        return cls(dimension=dimension, edges=tuple(tuple(e) for e in edges))

    @classmethod
    def from_adjacency(cls, matrix: np.ndarray) -> "Graph":
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {matrix.shape}")
        if not np.array_equal(matrix != 0, (matrix != 0).T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(matrix) != 0):
            raise ValueError("adjacency must have an empty diagonal")
        rows, cols = np.nonzero(np.triu(matrix, k=1))
        return cls(dimension=matrix.shape[0], edges=tuple(zip(rows.tolist(), cols.tolist())))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Build from a networkx graph whose nodes are the integers ``0..n-1``."""
        n = graph.number_of_nodes()
        if set(graph.nodes) != set(range(n)):
            graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
        return cls(dimension=max(n, 1), edges=tuple(graph.edges))
