from typing import List

import numpy as np
import pytest

from app.schemas.graph import Graph
from app.services.graphs import random_connected_graph


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240531)


@pytest.fixture
def random_graphs(rng) -> List[Graph]:
    """200 random connected graphs with 2 <= D <= 25."""
    return [random_connected_graph(int(rng.integers(2, 26)), rng) for _ in range(200)]


@pytest.fixture
def small_graphs(rng) -> List[Graph]:
    return [random_connected_graph(int(rng.integers(2, 5)), rng) for _ in range(10)]


def random_graph(dimension: int, rng: np.random.Generator, edge_probability: float = 0.5) -> Graph:
    """Random graph that may be disconnected."""
    rows, cols = np.triu_indices(dimension, k=1)
    keep = rng.random(rows.size) < edge_probability
    return Graph.from_edges(dimension, zip(rows[keep].tolist(), cols[keep].tolist()))
