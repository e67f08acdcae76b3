import logging
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import depth_first_order

from app.core.errors import InfeasibleParametersError
from app.schemas.graph import Graph

logger = logging.getLogger(__name__)


def is_connected(g: Graph) -> bool:
    """True iff a depth-first search from vertex 0 visits all vertices."""
    if g.dimension == 1:
        return True
    order = depth_first_order(csr_matrix(g.adjacency()), 0, directed=False, return_predecessors=False)
    return len(order) == g.dimension


def connected_mask(adjacency: np.ndarray, root: int = 0) -> np.ndarray:
    """Reachability test for a stack of adjacency matrices of shape (B, D, D).

    Grows the set of vertices reachable from ``root`` one layer at a time
    until it stops changing; returns a boolean vector of length B.
    """
    adjacency = (np.asarray(adjacency) != 0).astype(np.float32)
    batch, dimension = adjacency.shape[0], adjacency.shape[1]
    reached = np.zeros((batch, dimension), dtype=bool)
    reached[:, root] = True
    for _ in range(dimension - 1):
        frontier = reached[:, None, :].astype(np.float32) @ adjacency
        grown = reached | (frontier[:, 0, :] > 0)
        if np.array_equal(grown, reached):
            break
        reached = grown
    return reached.all(axis=1)


def make_path(dimension: int) -> Graph:
    if dimension < 1:
        raise InfeasibleParametersError(f"path graph needs D >= 1, got {dimension}")
    return Graph.from_networkx(nx.path_graph(dimension))


def make_complete(dimension: int) -> Graph:
    if dimension < 1:
        raise InfeasibleParametersError(f"complete graph needs D >= 1, got {dimension}")
    return Graph.from_networkx(nx.complete_graph(dimension))


def make_star(dimension: int) -> Graph:
    """Hub at vertex 0 joined to every other vertex."""
    if dimension < 2:
        raise InfeasibleParametersError(f"star graph needs D >= 2, got {dimension}")
    return Graph.from_networkx(nx.star_graph(dimension - 1))


def hub_k_regular_feasible(dimension: int, k: int) -> bool:
    rest = dimension - 1
    return dimension >= 2 and 0 <= k <= dimension - 2 and (k * rest) % 2 == 0


def make_hub_k_regular(dimension: int, k: int, generator_seed: Optional[int] = None) -> Graph:
    """Hub at vertex 0 on top of a k-regular graph over vertices 1..D-1.

    The k-regular part is the circulant on D-1 vertices with offsets 1..k/2,
    plus the antipodal offset when k is odd. Passing ``generator_seed``
    relabels the regular part at random, which gives other realizations of
    the same circulant.
    """
    if not hub_k_regular_feasible(dimension, k):
        raise InfeasibleParametersError(
            f"no hub + {k}-regular graph on D={dimension} vertices (need 0 <= k <= D-2 and k(D-1) even)"
        )
    rest = dimension - 1
    offsets = list(range(1, k // 2 + 1))
    if k % 2 == 1:
        offsets.append(rest // 2)
    regular = nx.circulant_graph(rest, offsets)

    labels = np.arange(rest)
    if generator_seed is not None:
        labels = np.random.default_rng(generator_seed).permutation(rest)

    edges = [(0, v + 1) for v in range(rest)]
    edges += [(int(labels[u]) + 1, int(labels[v]) + 1) for u, v in regular.edges]
    return Graph.from_edges(dimension, edges)


def make_m_ary_tree(m: int, height: int) -> Graph:
    """Complete m-ary tree with ``height`` levels, root 0, breadth-first numbering."""
    if m < 2 or height < 1:
        raise InfeasibleParametersError(f"m-ary tree needs m >= 2 and h >= 1, got m={m}, h={height}")
    dimension = (m ** height - 1) // (m - 1)
    return Graph.from_networkx(nx.full_rary_tree(m, dimension))


def glued_tree_dimension(n: int) -> int:
    return 3 * 2 ** n - 2


def make_glued_tree(n: int) -> Graph:
    """Entrance binary tree of height n+1 glued to an exit binary tree of height n.

    Vertices are numbered breadth-first from the entrance (0); the exit root
    is the last vertex. Left leaf i is joined to exit-tree bottom vertex i // 2,
    so every bottom vertex of the exit tree receives two glue edges.
    """
    if n < 1:
        raise InfeasibleParametersError(f"glued tree needs n >= 1, got {n}")
    left_size = 2 ** (n + 1) - 1
    edges: List[Tuple[int, int]] = [((child - 1) // 2, child) for child in range(1, left_size)]

    # exit tree: level l (0 = exit root) holds 2**l vertices, stored deepest level first
    def exit_index(level: int, position: int) -> int:
        return left_size + (2 ** n - 2 ** (level + 1)) + position

    for level in range(1, n):
        for position in range(2 ** level):
            edges.append((exit_index(level - 1, position // 2), exit_index(level, position)))

    first_leaf = 2 ** n - 1
    for i in range(2 ** n):
        edges.append((first_leaf + i, exit_index(n - 1, i // 2)))

    dimension = glued_tree_dimension(n)
    logger.debug(f"glued tree n={n}: D={dimension}, {len(edges)} edges")
    return Graph.from_edges(dimension, edges)


def glued_tree_exit(n: int) -> int:
    return glued_tree_dimension(n) - 1


def random_connected_graph(
    dimension: int,
    rng: np.random.Generator,
    edge_probability: float = 0.5,
    max_attempts: int = 100_000,
) -> Graph:
    """Random symmetric binary matrix, resampled until the graph is connected."""
    if dimension < 1:
        raise InfeasibleParametersError(f"need D >= 1, got {dimension}")
    rows, cols = np.triu_indices(dimension, k=1)
    for attempt in range(max_attempts):
        bits = rng.random(rows.size) < edge_probability
        matrix = np.zeros((dimension, dimension))
        matrix[rows[bits], cols[bits]] = 1.0
        matrix += matrix.T
        if connected_mask(matrix[None])[0]:
            if attempt:
                logger.debug(f"connected sample on D={dimension} after {attempt + 1} draws")
            return Graph.from_adjacency(matrix)
    raise InfeasibleParametersError(
        f"no connected graph drawn on D={dimension} with p={edge_probability} in {max_attempts} attempts"
    )
