import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from app.core.config import settings
from app.schemas.graph import Graph

logger = logging.getLogger(__name__)

MatrixLike = Union[Graph, np.ndarray]


@dataclass(frozen=True)
class SpectralData:
    """Eigendecomposition of a real symmetric matrix.

    ``eigenvectors[:, m]`` is the eigenvector of ``eigenvalues[m]``;
    ``degeneracy_groups`` partitions the indices into runs of eigenvalues
    that agree within ``tolerance``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_groups: Tuple[Tuple[int, ...], ...]
    tolerance: float

    @property
    def is_degenerate(self) -> bool:
        return any(len(group) > 1 for group in self.degeneracy_groups)

    def projector(self, group: Sequence[int]) -> np.ndarray:
        vectors = self.eigenvectors[:, list(group)]
        return vectors @ vectors.T


@dataclass(frozen=True)
class KrylovDecomposition:
    """Krylov basis of a seed vertex and the Lanczos coefficients.

    Row n of ``basis`` is |K_n> in the vertex basis. ``b[0]`` is 0 and
    ``b[n]`` couples K_{n-1} and K_n.
    """

    basis: np.ndarray
    a: np.ndarray
    b: np.ndarray
    seed_vertex: int

    @property
    def krylov_dim(self) -> int:
        return len(self.a)


def as_matrix(g: MatrixLike) -> np.ndarray:
    if isinstance(g, Graph):
        return g.adjacency()
    matrix = np.asarray(g, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    return matrix


def grouping_tolerance(eigenvalues: np.ndarray) -> float:
    spread = float(eigenvalues[-1] - eigenvalues[0]) if len(eigenvalues) else 0.0
    return settings.DEGENERACY_TOL * max(1.0, spread)


def group_degenerate(eigenvalues: np.ndarray, tolerance: float) -> Tuple[Tuple[int, ...], ...]:
    """Split ascending eigenvalues into groups whose spread stays within ``tolerance``."""
    groups = []
    start = 0
    for index in range(1, len(eigenvalues) + 1):
        if index == len(eigenvalues) or eigenvalues[index] - eigenvalues[start] > tolerance:
            groups.append(tuple(range(start, index)))
            start = index
    return tuple(groups)


def eigh(matrix: MatrixLike) -> SpectralData:
    H = as_matrix(matrix)
    if H.size and np.max(np.abs(H - H.T)) > settings.SYMMETRY_TOL:
        raise ValueError("eigh requires a symmetric matrix")
    eigenvalues, eigenvectors = scipy.linalg.eigh(H)
    tolerance = grouping_tolerance(eigenvalues)
    return SpectralData(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        degeneracy_groups=group_degenerate(eigenvalues, tolerance),
        tolerance=tolerance,
    )


def termination_tolerance(H: np.ndarray) -> float:
    max_degree = float(np.max(np.abs(H).sum(axis=1))) if H.size else 0.0
    return settings.LANCZOS_TOL * max(1.0, max_degree)


def _check_seed(dimension: int, seed_vertex: int) -> None:
    if not 0 <= seed_vertex < dimension:
        raise ValueError(f"seed vertex {seed_vertex} out of range for D={dimension}")


def lanczos(g: MatrixLike, seed_vertex: int = 0) -> KrylovDecomposition:
    """Lanczos tridiagonalization seeded at a vertex, with full reorthogonalization.

    Stops once the residual norm drops to ``termination_tolerance``; the
    number of vectors produced is the Krylov dimension.
    """
    H = as_matrix(g)
    dimension = H.shape[0]
    _check_seed(dimension, seed_vertex)
    eps_b = termination_tolerance(H)

    basis = np.zeros((dimension, dimension))
    basis[0, seed_vertex] = 1.0
    a, b = [], [0.0]
    for n in range(dimension):
        w = H @ basis[n]
        a.append(float(basis[n] @ w))
        w -= a[n] * basis[n]
        if n > 0:
            w -= b[n] * basis[n - 1]
        # twice is enough
        for _ in range(2):
            w -= basis[: n + 1].T @ (basis[: n + 1] @ w)
        beta = float(np.linalg.norm(w))
        if n + 1 == dimension or beta <= eps_b:
            break
        basis[n + 1] = w / beta
        b.append(beta)

    krylov_dim = len(a)
    logger.debug(f"lanczos from vertex {seed_vertex}: d_K={krylov_dim} of D={dimension}")
    return KrylovDecomposition(
        basis=basis[:krylov_dim].copy(),
        a=np.array(a),
        b=np.array(b[:krylov_dim]),
        seed_vertex=seed_vertex,
    )


def hessenberg_krylov(g: MatrixLike, seed_vertex: int = 0) -> KrylovDecomposition:
    """Krylov decomposition from the Householder Hessenberg reduction.

    The seed is permuted to index 0 so the orthogonal factor keeps it as its
    first column; off-diagonal signs are then flipped to make b positive.
    """
    H = as_matrix(g)
    dimension = H.shape[0]
    _check_seed(dimension, seed_vertex)
    eps_b = termination_tolerance(H)

    order = np.array([seed_vertex] + [v for v in range(dimension) if v != seed_vertex])
    T, Q = scipy.linalg.hessenberg(H[np.ix_(order, order)], calc_q=True)
    off = np.diag(T, k=-1)

    small = np.flatnonzero(np.abs(off) <= eps_b)
    krylov_dim = int(small[0]) + 1 if small.size else dimension

    signs = np.ones(krylov_dim)
    for n in range(1, krylov_dim):
        signs[n] = signs[n - 1] * np.sign(off[n - 1])

    basis = np.zeros((krylov_dim, dimension))
    basis[:, order] = (Q[:, :krylov_dim] * signs).T
    return KrylovDecomposition(
        basis=basis,
        a=np.diag(T)[:krylov_dim].copy(),
        b=np.concatenate([[0.0], np.abs(off[: krylov_dim - 1])]),
        seed_vertex=seed_vertex,
    )


def krylov_hamiltonian(kd: KrylovDecomposition) -> np.ndarray:
    off = kd.b[1:]
    return np.diag(kd.a) + np.diag(off, k=1) + np.diag(off, k=-1)


def tridiagonal_eigh(kd: KrylovDecomposition) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors (columns) of the Krylov tridiagonal."""
    if kd.krylov_dim == 1:
        return kd.a.copy(), np.ones((1, 1))
    return scipy.linalg.eigh_tridiagonal(kd.a, kd.b[1:])
