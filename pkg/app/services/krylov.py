import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, Optional, Tuple, Union

import numpy as np

from app.core.config import settings
from app.schemas.complexity import ComplexityReport, WeightSequence
from app.schemas.graph import Graph
from app.services.graphs import connected_mask, is_connected
from app.services.spectral import (
    KrylovDecomposition,
    MatrixLike,
    as_matrix,
    eigh,
    lanczos,
    tridiagonal_eigh,
)

logger = logging.getLogger(__name__)


def _weights(weights: Optional[WeightSequence]) -> WeightSequence:
    return weights if weights is not None else WeightSequence.linear()


def krylov_modes(g: MatrixLike, seed: int = 0) -> Tuple[KrylovDecomposition, np.ndarray, np.ndarray]:
    """Lanczos decomposition plus the eigenpairs of its tridiagonal.

    Evolution from the seed never leaves the Krylov subspace, so every
    quantity below is computed in d_K dimensions.
    """
    kd = lanczos(g, seed)
    energies, modes = tridiagonal_eigh(kd)
    return kd, energies, modes


def complexity_curve(
    g: MatrixLike,
    seed: int,
    times: Union[Iterable[float], np.ndarray],
    weights: Optional[WeightSequence] = None,
) -> np.ndarray:
    """C(t) = sum_n w_n |<K_n|exp(-iHt)|K_0>|^2 on a grid of times."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if not np.all(np.isfinite(times)):
        raise ValueError("times must be finite")
    kd, energies, modes = krylov_modes(g, seed)
    w = _weights(weights).vector(kd.krylov_dim)

    phases = np.exp(-1j * np.outer(energies, times))
    amplitudes = (modes * modes[0]) @ phases
    return np.clip(w @ np.abs(amplitudes) ** 2, 0.0, None)


def complexity_at_time(g: MatrixLike, seed: int, t: float, weights: Optional[WeightSequence] = None) -> float:
    return float(complexity_curve(g, seed, [t], weights)[0])


def kappa_profile(g: MatrixLike, seed: int = 0) -> np.ndarray:
    """Time-averaged occupation of each Krylov vector.

    The tridiagonal is unreduced, hence has a simple spectrum, so the
    diagonal-ensemble formula holds even when the full H is degenerate.
    """
    _, _, modes = krylov_modes(g, seed)
    return (modes ** 2) @ (modes[0] ** 2)


def _is_connected(g: MatrixLike) -> bool:
    if isinstance(g, Graph):
        return is_connected(g)
    return bool(connected_mask(as_matrix(g)[None])[0])


def cbar(g: MatrixLike, seed: int = 0, weights: Optional[WeightSequence] = None) -> ComplexityReport:
    kappa = kappa_profile(g, seed)
    w = _weights(weights).vector(len(kappa))
    report = ComplexityReport(
        seed=seed,
        krylov_dim=len(kappa),
        kappa=kappa.tolist(),
        cbar=float(w @ kappa),
        weights=w.tolist(),
        degenerate=eigh(g).is_degenerate,
        connected=_is_connected(g),
    )
    logger.debug(f"cbar from vertex {seed}: {report.cbar:.12g} (d_K={report.krylov_dim})")
    return report


def finite_time_average(
    g: MatrixLike,
    seed: int,
    T: float,
    weights: Optional[WeightSequence] = None,
) -> float:
    """(1/T) * integral of C(t) over [0, T], in closed form.

    Each pair of Krylov eigenvalues contributes sin(dE T) / (dE T); the
    diagonal pairs reproduce sum_n w_n kappa_n.
    """
    if not T > 0:
        raise ValueError(f"averaging window must be positive, got T={T}")
    kd, energies, modes = krylov_modes(g, seed)
    w = _weights(weights).vector(kd.krylov_dim)

    weighted_overlap = modes.T @ (w[:, None] * modes)
    coefficients = np.outer(modes[0], modes[0]) * weighted_overlap
    gaps = energies[None, :] - energies[:, None]
    return float(np.sum(coefficients * np.sinc(gaps * T / np.pi)))


def limiting_distribution(g: MatrixLike, seed: int = 0) -> np.ndarray:
    """Long-time average probability of finding the walker at each vertex.

    Uses eigenspace projectors of the full H, which stays well defined
    when eigenvalues are degenerate.
    """
    spectrum = eigh(g)
    dimension = len(spectrum.eigenvalues)
    if not 0 <= seed < dimension:
        raise ValueError(f"seed vertex {seed} out of range for D={dimension}")
    chi = np.zeros(dimension)
    for group in spectrum.degeneracy_groups:
        vectors = spectrum.eigenvectors[:, list(group)]
        chi += (vectors @ vectors[seed]) ** 2
    return chi


def cbar_values(adjacency: np.ndarray, seed: int = 0, weights: Optional[WeightSequence] = None) -> np.ndarray:
    """Long-time average complexity for a stack of Hamiltonians of shape (B, D, D).

    Runs Lanczos on all matrices at once; matrices whose recurrence has
    terminated carry zero vectors from then on. The padded tail of each
    tridiagonal gets distinct diagonal entries above the spectral radius so
    it decouples from the Krylov block in the batched eigensolver.
    """
    H = np.asarray(adjacency, dtype=float)
    if H.ndim == 2:
        H = H[None]
    batch, dimension = H.shape[0], H.shape[1]
    if not 0 <= seed < dimension:
        raise ValueError(f"seed vertex {seed} out of range for D={dimension}")
    w = _weights(weights).vector(dimension)

    row_sums = np.abs(H).sum(axis=2).max(axis=1)
    eps_b = settings.LANCZOS_TOL * np.maximum(1.0, row_sums)

    basis = np.zeros((batch, dimension, dimension))
    basis[:, 0, seed] = 1.0
    a = np.zeros((batch, dimension))
    b = np.zeros((batch, dimension))
    dims = np.ones(batch, dtype=int)
    active = np.ones(batch, dtype=bool)

    for n in range(dimension):
        q = basis[:, n]
        residual = np.einsum("bij,bj->bi", H, q)
        a[:, n] = np.einsum("bi,bi->b", q, residual)
        residual -= a[:, n, None] * q
        if n > 0:
            residual -= b[:, n, None] * basis[:, n - 1]
        previous = basis[:, : n + 1]
        for _ in range(2):
            overlaps = np.einsum("bki,bi->bk", previous, residual)
            residual -= np.einsum("bk,bki->bi", overlaps, previous)
        if n + 1 == dimension:
            break
        beta = np.linalg.norm(residual, axis=1)
        active &= beta > eps_b
        if not active.any():
            break
        basis[active, n + 1] = residual[active] / beta[active, None]
        b[active, n + 1] = beta[active]
        dims[active] += 1

    index = np.arange(dimension)
    padding = row_sums[:, None] + 1.0 + index[None, :]
    diagonal = np.where(index[None, :] >= dims[:, None], padding, a)
    T = np.zeros((batch, dimension, dimension))
    T[:, index, index] = diagonal
    T[:, index[1:], index[:-1]] = b[:, 1:]
    T[:, index[:-1], index[1:]] = b[:, 1:]

    _, modes = np.linalg.eigh(T)
    kappa = np.einsum("bnm,bm->bn", modes ** 2, modes[:, 0, :] ** 2)
    return kappa @ w


def cbar_many(
    graphs: Iterable[Graph],
    seed: int = 0,
    weights: Optional[WeightSequence] = None,
    max_workers: Optional[int] = None,
) -> Dict[Graph, ComplexityReport]:
    """Evaluate many graphs on a thread pool; results are keyed by graph."""
    graphs = list(graphs)
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        reports = list(executor.map(lambda g: cbar(g, seed, weights), graphs))
    return dict(zip(graphs, reports))
