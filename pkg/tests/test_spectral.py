import math

import numpy as np
import pytest
import sympy

from app.services import graphs, spectral


def _companion_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Roots of the exact characteristic polynomial."""
    polynomial = sympy.Matrix(matrix.astype(int).tolist()).charpoly()
    coefficients = [float(c) for c in polynomial.all_coeffs()]
    return np.sort(np.roots(coefficients).real)


def test_eigh_matches_characteristic_polynomial(rng):
    for _ in range(10):
        upper = np.triu(rng.integers(-3, 4, size=(5, 5)))
        # well-separated diagonal keeps the spectrum simple
        matrix = upper + np.triu(upper, k=1).T + np.diag(30 * np.arange(5))
        spectrum = spectral.eigh(matrix.astype(float))
        assert np.allclose(spectrum.eigenvalues, _companion_eigenvalues(matrix), atol=1e-6)


def test_eigh_decomposition():
    g = graphs.make_hub_k_regular(8, 4)
    spectrum = spectral.eigh(g)
    V, E = spectrum.eigenvectors, spectrum.eigenvalues
    assert np.allclose(V @ np.diag(E) @ V.T, g.adjacency(), atol=1e-10)
    assert np.all(np.diff(E) >= 0)

    total = sum(spectrum.projector(group) for group in spectrum.degeneracy_groups)
    assert np.allclose(total, np.eye(8), atol=1e-10)


def test_degeneracy_groups():
    assert spectral.eigh(graphs.make_glued_tree(3)).is_degenerate
    assert not spectral.eigh(graphs.make_path(6)).is_degenerate

    spectrum = spectral.eigh(graphs.make_complete(5))
    assert [len(group) for group in spectrum.degeneracy_groups] == [4, 1]
    assert spectrum.eigenvalues[-1] == pytest.approx(4.0)


def test_eigh_rejects_asymmetric_matrix():
    with pytest.raises(ValueError, match="symmetric"):
        spectral.eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_lanczos_rejects_bad_seed():
    with pytest.raises(ValueError):
        spectral.lanczos(graphs.make_path(3), seed_vertex=3)


def test_lanczos_invariants(random_graphs):
    for g in random_graphs[:50]:
        H = g.adjacency()
        kd = spectral.lanczos(g, seed_vertex=0)
        V = kd.basis
        assert 1 <= kd.krylov_dim <= g.dimension
        assert np.array_equal(V[0], np.eye(g.dimension)[0])
        assert np.abs(V @ V.T - np.eye(kd.krylov_dim)).max() < 1e-10
        assert np.abs(V @ H @ V.T - spectral.krylov_hamiltonian(kd)).max() < 1e-9 * max(1.0, H.sum(axis=1).max())
        assert kd.b[0] == 0.0
        assert np.all(kd.b[1:] > 0)


def test_krylov_tridiagonal_has_simple_spectrum(random_graphs):
    for g in random_graphs[:50]:
        energies, _ = spectral.tridiagonal_eigh(spectral.lanczos(g))
        assert np.all(np.diff(energies) > 1e-10)


def test_single_vertex_krylov_space():
    kd = spectral.lanczos(np.zeros((1, 1)))
    assert kd.krylov_dim == 1
    energies, modes = spectral.tridiagonal_eigh(kd)
    assert energies.tolist() == [0.0]
    assert modes.tolist() == [[1.0]]


def test_star_krylov_coefficients():
    kd = spectral.lanczos(graphs.make_star(10))
    assert kd.krylov_dim == 2
    assert kd.a == pytest.approx([0.0, 0.0], abs=1e-12)
    assert kd.b[1] == pytest.approx(3.0)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("h", [2, 3, 4, 5])
def test_m_ary_tree_has_constant_hopping(m, h):
    kd = spectral.lanczos(graphs.make_m_ary_tree(m, h))
    assert kd.krylov_dim == h
    assert np.allclose(kd.a, 0.0, atol=1e-12)
    assert np.allclose(kd.b[1:], math.sqrt(m), atol=1e-9)


@pytest.mark.parametrize("n", range(1, 7))
def test_glued_tree_krylov_chain_ends_at_exit(n):
    g = graphs.make_glued_tree(n)
    kd = spectral.lanczos(g)
    assert kd.krylov_dim == 2 * n + 1
    assert np.allclose(kd.a, 0.0, atol=1e-10)
    assert np.allclose(kd.b[1:], math.sqrt(2), atol=1e-9)
    assert abs(kd.basis[-1, graphs.glued_tree_exit(n)]) == pytest.approx(1.0, abs=1e-8)


def test_hessenberg_agrees_with_lanczos(random_graphs):
    candidates = random_graphs[:30] + [graphs.make_glued_tree(3), graphs.make_m_ary_tree(3, 3), graphs.make_complete(6)]
    for g in candidates:
        seed = g.dimension - 1
        lanczos = spectral.lanczos(g, seed)
        householder = spectral.hessenberg_krylov(g, seed)
        assert householder.krylov_dim == lanczos.krylov_dim
        assert np.allclose(householder.a, lanczos.a, atol=1e-8)
        assert np.allclose(householder.b, lanczos.b, atol=1e-8)
        assert np.allclose(householder.basis, lanczos.basis, atol=1e-8)
