import math

import numpy as np
import pytest
from scipy.integrate import quad, simpson
from scipy.linalg import expm

from app.schemas.complexity import WeightSequence
from app.schemas.graph import Graph
from app.services import analytic, graphs, krylov
from app.services.spectral import lanczos
from tests.conftest import random_graph


def _oracle_complexity(g: Graph, seed: int, t: float) -> float:
    """Evolve with the full matrix exponential, then project on the Krylov basis."""
    psi = expm(-1j * t * g.adjacency())[:, seed]
    basis = lanczos(g, seed).basis
    return float(np.arange(len(basis)) @ np.abs(basis @ psi) ** 2)


def test_star_complexity_oscillates():
    g = graphs.make_star(5)
    times = np.linspace(0, 3, 13)
    assert np.allclose(krylov.complexity_curve(g, 0, times), np.sin(2 * times) ** 2, atol=1e-12)
    assert krylov.complexity_at_time(g, 0, 0.0) == pytest.approx(0.0, abs=1e-14)


def test_hub_peak_complexity():
    g = graphs.make_hub_k_regular(8, 4)
    pair = analytic.hub_eigenpair(8, 4)
    t = math.pi / (pair.lambda_plus - pair.lambda_minus)
    assert krylov.complexity_at_time(g, 0, t) == pytest.approx(28 / 44, abs=1e-10)
    times = np.linspace(0, 5, 21)
    assert np.allclose(krylov.complexity_curve(g, 0, times), analytic.hub_complexity_at_time(8, 4, times), atol=1e-10)


def test_complexity_curve_matches_matrix_exponential(small_graphs):
    for g in small_graphs:
        for t in (0.3, 1.7, 4.0):
            assert krylov.complexity_at_time(g, 0, t) == pytest.approx(_oracle_complexity(g, 0, t), abs=1e-10)


def test_complexity_curve_rejects_non_finite_times():
    with pytest.raises(ValueError):
        krylov.complexity_curve(graphs.make_path(3), 0, [0.0, np.inf])


@pytest.mark.parametrize("D", range(2, 21))
def test_path_kappa_profile(D):
    kappa = krylov.kappa_profile(graphs.make_path(D))
    assert np.allclose(kappa, analytic.path_kappa(D), atol=1e-9)
    assert kappa[0] == pytest.approx(3 / (2 * D + 2), abs=1e-9)


def test_cbar_report_fields():
    report = krylov.cbar(graphs.make_path(5))
    assert report.cbar == pytest.approx(2.0, abs=1e-9)
    assert report.krylov_dim == 5
    assert report.weights == [0.0, 1.0, 2.0, 3.0, 4.0]
    assert report.connected and not report.degenerate
    assert '"d_K": 5' in report.to_json()


def test_cbar_with_custom_weights():
    weights = WeightSequence.custom([0.0, 1.0, 4.0, 9.0, 16.0])
    report = krylov.cbar(graphs.make_path(5), 0, weights)
    expected = np.dot([0, 1, 4, 9, 16], analytic.path_kappa(5))
    assert report.cbar == pytest.approx(expected, abs=1e-9)

    with pytest.raises(ValueError):
        krylov.cbar(graphs.make_path(6), 0, weights)


def test_cbar_flags_disconnected_graph():
    g = Graph.from_edges(3, [(0, 1)])
    report = krylov.cbar(g)
    assert not report.connected
    assert report.krylov_dim == 2
    assert report.cbar == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("n", range(1, 7))
def test_glued_tree_complexity(n):
    g = graphs.make_glued_tree(n)
    report = krylov.cbar(g)
    assert report.krylov_dim == 2 * n + 1
    assert report.cbar == pytest.approx(n, abs=1e-9)
    assert report.kappa[0] == pytest.approx(3 / (4 * n + 4), abs=1e-9)
    assert report.kappa[-1] == pytest.approx(3 / (4 * n + 4), abs=1e-9)
    assert report.degenerate

    chi = krylov.limiting_distribution(g)
    assert chi[graphs.glued_tree_exit(n)] == pytest.approx(report.kappa[-1], abs=1e-8)


def test_kappa_and_chi_are_distributions(random_graphs):
    for g in random_graphs:
        assert krylov.kappa_profile(g).sum() == pytest.approx(1.0, abs=1e-8)
        chi = krylov.limiting_distribution(g)
        assert chi.sum() == pytest.approx(1.0, abs=1e-8)
        assert np.all(chi >= -1e-12)


def test_kappa_is_scale_invariant(random_graphs):
    for g in random_graphs[:30]:
        H = g.adjacency()
        assert np.allclose(krylov.kappa_profile(2.5 * H), krylov.kappa_profile(H), atol=1e-9)


def test_limiting_distribution_of_complete_graph():
    chi = krylov.limiting_distribution(graphs.make_complete(4))
    assert chi[0] == pytest.approx(1 - 2 * 3 / 16, abs=1e-12)
    assert np.allclose(chi[1:], 2 / 16, atol=1e-12)


def test_finite_time_average_matches_quadrature(small_graphs):
    for g in small_graphs:
        T = 6.0
        integral, _ = quad(lambda t: _oracle_complexity(g, 0, t), 0.0, T, limit=200)
        assert krylov.finite_time_average(g, 0, T) == pytest.approx(integral / T, abs=1e-7)


def _long_window_average(g: Graph, seed: int, T: float, step: float = 0.1, block: int = 1000) -> float:
    """(1/T) * integral of C(t) over [0, T] by Simpson's rule on expm-evolved states."""
    A = g.adjacency()
    basis = lanczos(g, seed).basis
    weights = np.arange(len(basis))
    head = np.stack([expm(-1j * t * A)[:, seed] for t in np.arange(block) * step], axis=1)
    samples = [weights @ np.abs(basis @ (expm(-1j * start * A) @ head)) ** 2
               for start in np.arange(0.0, T, block * step)]
    samples.append(np.array([_oracle_complexity(g, seed, T)]))
    return float(simpson(np.concatenate(samples), dx=step)) / T


def test_long_time_average_matches_quadrature(small_graphs):
    named = [graphs.make_star(4), graphs.make_complete(4), graphs.make_glued_tree(1), graphs.make_path(4)]
    for g in named + small_graphs:
        assert abs(_long_window_average(g, 0, 1e4) - krylov.cbar(g).cbar) < 1e-3


@pytest.mark.parametrize("D, limit", [(3, 1.0), (5, 2.0)])
def test_finite_time_average_converges(D, limit):
    g = graphs.make_path(D)
    assert abs(krylov.finite_time_average(g, 0, 1e6) - limit) < 1e-3
    errors = [abs(krylov.finite_time_average(g, 0, T) - limit) for T in (1e2, 1e4, 1e6)]
    assert errors[-1] <= errors[0]


def test_finite_time_average_rejects_empty_window():
    with pytest.raises(ValueError):
        krylov.finite_time_average(graphs.make_path(3), 0, 0.0)


def test_batched_values_match_single_graph_path(rng):
    samples = [random_graph(8, rng, edge_probability=0.35) for _ in range(40)]
    batched = krylov.cbar_values(np.stack([g.adjacency() for g in samples]), seed=0)
    single = [krylov.cbar(g).cbar for g in samples]
    assert np.allclose(batched, single, atol=1e-9)


def test_batched_values_with_custom_weights():
    weights = WeightSequence.custom([0.5, 1.0, 3.0, 7.0, 8.0, 20.0])
    g = graphs.make_path(6)
    assert krylov.cbar_values(g.adjacency(), 0, weights)[0] == pytest.approx(krylov.cbar(g, 0, weights).cbar)


def test_cbar_many_keys_by_graph():
    family = [graphs.make_path(4), graphs.make_star(4), graphs.make_complete(4)]
    reports = krylov.cbar_many(family, max_workers=2)
    assert reports[graphs.make_star(4)].cbar == pytest.approx(0.5)
    assert reports[graphs.make_complete(4)].cbar == pytest.approx(0.375)
