import math

import numpy as np
import pytest

from nlgap import (Graph, complete_graph, cycle_graph, diameter, discrepancy_audit,
                   eigensystem, eigenvalues, hilbert_expander_check, is_connected,
                   lambda_bar, normalized_laplacian, petersen_graph,
                   sample_simple_regular, spectral_diameter_bound)


def spectrum_of(g, tol=1e-9):
    return eigenvalues(normalized_laplacian(g), tol=tol)


def complete_spectrum(n):
    return np.array([0.0] + [n / (n - 1)] * (n - 1))


def cycle_spectrum(n):
    return np.sort(1.0 - np.cos(2 * np.pi * np.arange(n) / n))


class TestLaplacian:
    def test_k2_matrix(self):
        lap = normalized_laplacian(complete_graph(2))
        assert np.allclose(lap, [[1, -1], [-1, 1]])

    def test_triangle_matrix(self):
        lap = normalized_laplacian(cycle_graph(3))
        expected = np.eye(3) - (np.ones((3, 3)) - np.eye(3)) / 2
        assert np.allclose(lap, expected)

    def test_isolated_vertex_rejected(self):
        g = Graph.from_edges(3, [(0, 1)])
        with pytest.raises(ValueError):
            normalized_laplacian(g)

    def test_symmetric_on_samples(self, rng):
        for _ in range(10):
            g, _ = sample_simple_regular(30, 3, rng)
            lap = normalized_laplacian(g)
            assert np.array_equal(lap, lap.T)


class TestEigenvalues:
    def test_complete_closed_form(self):
        for n in [2, 5, 20, 50]:
            spec = spectrum_of(complete_graph(n))
            assert np.abs(spec.eigenvalues - complete_spectrum(n)).max() < 1e-9

    def test_cycle_closed_form(self):
        for n in [3, 4, 8, 17, 32]:
            spec = spectrum_of(cycle_graph(n))
            assert np.abs(spec.eigenvalues - cycle_spectrum(n)).max() < 1e-9

    def test_trace_identity(self, rng):
        for g in [petersen_graph(), complete_graph(12), cycle_graph(9),
                  sample_simple_regular(60, 3, rng)[0]]:
            spec = spectrum_of(g)
            assert abs(spec.eigenvalues.sum() - g.n) <= 1e-8 * g.n

    def test_residual_within_tolerance(self, rng):
        g, _ = sample_simple_regular(50, 3, rng)
        spec = spectrum_of(g)
        assert spec.residual <= 1e-9 * max(abs(spec.eigenvalues[0]), spec.lambda_max)

    def test_range_and_component_multiplicity(self, rng):
        two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        spec = spectrum_of(two)
        assert np.count_nonzero(np.abs(spec.eigenvalues) < 1e-9) == 2
        assert spec.eigenvalues.min() > -1e-9
        assert spec.eigenvalues.max() < 2 + 1e-9

    def test_non_symmetric_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            eigenvalues(np.array([[0.0, 1.0], [0.5, 0.0]]))


class TestLambdaBar:
    def test_complete(self):
        for n in [3, 6, 11]:
            assert abs(lambda_bar(spectrum_of(complete_graph(n))) - 1 / (n - 1)) < 1e-9

    def test_c4_is_one(self):
        assert abs(lambda_bar(spectrum_of(cycle_graph(4))) - 1.0) < 1e-9

    def test_bipartite_at_least_one(self):
        for n in [4, 6, 10]:
            assert lambda_bar(spectrum_of(cycle_graph(n) if n % 2 == 0
                                          else cycle_graph(n + 1))) >= 1 - 1e-9


class TestDiameterBound:
    def test_petersen_value(self):
        spec = spectrum_of(petersen_graph())
        assert abs(lambda_bar(spec) - 2 / 3) < 1e-9
        bound = spectral_diameter_bound(spec, 10)
        assert bound == math.ceil(math.log(9) / math.log(1.5)) == 6
        assert bound >= diameter(petersen_graph())

    def test_petersen_one_sided_variant(self):
        # exact value is ceil(log(9)/log(3)) = 2, but that ratio sits on a
        # ceil boundary, so eigenvalue rounding may lift it to 3
        spec = spectrum_of(petersen_graph())
        bound = spectral_diameter_bound(spec, 10, variant="lambda1")
        assert bound in (2, 3)
        assert bound >= diameter(petersen_graph())

    def test_c4_vacuous(self):
        assert spectral_diameter_bound(spectrum_of(cycle_graph(4)), 4) is None

    def test_dominates_true_diameter_on_samples(self, rng):
        for _ in range(10):
            g, _ = sample_simple_regular(200, 3, rng)
            if not is_connected(g):
                continue
            bound = spectral_diameter_bound(spectrum_of(g), g.n)
            if bound is not None:
                assert diameter(g) <= bound


class TestDiscrepancy:
    def test_complete_hand_value(self):
        # n=10, X={0,1,2}, Y={3,4}: e=6, vol ratio 5.4, bound sqrt(6)
        g = complete_graph(10)
        worst = discrepancy_audit(g, spectrum_of(g), [([0, 1, 2], [3, 4])])
        assert abs(worst - (0.6 - math.sqrt(6))) < 1e-9

    def test_empty_side_nonpositive(self):
        g = complete_graph(6)
        assert discrepancy_audit(g, spectrum_of(g), [([], [0, 1])]) <= 0

    def test_overlap_rejected(self):
        g = complete_graph(6)
        with pytest.raises(ValueError):
            discrepancy_audit(g, spectrum_of(g), [([0, 1], [1, 2])])

    def test_never_positive_on_samples(self, rng):
        for _ in range(5):
            g, _ = sample_simple_regular(200, 3, rng)
            spec = spectrum_of(g)
            pairs = []
            for _ in range(100):
                size_x = int(rng.integers(1, 80))
                size_y = int(rng.integers(1, 80))
                perm = rng.permutation(200)
                pairs.append((perm[:size_x], perm[size_x:size_x + size_y]))
            assert discrepancy_audit(g, spec, pairs) <= 1e-6


class TestHilbertInequality:
    def test_constant_map_zero_slack(self, rng):
        g, _ = sample_simple_regular(20, 3, rng)
        spec = spectrum_of(g)
        assert hilbert_expander_check(g, spec.lambda1, np.ones((20, 3))) == pytest.approx(0.0, abs=1e-12)

    def test_eigenvector_equality_case(self, rng):
        g, _ = sample_simple_regular(40, 3, rng)
        spec, vecs = eigensystem(normalized_laplacian(g))
        slack = hilbert_expander_check(g, spec.lambda1, vecs[:, 1])
        assert abs(slack) < 1e-9

    def test_random_vector_maps_nonnegative(self, rng):
        for _ in range(10):
            g, _ = sample_simple_regular(100, 3, rng)
            spec = spectrum_of(g)
            for s in (1, 2, 5):
                f = rng.standard_normal((100, s))
                assert hilbert_expander_check(g, spec.lambda1, f) >= -1e-9

    def test_ragged_vectors_rejected(self, rng):
        g, _ = sample_simple_regular(4, 3, rng)
        with pytest.raises(ValueError):
            hilbert_expander_check(g, 0.5, [[0.0], [0.0, 1.0], [1.0], [2.0]])
