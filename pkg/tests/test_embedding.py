import math

import numpy as np
import pytest

from nlgap import (DistanceMatrix, Embedding, VertexMap, all_pairs_distances,
                   bourgain_embed, complete_graph, compose_map, cycle_graph,
                   default_reps, distortion, eigensystem, gamma_value,
                   gamma_vector, normalized_laplacian, petersen_graph,
                   random_map, sample_simple_regular)


def two_point_metric():
    return DistanceMatrix(np.array([[0, 1], [1, 0]], dtype=np.int32))


class TestBourgainEmbed:
    def test_two_points_coordinates_binary(self, rng):
        emb = bourgain_embed(two_point_metric(), rng, q=8)
        diffs = np.abs(emb.points[0] - emb.points[1])
        assert set(np.unique(diffs)) <= {0.0, 1.0}
        gap = np.linalg.norm(emb.points[0] - emb.points[1])
        assert gap <= math.sqrt(emb.dimension)

    def test_equilateral_metric_bounded(self, rng):
        dist = all_pairs_distances(complete_graph(16))
        emb = bourgain_embed(dist, rng)
        rep = distortion(dist, emb)
        assert rep.max_expansion <= math.sqrt(emb.dimension)

    def test_dimension_layout(self, rng):
        dist = all_pairs_distances(cycle_graph(20))
        emb = bourgain_embed(dist, rng)
        assert emb.num_scales == math.floor(math.log2(20))
        assert emb.reps == default_reps(20) == math.ceil(4 * math.log2(20))
        assert emb.dimension == emb.num_scales * emb.reps

    def test_coordinates_nonnegative(self, rng):
        dist = all_pairs_distances(cycle_graph(12))
        emb = bourgain_embed(dist, rng)
        assert emb.points.min() >= 0.0

    def test_coordinate_lipschitz_exact(self, rng):
        for _ in range(10):
            g, _ = sample_simple_regular(24, 3, rng)
            dist = all_pairs_distances(g)
            if not dist.all_finite:
                continue
            emb = bourgain_embed(dist, rng, q=6)
            for x in range(0, 24, 5):
                for y in range(x + 1, 24, 7):
                    coord_gap = np.abs(emb.points[x] - emb.points[y])
                    assert np.all(coord_gap <= dist.dist[x, y])

    def test_deterministic_under_seed(self):
        dist = all_pairs_distances(cycle_graph(10))
        a = bourgain_embed(dist, np.random.default_rng(9), q=5)
        b = bourgain_embed(dist, np.random.default_rng(9), q=5)
        assert np.array_equal(a.points, b.points)

    def test_single_point_rejected(self, rng):
        with pytest.raises(ValueError):
            bourgain_embed(DistanceMatrix(np.zeros((1, 1), dtype=np.int32)), rng)

    def test_cycle32_empirical_distortion_envelope(self):
        dist = all_pairs_distances(cycle_graph(32))
        bound = 4 * math.log2(32) ** 2
        for seed in range(20):
            rng = np.random.default_rng(seed)
            emb = bourgain_embed(dist, rng, q=4 * emb_scales(32))
            rep = distortion(dist, emb)
            assert math.isfinite(rep.distortion)
            assert rep.distortion <= bound


def emb_scales(m):
    return math.floor(math.log2(m))


class TestDistortion:
    def test_one_point_convention(self):
        emb = Embedding(points=np.zeros((1, 2)), num_scales=1, reps=2)
        rep = distortion(DistanceMatrix(np.zeros((1, 1), dtype=np.int32)), emb)
        assert rep.distortion == 1.0

    def test_path_single_coordinate(self):
        # g(x) = d(x, endpoint) on the 3-point path: isometric, distortion 1
        p3 = DistanceMatrix(np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]],
                                     dtype=np.int32))
        emb = Embedding(points=np.array([[0.0], [1.0], [2.0]]), num_scales=1, reps=1)
        rep = distortion(p3, emb)
        assert rep.max_expansion == 1.0
        assert rep.max_contraction == 1.0
        assert rep.collapsed_pairs == 0

    def test_collapse_reported_not_raised(self):
        p3 = DistanceMatrix(np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]],
                                     dtype=np.int32))
        emb = Embedding(points=np.array([[0.0], [1.0], [0.0]]), num_scales=1, reps=1)
        rep = distortion(p3, emb)
        assert rep.collapsed_pairs == 1
        assert rep.max_contraction == math.inf
        assert rep.distortion == math.inf

    def test_point_count_mismatch(self, rng):
        emb = bourgain_embed(two_point_metric(), rng, q=2)
        with pytest.raises(ValueError):
            distortion(all_pairs_distances(cycle_graph(3)), emb)


class TestComposeMap:
    def test_constant_map_constant_rows(self, rng):
        dist = all_pairs_distances(petersen_graph())
        emb = bourgain_embed(dist, rng)
        f = VertexMap(np.zeros(7, dtype=np.int32), 10)
        rows = compose_map(f, emb)
        assert np.all(rows == rows[0])

    def test_injective_map_preserves_norms(self, rng):
        dist = all_pairs_distances(petersen_graph())
        emb = bourgain_embed(dist, rng)
        f = VertexMap(np.arange(10, dtype=np.int32), 10)
        rows = compose_map(f, emb)
        assert np.array_equal(rows, emb.points)

    def test_two_block_two_rows(self, rng):
        emb = bourgain_embed(two_point_metric(), rng, q=3)
        rows = compose_map(VertexMap(np.array([0, 0, 1, 1]), 2), emb)
        assert np.array_equal(rows[0], rows[1])
        assert np.array_equal(rows[2], rows[3])

    def test_range_mismatch_rejected(self, rng):
        emb = bourgain_embed(two_point_metric(), rng, q=2)
        with pytest.raises(ValueError):
            compose_map(VertexMap(np.array([0, 1, 2]), 3), emb)


class TestComposedBoundChain:
    def test_measured_chain_holds(self, rng):
        # gamma(G,d_H,f) <= (expansion*contraction)^2 * gamma_vec(G, g o f)
        # and gamma_vec <= 1/lambda1, with measured constants
        host = petersen_graph()
        dist = all_pairs_distances(host)
        for _ in range(5):
            g, _ = sample_simple_regular(60, 3, rng)
            spec, _ = eigensystem(normalized_laplacian(g))
            emb = bourgain_embed(dist, rng)
            rep = distortion(dist, emb)
            factor = (rep.max_expansion * rep.max_contraction) ** 2
            for _ in range(10):
                f = random_map(60, 10, rng)
                val = gamma_value(g, dist, f)
                if val.degenerate:
                    continue
                vec = gamma_vector(g, compose_map(f, emb))
                if not vec.degenerate:
                    assert val.gamma <= factor * vec.gamma * (1 + 1e-9)
                    assert vec.gamma <= 1 / spec.lambda1 + 1e-9
