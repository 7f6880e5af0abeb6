"""Tests for k-means, partition scoring, ultrametricity and the benchmark."""

import math
import random

import numpy as np
import pandas as pd
import pytest

from src.clustering.grid_cluster import grid_cluster
from src.encoding.codec import DigitCode, encode_many, normalize
from src.errors import IdSetMismatchError, ParameterError
from src.evaluation.benchmark import format_table, scaling_benchmark
from src.evaluation.kmeans import KMeans, kmeans
from src.evaluation.scoring import rand_index
from src.evaluation.ultrametricity import baire_alpha, triplet_alpha, ultrametricity_alpha
from src.indexing.madic_index import MadicIndex
from src.projection.random_projection import fit_pipeline_bounds, make_spec, project_many


def two_blobs(centre, size=50, sigma=0.1, seed=3):
    rng = np.random.Generator(np.random.PCG64(seed))
    first = rng.normal(0.0, sigma, (size, 2))
    second = np.asarray(centre) + rng.normal(0.0, sigma, (size, 2))
    return np.vstack([first, second])


class TestKMeans:
    def test_k_equals_n(self):
        data = np.array([[0.0], [1.0], [2.5], [4.0], [9.0]])
        result = KMeans(n_clusters=5, seed=1).fit(data)
        assert len(set(result.labels.tolist())) == 5
        assert result.inertia == 0.0

    def test_k_one_is_the_mean(self):
        data = np.array([[0.0, 1.0], [2.0, 3.0], [4.0, 8.0]])
        result = KMeans(n_clusters=1, seed=1).fit(data)
        assert np.allclose(result.centroids[0], data.mean(axis=0))

    def test_two_blobs_recovered(self):
        data = two_blobs((10.0, 10.0))
        labels = kmeans(data, 2, seed=4)
        assert len(set(labels[:50].tolist())) == 1
        assert len(set(labels[50:].tolist())) == 1
        assert labels[0] != labels[50]

    def test_inertia_never_rises(self):
        data = np.random.Generator(np.random.PCG64(8)).random((200, 3))
        history = KMeans(n_clusters=6, seed=2, n_init=1).fit(data).inertia_history
        assert all(b <= a * (1 + 1e-9) for a, b in zip(history, history[1:]))

    def test_deterministic_per_seed(self):
        data = np.random.Generator(np.random.PCG64(9)).random((100, 2))
        assert np.array_equal(kmeans(data, 4, seed=7), kmeans(data, 4, seed=7))

    @pytest.mark.parametrize("k", [0, 4])
    def test_k_out_of_range(self, k):
        with pytest.raises(ParameterError):
            kmeans(np.zeros((3, 1)), k)

    def test_duplicate_points_with_more_clusters_than_distinct_values(self):
        data = np.array([[1.0], [1.0], [1.0], [2.0]])
        labels = kmeans(data, 3, seed=1)
        assert len(labels) == 4

    def test_max_iters_validated(self):
        with pytest.raises(ParameterError):
            KMeans(n_clusters=2, max_iters=0)


class TestRandIndex:
    def test_identical(self):
        assert rand_index([0, 0, 1, 2], [0, 0, 1, 2]).rand_index == 1.0

    def test_single_pair_disagrees(self):
        score = rand_index({"x": "a", "y": "a"}, {"x": "a", "y": "b"})
        assert score.rand_index == 0.0
        assert score.disagree == 1

    def test_pair_enumeration(self):
        score = rand_index([0, 0, 1, 1], [0, 1, 0, 1])
        assert score.rand_index == pytest.approx(1 / 3)
        assert (score.agree_same, score.agree_diff, score.disagree) == (0, 2, 4)
        assert score.total_pairs == 6

    def test_symmetric_and_relabeling_invariant(self):
        rng = random.Random(17)
        a = [rng.randrange(3) for _ in range(60)]
        b = [rng.randrange(4) for _ in range(60)]
        renamed = [f"c{label * 7}" for label in b]
        assert rand_index(a, b) == rand_index(b, a)
        assert rand_index(a, b) == rand_index(a, renamed)

    def test_mappings_aligned_by_id(self):
        left = {"p": 1, "q": 1, "r": 2}
        right = {"r": "z", "q": "y", "p": "y"}
        assert rand_index(left, right).rand_index == 1.0

    def test_noise_labels_form_one_group(self):
        assert rand_index({"a": None, "b": None}, {"a": 0, "b": 0}).rand_index == 1.0

    def test_id_mismatch(self):
        with pytest.raises(IdSetMismatchError):
            rand_index({"a": 1, "b": 1}, {"a": 1, "c": 1})

    def test_length_mismatch(self):
        with pytest.raises(IdSetMismatchError):
            rand_index([0, 1], [0, 1, 1])

    def test_adjusted_is_one_for_identical_and_low_for_crossed(self):
        assert rand_index([0, 0, 1, 1], [1, 1, 0, 0]).adjusted_rand_index == pytest.approx(1.0)
        assert rand_index([0, 0, 1, 1], [0, 1, 0, 1]).adjusted_rand_index < 0.0


class TestUltrametricity:
    def test_collinear_points(self):
        report = ultrametricity_alpha(np.array([[0.0], [1.0], [2.0]]), sample_size=10, tolerance=0.1)
        assert report.alpha == 0.0
        assert report.triplets_sampled == 1

    def test_equilateral_triangle(self):
        data = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
        assert ultrametricity_alpha(data, sample_size=1, tolerance=1e-9).alpha == 1.0

    def test_baire_codes_are_fully_ultrametric(self):
        rng = random.Random(5)
        codes = [DigitCode(10, tuple(rng.randrange(4) for _ in range(5))) for _ in range(60)]
        report = baire_alpha(codes, sample_size=2000, tolerance=0.0, seed=3)
        assert report.alpha == 1.0
        assert report.triplets_sampled == 2000

    def test_uniform_data_is_not_ultrametric(self):
        data = np.random.Generator(np.random.PCG64(2)).random((40, 2))
        assert ultrametricity_alpha(data, sample_size=500, tolerance=0.0).alpha < 0.5

    def test_custom_distance(self):
        report = triplet_alpha(4, lambda i, j: 1.0, sample_size=100, tolerance=0.0)
        assert report.alpha == 1.0
        assert report.triplets_sampled == 4

    def test_needs_three_points(self):
        with pytest.raises(ParameterError):
            ultrametricity_alpha(np.zeros((2, 1)), sample_size=5, tolerance=0.1)

    def test_negative_tolerance(self):
        with pytest.raises(ParameterError):
            ultrametricity_alpha(np.zeros((3, 1)), sample_size=5, tolerance=-0.1)


def test_baire_labeling_agrees_with_kmeans_on_separated_blobs():
    spec = make_spec(2, 1, seed=5)
    data = two_blobs(20.0 * spec.axes[0])
    projected = project_many(data, spec)
    spec = fit_pipeline_bounds(spec, projected)
    codes = encode_many(normalize(projected, spec.bounds), 10, 4)
    ids = [str(i) for i in range(len(data))]
    index = MadicIndex.build(zip(ids, codes), base=10, precision=4)

    labeling = grid_cluster(index, level=1, min_density=1)
    reference = dict(zip(ids, kmeans(data, 2, seed=1).tolist()))
    assert labeling.cluster_count == 2
    assert rand_index(labeling.labels, reference).rand_index == 1.0


class TestBenchmark:
    def test_reads_equal_sizes(self):
        table = scaling_benchmark([100, 1_000, 5_000], base=10, precision=4, seed=1)
        assert list(table.columns) == ["n", "BuildSeconds", "Reads"]
        assert table["Reads"].tolist() == [100, 1_000, 5_000]
        assert table["Reads"].is_monotonic_increasing
        assert (table["BuildSeconds"] >= 0).all()

    @pytest.mark.slow
    def test_tenfold_size_costs_at_most_fifteenfold_time(self):
        table = scaling_benchmark([10_000, 100_000], base=10, precision=4, seed=1)
        seconds = table["BuildSeconds"].tolist()
        assert seconds[0] > 0
        assert seconds[1] / seconds[0] <= 15

    def test_sizes_must_ascend(self):
        with pytest.raises(ParameterError):
            scaling_benchmark([1_000, 100], base=10, precision=4)

    def test_no_sizes(self):
        assert scaling_benchmark([], base=10, precision=4).empty

    def test_format_table(self):
        text = format_table(pd.DataFrame({"n": [10], "BuildSeconds": [0.5], "Reads": [10]}))
        assert "BuildSeconds" in text.splitlines()[0]
