"""Lloyd's k-means, the reference clusterer for Baire bin labelings."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.configs.logging_config import get_logger
from src.errors import MadicError, ParameterError

logger = get_logger(__name__)

# Relative slack for float rounding in the inertia monotonicity check
INERTIA_SLACK = 1e-9


@dataclass
class KMeansResult:
    labels: np.ndarray
    centroids: np.ndarray
    inertia: float
    n_iter: int
    inertia_history: list[float] = field(default_factory=list)


class KMeans:
    """
    Lloyd iterations from a seeded choice of k distinct data points.

    Each run stops when assignments no longer change or after ``max_iters``
    iterations. A centroid that loses all its points is moved onto the point
    farthest from its current centroid. ``n_init`` runs are drawn from the
    same seeded generator and the lowest-inertia run is kept.
    """

    def __init__(
        self,
        n_clusters: int,
        seed: int = 1,
        max_iters: int = 100,
        n_init: int = 10,
    ) -> None:
        if max_iters < 1:
            raise ParameterError(f"max_iters must be >= 1, got {max_iters}")
        if n_init < 1:
            raise ParameterError(f"n_init must be >= 1, got {n_init}")
        self.n_clusters = n_clusters
        self.seed = seed
        self.max_iters = max_iters
        self.n_init = n_init

    def _initial_centroids(self, data: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        distinct = np.unique(data, axis=0)
        if len(distinct) >= self.n_clusters:
            chosen = rng.choice(len(distinct), size=self.n_clusters, replace=False)
            return distinct[np.sort(chosen)].copy()
        # Fewer distinct points than clusters: fall back to distinct rows
        chosen = rng.choice(len(data), size=self.n_clusters, replace=False)
        return data[np.sort(chosen)].copy()

    @staticmethod
    def _assign(data: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        squared = ((data[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        labels = squared.argmin(axis=1)
        return labels, squared[np.arange(len(data)), labels]

    def _run(self, points: np.ndarray, rng: np.random.Generator) -> KMeansResult:
        centroids = self._initial_centroids(points, rng)
        labels = np.full(len(points), -1)
        history: list[float] = []

        n_iter = 0
        for n_iter in range(1, self.max_iters + 1):
            new_labels, sq_dist = self._assign(points, centroids)
            inertia = float(sq_dist.sum())
            if history and inertia > history[-1] + INERTIA_SLACK * max(1.0, history[-1]):
                raise MadicError(
                    f"k-means inertia rose from {history[-1]} to {inertia} at iteration {n_iter}"
                )
            history.append(inertia)
            if np.array_equal(new_labels, labels):
                break
            labels = new_labels

            for cluster in range(self.n_clusters):
                mask = labels == cluster
                if mask.any():
                    centroids[cluster] = points[mask].mean(axis=0)
                else:
                    farthest = int(sq_dist.argmax())
                    logger.debug("Re-seeding empty cluster %d at point %d", cluster, farthest)
                    centroids[cluster] = points[farthest]
                    sq_dist[farthest] = 0.0

        labels, sq_dist = self._assign(points, centroids)
        return KMeansResult(
            labels=labels,
            centroids=centroids,
            inertia=float(sq_dist.sum()),
            n_iter=n_iter,
            inertia_history=history,
        )

    def fit(self, data: np.ndarray) -> KMeansResult:
        """
        Cluster the rows of an ``n x d`` array.

        Raises
        ------
        ParameterError
            If k is not within 1..n.
        """
        points = np.asarray(data, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        n = len(points)
        if not 1 <= self.n_clusters <= n:
            raise ParameterError(f"k must lie in [1, {n}], got {self.n_clusters}")

        rng = np.random.Generator(np.random.PCG64(self.seed))
        best: KMeansResult | None = None
        for run in range(self.n_init):
            result = self._run(points, rng)
            logger.debug("k-means run %d: inertia %.6g after %d iterations", run, result.inertia, result.n_iter)
            if best is None or result.inertia < best.inertia:
                best = result
        assert best is not None
        logger.info("k-means with k=%d on %d points: inertia %.6g", self.n_clusters, n, best.inertia)
        return best


def kmeans(data: np.ndarray, k: int, seed: int = 1, max_iters: int = 100) -> np.ndarray:
    """Labels of :class:`KMeans` with ``k`` clusters."""
    return KMeans(n_clusters=k, seed=seed, max_iters=max_iters).fit(data).labels
