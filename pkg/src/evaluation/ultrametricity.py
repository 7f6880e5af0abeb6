"""How ultrametric a data set already is, measured on sampled triplets.

A triplet counts when, with its distances sorted ``s <= m <= l``, the two
largest sides are equal within a relative tolerance: ``(l - m) / l <= tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional, Sequence

import numpy as np

from src.configs.logging_config import get_logger
from src.encoding.codec import DigitCode
from src.encoding.metric import baire_distance
from src.errors import ParameterError

logger = get_logger(__name__)

Distance = Callable[[int, int], float]


@dataclass(frozen=True)
class UltrametricityReport:
    alpha: float
    triplets_sampled: int
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "triplets_sampled": self.triplets_sampled,
            "tolerance": self.tolerance,
        }


def _sample_triplets(n: int, sample_size: int, rng: np.random.Generator) -> list[tuple[int, int, int]]:
    available = math.comb(n, 3)
    if sample_size >= available:
        return list(combinations(range(n), 3))
    chosen: set[tuple[int, int, int]] = set()
    while len(chosen) < sample_size:
        i, j, k = sorted(int(v) for v in rng.choice(n, size=3, replace=False))
        chosen.add((i, j, k))
    return sorted(chosen)


def _isosceles_small_base(d1: float, d2: float, d3: float, tolerance: float) -> bool:
    _, middle, largest = sorted((d1, d2, d3))
    if largest == 0.0:
        return True
    return (largest - middle) / largest <= tolerance


def triplet_alpha(
    n: int,
    distance: Distance,
    sample_size: int,
    tolerance: float,
    seed: int = 1,
) -> UltrametricityReport:
    """
    Alpha over ``n`` points given a pairwise ``distance(i, j)``.

    Samples ``sample_size`` distinct triplets, or all of them when fewer
    exist.
    """
    if n < 3:
        raise ParameterError(f"ultrametricity needs at least 3 points, got {n}")
    if tolerance < 0:
        raise ParameterError(f"tolerance must be >= 0, got {tolerance}")
    if sample_size < 1:
        raise ParameterError(f"sample_size must be >= 1, got {sample_size}")

    rng = np.random.Generator(np.random.PCG64(seed))
    triplets = _sample_triplets(n, sample_size, rng)
    hits = sum(
        _isosceles_small_base(distance(i, j), distance(j, k), distance(i, k), tolerance)
        for i, j, k in triplets
    )
    report = UltrametricityReport(
        alpha=hits / len(triplets),
        triplets_sampled=len(triplets),
        tolerance=tolerance,
    )
    logger.info("Ultrametricity alpha %.4f over %d triplets", report.alpha, report.triplets_sampled)
    return report


def ultrametricity_alpha(
    data: np.ndarray,
    sample_size: int,
    tolerance: float,
    seed: int = 1,
    distance: Optional[Distance] = None,
) -> UltrametricityReport:
    """Alpha of an ``n x d`` array under Euclidean distance (or ``distance``)."""
    points = np.asarray(data, dtype=float)
    if points.ndim == 1:
        points = points.reshape(-1, 1)

    def euclidean(i: int, j: int) -> float:
        return float(np.linalg.norm(points[i] - points[j]))

    return triplet_alpha(len(points), distance or euclidean, sample_size, tolerance, seed)


def baire_alpha(
    codes: Sequence[DigitCode],
    sample_size: int,
    tolerance: float = 0.0,
    seed: int = 1,
) -> UltrametricityReport:
    """Alpha with Baire distances between digit codes."""
    return triplet_alpha(
        len(codes),
        lambda i, j: baire_distance(codes[i], codes[j]).value,
        sample_size,
        tolerance,
        seed,
    )
