"""Seeded random projection of d-dimensional records onto scalars.

Axes are drawn with numpy's ``Generator(PCG64(seed)).standard_normal`` and
scaled to unit length. PCG64 is the generator constant of the PROJ1 file
format: the same ``(d, axis_count, seed)`` reproduces the same axes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from src.configs.logging_config import get_logger
from src.configs.settings import Config
from src.encoding.codec import NormalizationBounds, normalize
from src.errors import DimensionMismatchError, ParameterError

logger = get_logger(__name__)

GENERATOR_NAME = "PCG64"
SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class ProjectionSpec:
    """Unit axes plus the normalization bounds fitted on projected values."""

    dimension: int
    axis_count: int
    seed: int
    axes: np.ndarray
    bounds: Optional[NormalizationBounds] = None

    def __post_init__(self) -> None:
        if self.axes.shape != (self.axis_count, self.dimension):
            raise ParameterError(
                f"axes shape {self.axes.shape} does not match "
                f"({self.axis_count}, {self.dimension})"
            )

    @classmethod
    def identity(cls) -> "ProjectionSpec":
        """One-dimensional pass-through: a single axis ``[+1]``."""
        return cls(dimension=1, axis_count=1, seed=0, axes=np.ones((1, 1)))


def make_spec(dimension: int, axis_count: int = Config.AXIS_COUNT, seed: int = Config.SEED) -> ProjectionSpec:
    """
    Draw ``axis_count`` unit axes of ``dimension`` components.

    Raises
    ------
    ParameterError
        If dimension or axis_count is below 1.
    """
    if dimension < 1:
        raise ParameterError(f"dimension must be >= 1, got {dimension}")
    if axis_count < 1:
        raise ParameterError(f"axis_count must be >= 1, got {axis_count}")

    generator = np.random.Generator(np.random.PCG64(seed & SEED_MASK))
    raw = generator.standard_normal((axis_count, dimension))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise ParameterError(f"seed {seed} produced a zero axis")
    axes = raw / norms
    logger.debug("Drew %d %s axes of dimension %d (seed %d)", axis_count, GENERATOR_NAME, dimension, seed)
    return ProjectionSpec(dimension=dimension, axis_count=axis_count, seed=seed, axes=axes)


def project(record: Sequence[float], spec: ProjectionSpec) -> float:
    """Mean over axes of ``axis . record``."""
    vector = np.asarray(record, dtype=float).reshape(-1)
    if vector.shape[0] != spec.dimension:
        raise DimensionMismatchError(
            f"record has dimension {vector.shape[0]}, projection expects {spec.dimension}"
        )
    return float(np.mean(spec.axes @ vector))


def project_many(data: np.ndarray, spec: ProjectionSpec) -> np.ndarray:
    """Project every row of an ``n x d`` array."""
    matrix = np.asarray(data, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.shape[1] != spec.dimension:
        raise DimensionMismatchError(
            f"data has dimension {matrix.shape[1]}, projection expects {spec.dimension}"
        )
    return (matrix @ spec.axes.T).mean(axis=1)


def fit_bounds(spec: ProjectionSpec, values: Sequence[float]) -> ProjectionSpec:
    """Return a copy of ``spec`` whose bounds are (min, max) of ``values``."""
    return replace(spec, bounds=NormalizationBounds.fit(values))


def to_unit_interval(values: Sequence[float], spec: ProjectionSpec) -> list[float]:
    """
    Normalize projected values with the projection's fitted bounds for querying.

    Values outside the fitted bounds are clamped to the nearest bound with a
    warning instead of failing.
    """
    if spec.bounds is None:
        raise ParameterError("projection bounds are not fitted")
    bounds = spec.bounds
    clamped = []
    for value in values:
        value = float(value)
        if value < bounds.lo or value > bounds.hi:
            logger.warning(
                "Projected value %r outside fitted bounds [%r, %r]; clamping",
                value,
                bounds.lo,
                bounds.hi,
            )
            value = min(max(value, bounds.lo), bounds.hi)
        clamped.append(value)
    return normalize(clamped, bounds)


def fit_pipeline_bounds(spec: ProjectionSpec, values: Sequence[float]) -> ProjectionSpec:
    """
    Bounds used by the build pipeline.

    A one-dimensional pass-through whose values already lie in [0, 1] keeps
    the bounds ``[0, 1]``, so encoding reduces to plain scalar encoding.
    Everything else is fitted on (min, max) of ``values``.
    """
    array = np.asarray(values, dtype=float)
    if spec.dimension == 1 and array.size and np.all((array >= 0.0) & (array <= 1.0)):
        return replace(spec, bounds=NormalizationBounds(lo=0.0, hi=1.0))
    return fit_bounds(spec, values)
