"""Storage interface shared by the pipeline's artifact writers."""

from __future__ import annotations

from pathlib import Path
from typing import Protocol, runtime_checkable

import pandas as pd

from src.clustering.grid_cluster import ClusterLabeling
from src.indexing.madic_index import MadicIndex
from src.projection.random_projection import ProjectionSpec


@runtime_checkable
class ArtifactStore(Protocol):
    """
    Minimal interface for persisting indexes, projection specs and results.

    Implemented by LocalStore.
    """

    def save_index(self, index: MadicIndex, name: str) -> Path:
        """Persist an index as MADIC1. Return the file written."""
        ...

    def load_index(self, name: str) -> MadicIndex:
        """Rebuild an index from its MADIC1 file."""
        ...

    def save_projection(self, spec: ProjectionSpec, name: str) -> Path:
        """Persist a fitted projection spec as PROJ1. Return the file written."""
        ...

    def load_projection(self, name: str) -> ProjectionSpec:
        ...

    def save_labeling(self, labeling: ClusterLabeling, name: str) -> tuple[Path, Path]:
        """Persist a labeling as JSON and TSV. Return both files."""
        ...

    def save_table(self, df: pd.DataFrame, name: str) -> Path:
        """Persist a benchmark table after schema validation. Return the file written."""
        ...
