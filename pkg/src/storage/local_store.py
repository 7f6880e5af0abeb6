"""Local file system storage for indexes, projection specs and results."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional, Union

import pandas as pd

from src.clustering.grid_cluster import ClusterLabeling
from src.configs.logging_config import get_logger
from src.configs.schema import validate_benchmark_df, validate_labeling_df
from src.configs.settings import Config
from src.errors import MadicError
from src.indexing.madic_index import MadicIndex
from src.projection.random_projection import ProjectionSpec
from src.storage.index_store import read_index, write_index
from src.storage.projection_store import read_projection, write_projection

logger = get_logger(__name__)

INDEX_SUFFIX = ".madic"
PROJECTION_SUFFIX = ".proj"


class LocalStore:
    """
    Persist pipeline artifacts as files under one directory.

    ``name`` arguments are paths relative to the store directory. Index and
    projection names keep any suffix they carry; labelings and tables always
    take the suffix of their format. Implements the
    ArtifactStore protocol.
    """

    def __init__(
        self,
        directory: Optional[Union[str, Path]] = None,
        table_format: Literal["csv", "json"] = "csv",
    ) -> None:
        """
        Initialize the local store.

        Parameters
        ----------
        directory : Optional[Path]
            Target directory for artifacts. Defaults to ``Config.OUTPUT_DIR``.
        table_format : Literal["csv", "json"]
            Output format for result tables.
        """
        self.directory = Path(directory) if directory else Path(Config.OUTPUT_DIR)
        self.table_format = table_format

    def _path(self, name: str, suffix: str, replace_suffix: bool = False) -> Path:
        path = Path(name)
        if replace_suffix or not path.suffix:
            path = path.with_suffix(suffix)
        if not path.is_absolute():
            path = self.directory / path
        return path

    # ArtifactStore protocol methods
    def save_index(self, index: MadicIndex, name: str) -> Path:
        return write_index(index, self._path(name, INDEX_SUFFIX))

    def load_index(self, name: str) -> MadicIndex:
        return read_index(self._path(name, INDEX_SUFFIX))

    def save_projection(self, spec: ProjectionSpec, name: str) -> Path:
        return write_projection(spec, self._path(name, PROJECTION_SUFFIX))

    def load_projection(self, name: str) -> ProjectionSpec:
        return read_projection(self._path(name, PROJECTION_SUFFIX))

    def save_labeling(self, labeling: ClusterLabeling, name: str) -> tuple[Path, Path]:
        frame = labeling.to_frame()
        problems = validate_labeling_df(frame)
        if problems:
            raise MadicError(f"labeling table failed validation: {'; '.join(problems)}")

        json_path = self._path(name, ".json", replace_suffix=True)
        tsv_path = self._path(name, ".tsv", replace_suffix=True)
        json_path.parent.mkdir(parents=True, exist_ok=True)
        json_path.write_text(json.dumps(labeling.as_dict(), indent=2) + "\n", encoding="utf-8")
        frame.to_csv(tsv_path, sep="\t", index=False, header=False, lineterminator="\n")
        logger.info("Saved labeling of %d records to %s and %s", len(frame), json_path, tsv_path)
        return json_path, tsv_path

    def save_table(self, df: pd.DataFrame, name: str) -> Path:
        problems = validate_benchmark_df(df)
        if problems:
            raise MadicError(f"benchmark table failed validation: {'; '.join(problems)}")
        if df.empty:
            logger.info("Writing empty table for %s", name)
        ext = ".json" if self.table_format == "json" else ".csv"
        file_path = self._path(name, ext, replace_suffix=True)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        if self.table_format == "json":
            df.to_json(file_path, orient="records", indent=2)
        else:
            df.to_csv(file_path, index=False, lineterminator="\n")
        logger.info("Saved %d rows to %s", len(df), file_path)
        return file_path
