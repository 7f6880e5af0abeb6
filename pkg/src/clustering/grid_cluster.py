"""Density-based refinement over the bins of one tree level.

The grid is the existing bin partition of the level: cell densities are bin
sizes, dense cells become cluster centers, and cells whose prefixes differ
by one (read as base-B integers) are neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import pandas as pd

from src.configs.logging_config import get_logger
from src.configs.schema import NOISE_LABEL, LabelingColumns, digit_to_char
from src.errors import ParameterError
from src.indexing.madic_index import MadicIndex, RecordId

logger = get_logger(__name__)


@dataclass(frozen=True)
class BinStat:
    prefix: tuple[int, ...]
    level: int
    density: int
    value: int

    @property
    def key(self) -> str:
        return "".join(digit_to_char(d) for d in self.prefix)


@dataclass(frozen=True)
class ClusterLabeling:
    """Cluster id per record; ``None`` marks noise."""

    level: int
    labels: dict[RecordId, Optional[int]]
    cluster_count: int

    @property
    def noise_count(self) -> int:
        return sum(1 for label in self.labels.values() if label is None)

    def label_of(self, record_id: RecordId) -> Union[int, str]:
        label = self.labels[record_id]
        return NOISE_LABEL if label is None else label

    def members(self, cluster_id: int) -> list[RecordId]:
        return [record_id for record_id, label in self.labels.items() if label == cluster_id]

    def exported_labels(self) -> dict[RecordId, Union[int, str]]:
        return {record_id: self.label_of(record_id) for record_id in self.labels}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            LabelingColumns.RECORD_ID.name: list(self.labels),
            LabelingColumns.CLUSTER.name: [str(self.label_of(r)) for r in self.labels],
        })

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "cluster_count": self.cluster_count,
            "noise_count": self.noise_count,
            "labels": self.exported_labels(),
        }


def cell_densities(index: MadicIndex, level: int) -> list[BinStat]:
    """One BinStat per non-empty bin of ``level``."""
    return [
        BinStat(prefix=cell.prefix, level=cell.level, density=cell.density, value=cell.value)
        for cell in index.bins_at_level(level)
    ]


def sort_by_density(stats: Iterable[BinStat]) -> list[BinStat]:
    """Densest first; equal densities in prefix order."""
    return sorted(stats, key=lambda stat: (-stat.density, stat.prefix))


def identify_centers(sorted_stats: Sequence[BinStat], min_density: int) -> list[BinStat]:
    if min_density < 1:
        raise ParameterError(f"min_density must be >= 1, got {min_density}")
    return [stat for stat in sorted_stats if stat.density >= min_density]


def _chains(values: Iterable[int]) -> list[list[int]]:
    chains: list[list[int]] = []
    for value in sorted(values):
        if chains and value == chains[-1][-1] + 1:
            chains[-1].append(value)
        else:
            chains.append([value])
    return chains


def merge_neighbors(
    index: MadicIndex,
    level: int,
    centers: Sequence[BinStat],
    min_density: int,
) -> ClusterLabeling:
    """
    Grow clusters from centers across neighboring cells.

    Each maximal run of adjacent cells with density >= ``min_density`` that
    contains a center becomes one cluster, seeded by its densest center.
    A sparser cell touching a cluster joins it as a border cell (the lower
    cluster id wins when it touches two). Everything else is noise. Cluster
    ids follow descending seed density.
    """
    if min_density < 1:
        raise ParameterError(f"min_density must be >= 1, got {min_density}")
    if any(center.level != level for center in centers):
        raise ParameterError(f"centers must all come from level {level}")

    stats = cell_densities(index, level)
    by_value = {stat.value: stat for stat in stats}
    dense = {stat.value for stat in stats if stat.density >= min_density}
    center_rank = {center.value: rank for rank, center in enumerate(sort_by_density(centers))}

    seeded: list[tuple[int, list[int]]] = []
    for chain in _chains(dense):
        seeds = [value for value in chain if value in center_rank]
        if seeds:
            seeded.append((min(seeds, key=center_rank.__getitem__), chain))
    seeded.sort(key=lambda item: (-by_value[item[0]].density, by_value[item[0]].prefix))

    cell_cluster: dict[int, int] = {}
    for cluster_id, (_, chain) in enumerate(seeded):
        for value in chain:
            cell_cluster[value] = cluster_id

    border: dict[int, int] = {}
    for stat in stats:
        if stat.value in dense:
            continue
        touching = [cell_cluster[n] for n in (stat.value - 1, stat.value + 1) if n in cell_cluster]
        if touching:
            border[stat.value] = min(touching)
    cell_cluster.update(border)

    member_label: dict[RecordId, Optional[int]] = {}
    for cell in index.bins_at_level(level):
        label = cell_cluster.get(cell.value)
        for member in cell.members:
            member_label[member] = label
    labels = {record_id: member_label[record_id] for record_id, _ in index.codes()}

    labeling = ClusterLabeling(level=level, labels=labels, cluster_count=len(seeded))
    logger.info(
        "Level %d grid clustering: %d clusters, %d border cells, %d noise records",
        level,
        labeling.cluster_count,
        len(border),
        labeling.noise_count,
    )
    return labeling


def grid_cluster(index: MadicIndex, level: int, min_density: int) -> ClusterLabeling:
    """Densities, sort, centers and neighbor merge in one call."""
    ranked = sort_by_density(cell_densities(index, level))
    centers = identify_centers(ranked, min_density)
    return merge_neighbors(index, level, centers, min_density)
