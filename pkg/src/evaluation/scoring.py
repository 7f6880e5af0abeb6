"""Pair-counting agreement between two partitions of the same records."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence, Union

import pandas as pd

from src.errors import IdSetMismatchError

Labels = Union[Mapping[Hashable, Hashable], Sequence[Hashable]]


@dataclass(frozen=True)
class PartitionScore:
    """Rand index with the pair counts it is built from."""

    rand_index: float
    agree_same: int
    agree_diff: int
    disagree: int
    adjusted_rand_index: float

    @property
    def total_pairs(self) -> int:
        return self.agree_same + self.agree_diff + self.disagree

    def as_dict(self) -> dict:
        return {
            "rand_index": self.rand_index,
            "adjusted_rand_index": self.adjusted_rand_index,
            "agree_same": self.agree_same,
            "agree_diff": self.agree_diff,
            "disagree": self.disagree,
            "total_pairs": self.total_pairs,
        }


def _as_series(labels: Labels) -> pd.Series:
    if isinstance(labels, Mapping):
        return pd.Series(list(labels.values()), index=list(labels.keys()), dtype=object)
    return pd.Series(list(labels), dtype=object)


def _pairs(counts: pd.Series) -> int:
    return int((counts * (counts - 1) // 2).sum())


def rand_index(labels_a: Labels, labels_b: Labels) -> PartitionScore:
    """
    Rand index of two labelings.

    Labelings are mappings from record id to label, or equal-length
    sequences aligned by position. Label values only need to be hashable;
    renaming clusters does not change the score.

    Raises
    ------
    IdSetMismatchError
        If the labelings cover different records.
    """
    series_a = _as_series(labels_a)
    series_b = _as_series(labels_b)
    if set(series_a.index) != set(series_b.index) or len(series_a) != len(series_b):
        raise IdSetMismatchError("labelings cover different record ids")
    series_b = series_b.reindex(series_a.index)

    n = len(series_a)
    total = n * (n - 1) // 2
    frame = pd.DataFrame({"a": series_a.map(repr), "b": series_b.map(repr)})
    same_both = _pairs(frame.groupby(["a", "b"]).size())
    same_a = _pairs(frame.groupby("a").size())
    same_b = _pairs(frame.groupby("b").size())

    agree_same = same_both
    agree_diff = total - same_a - same_b + same_both
    disagree = same_a + same_b - 2 * same_both

    if total == 0:
        return PartitionScore(1.0, 0, 0, 0, 1.0)

    expected = same_a * same_b / total
    ceiling = (same_a + same_b) / 2
    adjusted = 1.0 if ceiling == expected else (same_both - expected) / (ceiling - expected)
    return PartitionScore(
        rand_index=(agree_same + agree_diff) / total,
        agree_same=agree_same,
        agree_diff=agree_diff,
        disagree=disagree,
        adjusted_rand_index=adjusted,
    )
