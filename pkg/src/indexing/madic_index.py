"""m-adic prefix tree built in one scan, with constant-time neighbor queries.

The tree is stored as one ``prefix value -> PrefixBin`` map per level rather
than as linked nodes. A bin's prefix value is its digit prefix read as a
base-B integer, so level ``l`` keys are computed incrementally from level
``l - 1`` while a record is scanned. Level 0 holds a single root bin.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

from src.configs.logging_config import get_logger
from src.configs.schema import digit_to_char
from src.encoding.codec import DigitCode, truncate
from src.encoding.metric import BaireProximity
from src.errors import (
    BaseMismatchError,
    DuplicateIdError,
    EmptyIndexError,
    LevelOutOfRangeError,
    NoNeighborError,
    UnknownIdError,
)

logger = get_logger(__name__)

RecordId = str


@dataclass
class PrefixBin:
    """One grid cell: every record whose code starts with this prefix."""

    level: int
    value: int
    base: int
    members: list[RecordId] = field(default_factory=list)

    @property
    def prefix(self) -> tuple[int, ...]:
        digits = [0] * self.level
        value = self.value
        for position in range(self.level - 1, -1, -1):
            value, digits[position] = divmod(value, self.base)
        return tuple(digits)

    @property
    def key(self) -> str:
        return "".join(digit_to_char(d) for d in self.prefix)

    @property
    def density(self) -> int:
        return len(self.members)

    def as_dict(self) -> dict:
        return {"prefix": self.key, "level": self.level, "members": list(self.members)}


@dataclass
class ProbeCounter:
    """Caller-owned count of bin lookups made by a query."""

    probes: int = 0

    def tick(self, count: int = 1) -> None:
        self.probes += count


@dataclass(frozen=True)
class Neighbor:
    record_id: RecordId
    proximity: BaireProximity


@dataclass(frozen=True)
class TraversalStats:
    """Singleton depth of every record and its histogram.

    A record's singleton depth is the shallowest level at which its bin holds
    only that record; records that never become singletons (duplicates) are
    counted at the full precision.
    """

    histogram: dict[int, int]
    depths: dict[RecordId, int]
    min_depth: int
    max_depth: int
    mean_depth: float
    balanced_depth: int

    def as_dict(self) -> dict:
        return {
            "histogram": {str(level): count for level, count in sorted(self.histogram.items())},
            "min_depth": self.min_depth,
            "max_depth": self.max_depth,
            "mean_depth": self.mean_depth,
            "balanced_depth": self.balanced_depth,
        }


def _no_counter(count: int = 1) -> None:
    return None


class MadicIndex:
    """
    Baire hierarchy over fixed-base, fixed-precision digit codes.

    Writers (``build``/``insert``) need exclusive access; a finished index is
    only read by queries, which accept an optional :class:`ProbeCounter`
    instead of recording anything on the index.
    """

    def __init__(self, base: int, precision: int) -> None:
        if precision < 1:
            raise LevelOutOfRangeError(f"precision must be >= 1, got {precision}")
        self.base = base
        self.precision = precision
        self.records_read = 0
        self.metadata: dict[RecordId, dict] = {}
        self._codes: dict[RecordId, DigitCode] = {}
        self._levels: list[dict[int, PrefixBin]] = [{} for _ in range(precision + 1)]
        self._write_lock = threading.Lock()

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def build(
        cls,
        records: Iterable[tuple[RecordId, DigitCode]],
        base: int,
        precision: int,
    ) -> "MadicIndex":
        """
        Build an index in one scan over ``(record id, code)`` pairs.

        Raises
        ------
        DuplicateIdError
            If a record id repeats.
        BaseMismatchError
            If a code's base or precision differs from the index's.
        """
        index = cls(base, precision)
        with index._write_lock:
            for record_id, code in records:
                index.records_read += 1
                index._add(record_id, code)
        logger.info(
            "Built base-%d index of %d records at precision %d",
            base,
            index.count,
            precision,
        )
        return index

    def insert(
        self,
        record_id: RecordId,
        code: DigitCode,
        metadata: Optional[dict] = None,
    ) -> "MadicIndex":
        """Add one terminal, touching exactly one bin per level."""
        with self._write_lock:
            self.records_read += 1
            self._add(record_id, code)
            if metadata is not None:
                self.metadata[record_id] = dict(metadata)
        logger.debug("Inserted %s with code %s", record_id, code)
        return self

    def _add(self, record_id: RecordId, code: DigitCode) -> None:
        if code.base != self.base or code.precision != self.precision:
            raise BaseMismatchError(
                f"code {code} (base {code.base}, precision {code.precision}) does not match "
                f"index base {self.base}, precision {self.precision}"
            )
        if record_id in self._codes:
            raise DuplicateIdError(f"record id {record_id!r} already indexed")

        self._codes[record_id] = code
        root = self._levels[0].get(0)
        if root is None:
            root = self._levels[0][0] = PrefixBin(level=0, value=0, base=self.base)
        root.members.append(record_id)

        value = 0
        for level, digit in enumerate(code.digits, start=1):
            value = value * self.base + digit
            level_bins = self._levels[level]
            cell = level_bins.get(value)
            if cell is None:
                cell = level_bins[value] = PrefixBin(level=level, value=value, base=self.base)
            cell.members.append(record_id)

    def truncated(self, new_precision: int) -> "MadicIndex":
        """Re-encode every stored code at a lower precision and rebuild."""
        coarse = MadicIndex.build(
            ((record_id, truncate(code, new_precision)) for record_id, code in self.codes()),
            base=self.base,
            precision=new_precision,
        )
        coarse.metadata = {key: dict(value) for key, value in self.metadata.items()}
        return coarse

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------
    @property
    def count(self) -> int:
        return len(self._codes)

    def __len__(self) -> int:
        return len(self._codes)

    def __contains__(self, record_id: object) -> bool:
        return record_id in self._codes

    def codes(self) -> Iterator[tuple[RecordId, DigitCode]]:
        """Stored codes in insertion order."""
        return iter(self._codes.items())

    def code_of(self, record_id: RecordId) -> DigitCode:
        try:
            return self._codes[record_id]
        except KeyError:
            raise UnknownIdError(f"record id {record_id!r} is not indexed") from None

    def _prefix_values(self, code: DigitCode, depth: int) -> list[int]:
        values: list[int] = []
        value = 0
        for digit in code.digits[:depth]:
            value = value * self.base + digit
            values.append(value)
        return values

    def _check_level(self, level: int) -> None:
        if not 1 <= level <= self.precision:
            raise LevelOutOfRangeError(
                f"level must lie in [1, {self.precision}], got {level}"
            )

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------
    def um_distance(
        self,
        id_a: RecordId,
        id_b: RecordId,
        counter: Optional[ProbeCounter] = None,
    ) -> BaireProximity:
        """
        Ultrametric distance read off the tree.

        Descends level by level while both records fall in the same bin; the
        last shared level is their lowest common ancestor. At most two bin
        probes per level.
        """
        tick = counter.tick if counter is not None else _no_counter
        values_a = self._prefix_values(self.code_of(id_a), self.precision)
        values_b = self._prefix_values(self.code_of(id_b), self.precision)

        shared = 0
        for level in range(1, self.precision + 1):
            level_bins = self._levels[level]
            bin_a = level_bins[values_a[level - 1]]
            bin_b = level_bins[values_b[level - 1]]
            tick(2)
            if bin_a is not bin_b:
                break
            shared = level
        return BaireProximity(lcp=shared, base=self.base, cap=self.precision)

    def nearest_neighbor(
        self,
        query: Union[RecordId, DigitCode],
        counter: Optional[ProbeCounter] = None,
    ) -> Neighbor:
        """
        Nearest indexed record to a member id or an external code.

        A member walks up from its deepest bin to the first bin holding
        another record; an external code descends to the deepest bin matching
        its prefix. Either way at most ``precision + 1`` bins are probed.
        Ties go to the earliest inserted record.

        Raises
        ------
        EmptyIndexError
            If the index holds no records.
        NoNeighborError
            If a member query runs on a single-record index.
        """
        if self.count == 0:
            raise EmptyIndexError("nearest neighbor query on an empty index")
        if isinstance(query, DigitCode):
            return self._nearest_to_code(query, counter)
        return self._nearest_to_member(query, counter)

    def _nearest_to_member(self, record_id: RecordId, counter: Optional[ProbeCounter]) -> Neighbor:
        tick = counter.tick if counter is not None else _no_counter
        code = self.code_of(record_id)
        if self.count < 2:
            raise NoNeighborError(f"record {record_id!r} is the only indexed record")

        values = self._prefix_values(code, self.precision)
        for level in range(self.precision, 0, -1):
            cell = self._levels[level][values[level - 1]]
            tick()
            if cell.density >= 2:
                return Neighbor(
                    record_id=self._first_other(cell, record_id),
                    proximity=BaireProximity(lcp=level, base=self.base, cap=self.precision),
                )

        root = self._levels[0][0]
        tick()
        return Neighbor(
            record_id=self._first_other(root, record_id),
            proximity=BaireProximity(lcp=0, base=self.base, cap=self.precision),
        )

    def _nearest_to_code(self, code: DigitCode, counter: Optional[ProbeCounter]) -> Neighbor:
        tick = counter.tick if counter is not None else _no_counter
        if code.base != self.base:
            raise BaseMismatchError(f"query base {code.base} differs from index base {self.base}")
        cap = min(code.precision, self.precision)

        deepest: Optional[PrefixBin] = None
        depth = 0
        for level, value in enumerate(self._prefix_values(code, cap), start=1):
            cell = self._levels[level].get(value)
            tick()
            if cell is None:
                break
            deepest, depth = cell, level
        if deepest is None:
            deepest = self._levels[0][0]
            tick()
        return Neighbor(
            record_id=deepest.members[0],
            proximity=BaireProximity(lcp=depth, base=self.base, cap=cap),
        )

    @staticmethod
    def _first_other(cell: PrefixBin, record_id: RecordId) -> RecordId:
        for member in cell.members:
            if member != record_id:
                return member
        raise NoNeighborError(f"bin {cell.key!r} holds no record other than {record_id!r}")

    def bins_at_level(self, level: int) -> list[PrefixBin]:
        """Non-empty bins of a level, sorted by prefix."""
        self._check_level(level)
        return sorted(self._levels[level].values(), key=lambda cell: cell.value)

    def bin_for(self, prefix: Sequence[int]) -> Optional[PrefixBin]:
        """Direct hash-key lookup of the bin for a digit prefix."""
        self._check_level(len(prefix))
        value = 0
        for digit in prefix:
            value = value * self.base + digit
        return self._levels[len(prefix)].get(value)

    def path(self, record_id: RecordId) -> list[PrefixBin]:
        """The bins a record hashes into, from level 1 down to full precision."""
        values = self._prefix_values(self.code_of(record_id), self.precision)
        return [self._levels[level][value] for level, value in enumerate(values, start=1)]

    def depth_stats(self) -> TraversalStats:
        if self.count == 0:
            raise EmptyIndexError("depth statistics need at least one record")

        depths: dict[RecordId, int] = {}
        for record_id, code in self._codes.items():
            depth = self.precision
            for level, value in enumerate(self._prefix_values(code, self.precision), start=1):
                if self._levels[level][value].density == 1:
                    depth = level
                    break
            depths[record_id] = depth

        histogram = Counter(depths.values())
        return TraversalStats(
            histogram=dict(sorted(histogram.items())),
            depths=depths,
            min_depth=min(histogram),
            max_depth=max(histogram),
            mean_depth=sum(depths.values()) / len(depths),
            balanced_depth=int(math.floor(math.log2(self.count))),
        )

    def level_summary(self) -> list[dict[str, int]]:
        """Bin count and largest bin density for every level."""
        summary = []
        for level in range(1, self.precision + 1):
            cells = self._levels[level].values()
            summary.append({
                "level": level,
                "bins": len(cells),
                "max_density": max((cell.density for cell in cells), default=0),
            })
        return summary

    def bin_snapshot(self) -> dict[int, dict[str, frozenset[RecordId]]]:
        """Level -> bin key -> member set; equal snapshots mean equal trees."""
        return {
            level: {cell.key: frozenset(cell.members) for cell in self._levels[level].values()}
            for level in range(1, self.precision + 1)
        }
