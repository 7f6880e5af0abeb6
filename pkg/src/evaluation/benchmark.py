"""Build-time scaling benchmark for the one-scan index construction."""

from __future__ import annotations

import time
from typing import Sequence

import numpy as np
import pandas as pd

from src.configs.logging_config import get_logger
from src.configs.schema import BenchmarkColumns, create_empty_benchmark_df
from src.encoding.codec import encode_many
from src.errors import MadicError, ParameterError
from src.indexing.madic_index import MadicIndex

logger = get_logger(__name__)


def scaling_benchmark(
    sizes: Sequence[int],
    base: int,
    precision: int,
    seed: int = 1,
) -> pd.DataFrame:
    """
    Time one build per size over seeded uniform scalars.

    Encoding happens before the clock starts; only ``MadicIndex.build`` is
    timed. The scan counter of every build must equal its size.

    Returns
    -------
    pd.DataFrame
        Columns ``n``, ``BuildSeconds``, ``Reads``, one row per size.
    """
    sizes = [int(n) for n in sizes]
    if any(n < 0 for n in sizes):
        raise ParameterError("benchmark sizes must be non-negative")
    if sizes != sorted(sizes):
        raise ParameterError(f"benchmark sizes must be ascending, got {sizes}")
    if not sizes:
        return create_empty_benchmark_df()

    rng = np.random.Generator(np.random.PCG64(seed))
    rows = []
    for n in sizes:
        values = rng.random(n)
        codes = encode_many(values, base, precision)
        records = ((str(i), code) for i, code in enumerate(codes))

        started = time.perf_counter()
        index = MadicIndex.build(records, base=base, precision=precision)
        elapsed = time.perf_counter() - started

        if index.records_read != n:
            raise MadicError(f"build read {index.records_read} records for n={n}")
        logger.info("n=%d built in %.4fs (%d reads)", n, elapsed, index.records_read)
        rows.append({
            BenchmarkColumns.N.name: n,
            BenchmarkColumns.BUILD_SECONDS.name: elapsed,
            BenchmarkColumns.READS.name: index.records_read,
        })
    return pd.DataFrame(rows, columns=BenchmarkColumns.names())


def format_table(table: pd.DataFrame) -> str:
    """Aligned text rendering of a benchmark table."""
    return table.to_string(index=False)
