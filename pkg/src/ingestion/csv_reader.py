"""CSV ingestion: comma-delimited numeric records with an optional header."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from src.configs.logging_config import get_logger
from src.configs.schema import clean_record_id
from src.errors import IngestionError

logger = get_logger(__name__)

ColumnRef = Union[str, int]


@dataclass
class Dataset:
    """Ingested records: ids in file order and an ``n x d`` value matrix."""

    ids: list[str]
    values: np.ndarray
    columns: list[str]

    @property
    def dimension(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return len(self.ids)


def _parse_number(cell: str) -> Optional[float]:
    text = cell.strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        return None
    if math.isnan(value) or math.isinf(value):
        return None
    return value


def _is_label(cell: str) -> bool:
    text = cell.strip()
    if not text:
        return False
    try:
        float(text)
    except ValueError:
        return True
    return False


def _looks_like_header(first_row: Sequence[str], id_column: Optional[ColumnRef]) -> bool:
    if isinstance(id_column, str) and not id_column.isdigit():
        return True
    skip = int(id_column) if id_column is not None else None
    # Empty, NaN and inf cells parse as data so the value check rejects them.
    return any(
        _is_label(cell)
        for position, cell in enumerate(first_row)
        if position != skip
    )



def _resolve(ref: ColumnRef, columns: list[str]) -> int:
    if isinstance(ref, int) or (isinstance(ref, str) and ref.isdigit() and ref not in columns):
        position = int(ref)
        if not 0 <= position < len(columns):
            raise IngestionError(f"column index {position} out of range (file has {len(columns)})")
        return position
    if ref not in columns:
        raise IngestionError(f"column {ref!r} not found; available: {', '.join(columns)}")
    return columns.index(ref)


def read_records(
    path: Union[str, Path],
    id_column: Optional[ColumnRef] = None,
    value_columns: Sequence[ColumnRef] = (),
) -> Dataset:
    """
    Read a CSV file into ids and numeric values.

    A header is detected when any non-id cell of the first row holds
    text that is not a number, or when ``id_column`` is given by name.
    Without ``id_column`` records are keyed by data row number from 0.
    Empty, NaN or non-numeric value cells are errors; nothing is dropped or
    imputed.

    Raises
    ------
    IngestionError
        If the file cannot be read, holds no records, or a value cell is not
        a finite number (the message names row and column).
    """
    source = Path(path)
    try:
        raw = pd.read_csv(
            source,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError:
        raise IngestionError(f"{source}: no records") from None
    except (OSError, pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise IngestionError(f"{source}: unreadable CSV ({exc})") from exc

    has_header = len(raw) > 0 and _looks_like_header(list(raw.iloc[0]), id_column)
    if has_header:
        columns = [str(name).strip() for name in raw.iloc[0]]
        body = raw.iloc[1:].reset_index(drop=True)
        first_line = 2
    else:
        columns = [str(position) for position in range(raw.shape[1])]
        body = raw
        first_line = 1
    if body.empty:
        raise IngestionError(f"{source}: no records")

    id_position = _resolve(id_column, columns) if id_column is not None else None
    if value_columns:
        value_positions = [_resolve(ref, columns) for ref in value_columns]
    else:
        value_positions = [p for p in range(len(columns)) if p != id_position]
    if not value_positions:
        raise IngestionError(f"{source}: no value columns")

    values = np.empty((len(body), len(value_positions)), dtype=float)
    for row in range(len(body)):
        for out_col, position in enumerate(value_positions):
            cell = body.iat[row, position]
            number = _parse_number(cell)
            if number is None:
                raise IngestionError(
                    f"{source}: row {row + first_line}, column {columns[position]!r}: "
                    f"expected a finite number, got {cell!r}"
                )
            values[row, out_col] = number

    if id_position is None:
        ids = [str(row) for row in range(len(body))]
    else:
        ids = [clean_record_id(cell) for cell in body.iloc[:, id_position]]
    if len(set(ids)) != len(ids):
        raise IngestionError(f"{source}: record ids are not unique")

    logger.info("Ingested %d records with %d value columns from %s", len(ids), len(value_positions), source)
    return Dataset(ids=ids, values=values, columns=[columns[p] for p in value_positions])
