"""Centralized schema definitions for every table and file baire-bins writes.

Column names for labeling and benchmark tables, and the magic tags of the
index and projection files, live here so storage code and the CLI agree.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Optional

import pandas as pd

from src.errors import IngestionError


# =============================================================================
# File format tags
# =============================================================================

INDEX_MAGIC = "MADIC1"
INDEX_MAGIC_FAMILY = "MADIC"
PROJECTION_MAGIC = "PROJ1"
PROJECTION_MAGIC_FAMILY = "PROJ"
CRC_TAG = "CRC"

# Digit alphabet for bases up to 36
DIGIT_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"

NOISE_LABEL = "noise"


# =============================================================================
# Helper Functions for Record IDs
# =============================================================================

def normalize_string(text: str) -> str:
    """Normalize Unicode to NFC so visually equal ids compare equal."""
    if not text:
        return ""
    return unicodedata.normalize('NFC', text)


def clean_record_id(raw: object) -> str:
    """Clean a record id for storage in line-oriented files.

    - Converts to string and strips surrounding whitespace
    - Normalizes Unicode
    - Rejects empty ids and ids containing tabs or newlines
    """
    text = normalize_string(str(raw)).strip()
    if not text:
        raise IngestionError("Record id must not be empty")
    if any(ch in text for ch in "\t\r\n"):
        raise IngestionError(f"Record id {text!r} contains a tab or newline")
    return text


# =============================================================================
# Column Definitions
# =============================================================================

@dataclass(frozen=True)
class Column:
    """Definition of a single column."""
    name: str
    dtype: str  # pandas dtype string
    nullable: bool = True
    description: str = ""
    is_primary_key: bool = False


class LabelingColumns:
    """Column definitions for a cluster labeling table.

    Primary Key: RecordID
    """
    RECORD_ID = Column("RecordID", "str", nullable=False, is_primary_key=True,
                       description="Record identifier as stored in the index")
    CLUSTER = Column("Cluster", "str", nullable=False,
                     description="Cluster id, or 'noise'")

    @classmethod
    def all_columns(cls) -> list[Column]:
        return [cls.RECORD_ID, cls.CLUSTER]

    @classmethod
    def names(cls) -> list[str]:
        return [col.name for col in cls.all_columns()]


class BenchmarkColumns:
    """Column definitions for the build-scaling benchmark table."""
    N = Column("n", "int64", nullable=False, description="Number of records built")
    BUILD_SECONDS = Column("BuildSeconds", "float64", nullable=False,
                           description="Wall time of the one-scan build")
    READS = Column("Reads", "int64", nullable=False,
                   description="Records read by the build scan")

    @classmethod
    def all_columns(cls) -> list[Column]:
        return [cls.N, cls.BUILD_SECONDS, cls.READS]

    @classmethod
    def names(cls) -> list[str]:
        return [col.name for col in cls.all_columns()]


# =============================================================================
# Schema Registry
# =============================================================================

@dataclass
class TableSchema:
    """Complete schema definition for a table."""
    name: str
    columns: list[Column]
    description: str = ""

    def required_columns(self) -> list[str]:
        return [col.name for col in self.columns if not col.nullable]

    def empty_dataframe(self) -> pd.DataFrame:
        """Create an empty DataFrame with the correct columns and dtypes."""
        return pd.DataFrame({col.name: pd.Series(dtype=col.dtype) for col in self.columns})

    def validate(self, df: pd.DataFrame) -> list[str]:
        """Validate a DataFrame against the schema. Returns list of errors."""
        return [
            f"Missing required column: {col}"
            for col in self.required_columns()
            if col not in df.columns
        ]


LABELING_SCHEMA = TableSchema(
    name="labeling",
    columns=LabelingColumns.all_columns(),
    description="Cluster label per indexed record",
)

BENCHMARK_SCHEMA = TableSchema(
    name="benchmark",
    columns=BenchmarkColumns.all_columns(),
    description="Build wall time and scan counter per input size",
)


def create_empty_benchmark_df() -> pd.DataFrame:
    """Create an empty benchmark DataFrame with correct schema."""
    return BENCHMARK_SCHEMA.empty_dataframe()


def validate_labeling_df(df: pd.DataFrame) -> list[str]:
    return LABELING_SCHEMA.validate(df)


def validate_benchmark_df(df: pd.DataFrame) -> list[str]:
    return BENCHMARK_SCHEMA.validate(df)


def digit_to_char(digit: int) -> str:
    return DIGIT_ALPHABET[digit]


def char_to_digit(char: str, base: int) -> Optional[int]:
    """Return the digit value of ``char`` in ``base``, or None when invalid."""
    value = DIGIT_ALPHABET.find(char.lower())
    if value < 0 or value >= base:
        return None
    return value
