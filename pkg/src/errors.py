"""Exception hierarchy shared by every baire-bins module.

The CLI maps the two families onto exit codes: ``UsageError`` -> 1,
``DataError`` -> 2, anything else -> 3.
"""

from __future__ import annotations


class MadicError(Exception):
    """Base exception for baire-bins errors."""


class UsageError(MadicError):
    """Raised when a caller passes invalid parameters or flags."""


class DataError(MadicError):
    """Raised when input data or stored artifacts cannot be processed."""


# ---------------------------------------------------------------------------
# Usage errors
# ---------------------------------------------------------------------------
class ParameterError(UsageError, ValueError):
    """Raised for out-of-range numeric parameters (k, sizes, flags)."""


class LevelOutOfRangeError(UsageError, ValueError):
    """Raised when a tree level falls outside 1..precision."""


# ---------------------------------------------------------------------------
# Data errors
# ---------------------------------------------------------------------------
class DomainError(DataError, ValueError):
    """Raised when a value or precision lies outside the encodable domain."""


class OutOfBoundsError(DataError, ValueError):
    """Raised when a value falls outside fitted normalization bounds."""


class BaseMismatchError(DataError):
    """Raised when digit codes of different bases or precisions are mixed."""


class DuplicateIdError(DataError):
    """Raised when a record id is inserted twice."""


class UnknownIdError(DataError):
    """Raised when a query names a record id the index does not hold."""


class NoNeighborError(DataError):
    """Raised when a member query has no other record to match."""


class EmptyIndexError(DataError):
    """Raised when a query needs at least one indexed record."""


class DimensionMismatchError(DataError):
    """Raised when a record's dimension differs from the projection's."""


class IdSetMismatchError(DataError):
    """Raised when two labelings do not cover the same record ids."""


class IngestionError(DataError):
    """Raised when a CSV file cannot be turned into numeric records."""


class IndexFormatError(DataError):
    """Base for errors reading a persisted index or projection file."""


class FormatVersionError(IndexFormatError):
    """Raised when a file carries an unknown magic/version tag."""


class CorruptIndexError(IndexFormatError):
    """Raised when a file is truncated or fails its checksum."""
