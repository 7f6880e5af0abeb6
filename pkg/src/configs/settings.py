# Configuration for the baire-bins pipeline

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from dotenv import load_dotenv

from src.errors import ParameterError

# Load environment variables from .env file
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ParameterError(f"Environment variable {name}={raw!r} is not an integer") from exc


class Config:
    """Defaults for the encoding pipeline, overridable through the environment."""

    # Relative artifact paths given to the CLI resolve against this directory
    OUTPUT_DIR = os.getenv("MADIC_OUTPUT_DIR", ".")

    # Base 10 for real-valued data; base 2 suits boolean data
    BASE = _env_int("MADIC_BASE", 10)
    MIN_BASE = 2
    MAX_BASE = 36
    PRECISION = _env_int("MADIC_PRECISION", 4)
    SEED = _env_int("MADIC_SEED", 1)
    AXIS_COUNT = _env_int("MADIC_AXIS_COUNT", 1)

    QUERY_WORKERS = _env_int("MADIC_QUERY_WORKERS", 4)
    LOG_LEVEL = os.getenv("MADIC_LOG_LEVEL", "INFO").upper()


ColumnRef = Union[str, int]


@dataclass(frozen=True)
class RunConfig:
    """Pipeline parameters for one CLI invocation.

    ``id_column`` is optional; records are then keyed by data row number.
    An empty ``value_columns`` means every column other than the id column.
    """

    input_path: Path
    id_column: Optional[ColumnRef] = None
    value_columns: tuple[ColumnRef, ...] = ()
    base: int = Config.BASE
    precision: int = Config.PRECISION
    seed: int = Config.SEED
    axis_count: int = Config.AXIS_COUNT
    index_path: Optional[Path] = None
    spec_path: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ParameterError(f"precision must be >= 1, got {self.precision}")
        if not Config.MIN_BASE <= self.base <= Config.MAX_BASE:
            raise ParameterError(
                f"base must lie in [{Config.MIN_BASE}, {Config.MAX_BASE}], got {self.base}"
            )
        if self.axis_count < 1:
            raise ParameterError(f"axis_count must be >= 1, got {self.axis_count}")

    @property
    def resolved_index_path(self) -> Path:
        return self.index_path or Path(self.input_path).with_suffix(".madic")

    @property
    def resolved_spec_path(self) -> Path:
        return self.spec_path or self.resolved_index_path.with_suffix(".proj")
