"""PROJ1 projection spec files.

Layout: ``PROJ1 <d> <axis_count> <seed> <lo> <hi>`` followed by one line of
``d`` space-separated components per axis, 17 significant digits each.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from src.configs.logging_config import get_logger
from src.configs.schema import PROJECTION_MAGIC, PROJECTION_MAGIC_FAMILY
from src.encoding.codec import NormalizationBounds
from src.errors import (
    CorruptIndexError,
    DomainError,
    FormatVersionError,
    IndexFormatError,
    ParameterError,
)
from src.projection.random_projection import ProjectionSpec

logger = get_logger(__name__)

PathLike = Union[str, Path]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def dump_projection(spec: ProjectionSpec) -> str:
    if spec.bounds is None:
        raise ParameterError("cannot save a projection whose bounds are not fitted")
    lines = [
        f"{PROJECTION_MAGIC} {spec.dimension} {spec.axis_count} {spec.seed} "
        f"{_fmt(spec.bounds.lo)} {_fmt(spec.bounds.hi)}"
    ]
    for axis in spec.axes:
        lines.append(" ".join(_fmt(component) for component in axis))
    return "\n".join(lines) + "\n"


def parse_projection(text: str) -> ProjectionSpec:
    lines = text.splitlines()
    header = lines[0].split() if lines else []
    if not header or header[0] != PROJECTION_MAGIC:
        tag = header[0] if header else ""
        if tag.startswith(PROJECTION_MAGIC_FAMILY):
            raise FormatVersionError(f"unsupported projection format {tag!r}")
        raise CorruptIndexError("not a PROJ projection file")
    if len(header) != 6:
        raise CorruptIndexError(f"malformed projection header {lines[0]!r}")

    try:
        dimension, axis_count, seed = (int(token) for token in header[1:4])
        bounds = NormalizationBounds(lo=float(header[4]), hi=float(header[5]))
        axes = np.array([[float(token) for token in line.split()] for line in lines[1:]], dtype=float)
    except (ValueError, DomainError) as exc:
        raise CorruptIndexError(f"unreadable projection file: {exc}") from exc
    if axes.shape != (axis_count, dimension):
        raise CorruptIndexError(
            f"projection file holds axes of shape {axes.shape}, header says ({axis_count}, {dimension})"
        )
    return ProjectionSpec(dimension=dimension, axis_count=axis_count, seed=seed, axes=axes, bounds=bounds)


def write_projection(spec: ProjectionSpec, destination: PathLike) -> Path:
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_projection(spec), encoding="ascii")
    logger.info("Saved projection spec (d=%d, %d axes) to %s", spec.dimension, spec.axis_count, path)
    return path


def read_projection(source: PathLike) -> ProjectionSpec:
    path = Path(source)
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise IndexFormatError(f"cannot read projection file {path}: {exc}") from exc
    spec = parse_projection(text)
    logger.info("Loaded projection spec (d=%d, %d axes) from %s", spec.dimension, spec.axis_count, path)
    return spec
