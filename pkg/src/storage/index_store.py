"""MADIC1 index files: a header, one line per record, and a CRC-32 trailer.

Only the codes are stored; ``read_index`` rebuilds the tree in one scan.
"""

from __future__ import annotations

import zlib
from pathlib import Path
from typing import Iterator, Union

from src.configs.logging_config import get_logger
from src.configs.schema import CRC_TAG, INDEX_MAGIC, INDEX_MAGIC_FAMILY
from src.encoding.codec import DigitCode
from src.errors import CorruptIndexError, DomainError, FormatVersionError, IndexFormatError
from src.indexing.madic_index import MadicIndex

logger = get_logger(__name__)

PathLike = Union[str, Path]


def dump_index(index: MadicIndex) -> bytes:
    """Serialize an index to MADIC1 bytes."""
    lines = [f"{INDEX_MAGIC} {index.base} {index.precision} {index.count}\n"]
    lines.extend(f"{record_id}\t{code.key()}\n" for record_id, code in index.codes())
    body = "".join(lines).encode("utf-8")
    checksum = zlib.crc32(body) & 0xFFFFFFFF
    return body + f"{CRC_TAG} {checksum:08x}\n".encode("ascii")


def parse_index(data: bytes) -> MadicIndex:
    """
    Rebuild an index from MADIC1 bytes.

    Raises
    ------
    FormatVersionError
        If the magic tag names another MADIC version.
    CorruptIndexError
        If the file is truncated, malformed, or fails its checksum.
    """
    header_end = data.find(b"\n")
    if header_end < 0:
        raise CorruptIndexError("index file has no header line")
    header = data[:header_end].decode("utf-8", errors="replace").split()
    if not header or header[0] != INDEX_MAGIC:
        tag = header[0] if header else ""
        if tag.startswith(INDEX_MAGIC_FAMILY):
            raise FormatVersionError(f"unsupported index format {tag!r}; expected {INDEX_MAGIC}")
        raise CorruptIndexError("not a MADIC index file")
    if len(header) != 4:
        raise CorruptIndexError(f"malformed header {' '.join(header)!r}")

    if not data.endswith(b"\n"):
        raise CorruptIndexError("index file is truncated")
    trailer_start = data.rfind(b"\n", 0, len(data) - 1) + 1
    trailer = data[trailer_start:-1].decode("ascii", errors="replace").split()
    if trailer_start <= header_end or len(trailer) != 2 or trailer[0] != CRC_TAG:
        raise CorruptIndexError("index file is truncated (missing CRC trailer)")
    body = data[:trailer_start]
    expected = f"{zlib.crc32(body) & 0xFFFFFFFF:08x}"
    if trailer[1].lower() != expected:
        raise CorruptIndexError(f"checksum mismatch: file says {trailer[1]}, content is {expected}")

    try:
        base, precision, count = (int(token) for token in header[1:])
        text = body[header_end + 1:].decode("utf-8")
    except (ValueError, UnicodeDecodeError) as exc:
        raise CorruptIndexError(f"unreadable index body: {exc}") from exc

    if precision < 1 or count < 0:
        raise CorruptIndexError(f"invalid header values: precision {precision}, count {count}")

    lines = text.split("\n")[:-1]
    if len(lines) != count:
        raise CorruptIndexError(f"header announces {count} records, file holds {len(lines)}")

    index = MadicIndex.build(_records(lines, base), base=base, precision=precision)
    logger.debug("Parsed MADIC1 index with %d records", index.count)
    return index


def _records(lines: list[str], base: int) -> Iterator[tuple[str, DigitCode]]:
    for number, line in enumerate(lines, start=2):
        record_id, sep, digits = line.partition("\t")
        if not sep or not record_id:
            raise CorruptIndexError(f"line {number}: expected 'id<TAB>digits'")
        try:
            code = DigitCode.from_key(digits, base)
        except DomainError as exc:
            raise CorruptIndexError(f"line {number}: {exc}") from exc
        yield record_id, code


def write_index(index: MadicIndex, destination: PathLike) -> Path:
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dump_index(index))
    logger.info("Saved %d-record index to %s", index.count, path)
    return path


def read_index(source: PathLike) -> MadicIndex:
    path = Path(source)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IndexFormatError(f"cannot read index file {path}: {exc}") from exc
    index = parse_index(data)
    logger.info("Loaded %d-record index from %s", index.count, path)
    return index
