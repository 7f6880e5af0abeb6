"""Tests for MADIC1 index persistence."""

import random
import zlib

import pytest

from src.encoding.codec import DigitCode, encode
from src.errors import CorruptIndexError, FormatVersionError, IndexFormatError
from src.indexing.madic_index import MadicIndex
from src.storage.index_store import dump_index, parse_index, read_index, write_index


def with_crc(body: bytes) -> bytes:
    return body + f"CRC {zlib.crc32(body) & 0xFFFFFFFF:08x}\n".encode("ascii")


@pytest.fixture
def three_records():
    values = {"a": 0.478, "b": 0.472, "c": 0.900}
    return MadicIndex.build(
        ((record_id, encode(v, 10, 3)) for record_id, v in values.items()), base=10, precision=3
    )


def test_file_layout(three_records):
    data = dump_index(three_records)
    lines = data.decode("ascii").split("\n")
    assert lines[0] == "MADIC1 10 3 3"
    assert lines[1:4] == ["a\t478", "b\t472", "c\t900"]
    assert lines[4] == f"CRC {zlib.crc32(data[:data.rfind(b'CRC')]) & 0xFFFFFFFF:08x}"
    assert lines[5] == ""


def test_dump_is_deterministic(three_records):
    assert dump_index(three_records) == dump_index(three_records)


def test_round_trip_preserves_bins(tmp_path, three_records):
    path = write_index(three_records, tmp_path / "three.madic")
    loaded = read_index(path)
    for level in range(1, 4):
        assert [c.as_dict() for c in loaded.bins_at_level(level)] == [
            c.as_dict() for c in three_records.bins_at_level(level)
        ]


def test_round_trip_answers_queries_identically(tmp_path):
    rng = random.Random(21)
    records = [(f"id{i}", DigitCode(10, tuple(rng.randrange(10) for _ in range(4)))) for i in range(300)]
    index = MadicIndex.build(records, base=10, precision=4)
    loaded = read_index(write_index(index, tmp_path / "r.madic"))

    ids = [record_id for record_id, _ in records]
    for _ in range(1000):
        kind = rng.choice(["nn", "dist", "bins", "stats"])
        if kind == "nn":
            record_id = rng.choice(ids)
            assert loaded.nearest_neighbor(record_id) == index.nearest_neighbor(record_id)
        elif kind == "dist":
            a, b = rng.choice(ids), rng.choice(ids)
            assert loaded.um_distance(a, b) == index.um_distance(a, b)
        elif kind == "bins":
            level = rng.randint(1, 4)
            assert [c.as_dict() for c in loaded.bins_at_level(level)] == [
                c.as_dict() for c in index.bins_at_level(level)
            ]
        else:
            assert loaded.depth_stats() == index.depth_stats()


def test_base_36_digits_round_trip():
    index = MadicIndex.build([("x", DigitCode(36, (35, 10)))], base=36, precision=2)
    data = dump_index(index)
    assert b"x\tza\n" in data
    assert parse_index(data).code_of("x") == DigitCode(36, (35, 10))


def test_empty_index_round_trip():
    loaded = parse_index(dump_index(MadicIndex(base=2, precision=5)))
    assert loaded.count == 0
    assert loaded.precision == 5


class TestCorruption:
    def test_truncated_file(self, three_records):
        data = dump_index(three_records)
        with pytest.raises(CorruptIndexError):
            parse_index(data[: len(data) // 2])

    def test_missing_trailer(self, three_records):
        data = dump_index(three_records)
        with pytest.raises(CorruptIndexError):
            parse_index(data[: data.rfind(b"CRC")])

    def test_checksum_mismatch(self, three_records):
        data = dump_index(three_records).replace(b"a\t478", b"a\t479")
        with pytest.raises(CorruptIndexError, match="checksum"):
            parse_index(data)

    def test_other_version(self, three_records):
        data = dump_index(three_records).replace(b"MADIC1", b"MADIC9", 1)
        with pytest.raises(FormatVersionError):
            parse_index(data)

    def test_not_an_index(self):
        with pytest.raises(CorruptIndexError):
            parse_index(b"hello world\n")

    def test_count_mismatch(self):
        with pytest.raises(CorruptIndexError, match="announces"):
            parse_index(with_crc(b"MADIC1 10 2 3\na\t12\n"))

    def test_bad_digit(self):
        with pytest.raises(CorruptIndexError, match="line 2"):
            parse_index(with_crc(b"MADIC1 10 2 1\na\t1x\n"))

    def test_missing_tab(self):
        with pytest.raises(CorruptIndexError):
            parse_index(with_crc(b"MADIC1 10 2 1\na 12\n"))

    def test_errors_share_a_family(self):
        assert issubclass(FormatVersionError, IndexFormatError)
        assert issubclass(CorruptIndexError, IndexFormatError)
