"""Tests for the centralized schema definitions."""

import pandas as pd
import pytest

from src.configs.schema import (
    BENCHMARK_SCHEMA,
    DIGIT_ALPHABET,
    LABELING_SCHEMA,
    BenchmarkColumns,
    Column,
    LabelingColumns,
    TableSchema,
    char_to_digit,
    clean_record_id,
    create_empty_benchmark_df,
    digit_to_char,
    validate_benchmark_df,
    validate_labeling_df,
)
from src.errors import IngestionError


class TestColumnDefinitions:
    """Tests for Column dataclass."""

    def test_column_is_frozen(self):
        col = Column("Test", "str")
        with pytest.raises(AttributeError):
            col.name = "Modified"

    def test_column_defaults(self):
        col = Column("Test", "str")
        assert col.nullable is True
        assert col.description == ""


class TestLabelingColumns:
    """Tests for LabelingColumns schema."""

    def test_names(self):
        assert LabelingColumns.names() == ["RecordID", "Cluster"]

    def test_primary_key(self):
        assert LabelingColumns.RECORD_ID.is_primary_key is True


class TestBenchmarkColumns:
    """Tests for BenchmarkColumns schema."""

    def test_names(self):
        assert BenchmarkColumns.names() == ["n", "BuildSeconds", "Reads"]

    def test_all_required(self):
        assert BENCHMARK_SCHEMA.required_columns() == ["n", "BuildSeconds", "Reads"]


class TestTableSchema:
    """Tests for TableSchema class."""

    def test_empty_dataframe_has_correct_columns(self):
        df = LABELING_SCHEMA.empty_dataframe()
        assert list(df.columns) == LabelingColumns.names()
        assert len(df) == 0

    def test_validate_reports_missing_columns(self):
        schema = TableSchema("demo", [Column("A", "str", nullable=False), Column("B", "str")])
        errors = schema.validate(pd.DataFrame({"B": ["x"]}))
        assert errors == ["Missing required column: A"]


class TestSchemaHelpers:
    """Tests for factory and validation helpers."""

    def test_create_empty_benchmark_df(self):
        df = create_empty_benchmark_df()
        assert list(df.columns) == ["n", "BuildSeconds", "Reads"]
        assert df.empty

    def test_validate_labeling_df_accepts_complete_frame(self):
        df = pd.DataFrame({"RecordID": ["a"], "Cluster": ["0"]})
        assert validate_labeling_df(df) == []

    def test_validate_benchmark_df_flags_missing_reads(self):
        df = pd.DataFrame({"n": [10], "BuildSeconds": [0.1]})
        assert validate_benchmark_df(df) == ["Missing required column: Reads"]


class TestRecordIds:
    def test_strips_whitespace(self):
        assert clean_record_id("  r1 ") == "r1"

    def test_numbers_become_strings(self):
        assert clean_record_id(7) == "7"

    @pytest.mark.parametrize("raw", ["", "   ", "a\tb", "a\nb"])
    def test_rejects_unstorable_ids(self, raw):
        with pytest.raises(IngestionError):
            clean_record_id(raw)


class TestDigitAlphabet:
    def test_round_trip_every_digit(self):
        for digit, char in enumerate(DIGIT_ALPHABET):
            assert digit_to_char(digit) == char
            assert char_to_digit(char, 36) == digit

    def test_rejects_digit_outside_base(self):
        assert char_to_digit("a", 10) is None
        assert char_to_digit("2", 2) is None

    def test_upper_case_accepted(self):
        assert char_to_digit("F", 16) == 15
