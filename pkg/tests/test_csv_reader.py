"""Tests for CSV ingestion."""

import numpy as np
import pytest

from src.errors import IngestionError
from src.ingestion.csv_reader import read_records


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_headerless_single_column(tmp_path):
    dataset = read_records(write(tmp_path, "0.478\n0.472\n0.900\n"))
    assert dataset.ids == ["0", "1", "2"]
    assert dataset.dimension == 1
    assert np.allclose(dataset.values[:, 0], [0.478, 0.472, 0.9])


def test_header_detected(tmp_path):
    dataset = read_records(write(tmp_path, "x,y\n1,2\n3,4\n"))
    assert dataset.columns == ["x", "y"]
    assert len(dataset) == 2


def test_named_id_column(tmp_path):
    dataset = read_records(write(tmp_path, "name,v\na,0.1\nb,0.2\n"), id_column="name")
    assert dataset.ids == ["a", "b"]
    assert dataset.columns == ["v"]


def test_positional_id_column_without_header(tmp_path):
    dataset = read_records(write(tmp_path, "a,0.1,5\nb,0.2,6\n"), id_column=0, value_columns=[2])
    assert dataset.ids == ["a", "b"]
    assert dataset.values.tolist() == [[5.0], [6.0]]


def test_value_column_selection_by_name(tmp_path):
    dataset = read_records(write(tmp_path, "a,b,c\n1,2,3\n"), value_columns=["c", "a"])
    assert dataset.values.tolist() == [[3.0, 1.0]]


@pytest.mark.parametrize("cell", ["", "NaN", "abc", "inf"])
def test_bad_value_cell_names_row_and_column(tmp_path, cell):
    path = write(tmp_path, f"x,y\n1,2\n3,{cell}\n")
    with pytest.raises(IngestionError, match=r"row 3, column 'y'"):
        read_records(path)


def test_empty_file(tmp_path):
    with pytest.raises(IngestionError, match="no records"):
        read_records(write(tmp_path, ""))


def test_header_only(tmp_path):
    with pytest.raises(IngestionError, match="no records"):
        read_records(write(tmp_path, "x,y\n"))


def test_duplicate_ids(tmp_path):
    with pytest.raises(IngestionError, match="not unique"):
        read_records(write(tmp_path, "id,v\na,1\na,2\n"), id_column="id")


def test_missing_column(tmp_path):
    with pytest.raises(IngestionError, match="not found"):
        read_records(write(tmp_path, "x,y\n1,2\n"), value_columns=["z"])


def test_missing_file(tmp_path):
    with pytest.raises(IngestionError):
        read_records(tmp_path / "absent.csv")


@pytest.mark.parametrize("cell", ["", "NaN", "inf"])
def test_bad_cell_in_first_headerless_row_is_not_a_header(tmp_path, cell):
    path = write(tmp_path, f"0.5,{cell}\n0.3,0.2\n0.1,0.4\n")
    with pytest.raises(IngestionError, match=r"row 1, column '1'"):
        read_records(path)


def test_bad_cell_beside_text_id_in_first_row(tmp_path):
    path = write(tmp_path, "alpha,NaN\nbeta,0.2\n")
    with pytest.raises(IngestionError, match=r"row 1, column '1'"):
        read_records(path, id_column=0)
