import logging

import pandas as pd
import pytest

from src.io_utils import dumps_json, read_text, write_csv, write_excel_with_tabs, write_json, write_text
from src.logging_utils import set_level, setup_logger


def test_setup_logger_idempotent():
    logger1 = setup_logger("test")
    logger2 = setup_logger("test")
    assert logger1 is logger2
    assert len(logger1.handlers) == 1


def test_set_level_relevels_module_loggers():
    logger = setup_logger("src.sample_module")
    assert set_level("ERROR") == logging.ERROR
    assert logger.level == logging.ERROR
    set_level("INFO")
    assert logger.level == logging.INFO
    with pytest.raises(ValueError):
        set_level("LOUD")


def test_csv_written(tmp_path):
    df = pd.DataFrame({"a": [1, 2], "b": [3, 4]})
    path = tmp_path / "sub" / "out.csv"
    write_csv(df, str(path))
    assert path.exists()
    assert pd.read_csv(path).equals(df)


def test_text_and_json(tmp_path):
    path = tmp_path / "nested" / "file.txt"
    write_text("hello\n", str(path))
    assert read_text(str(path)) == "hello\n"
    with pytest.raises(FileNotFoundError):
        read_text(str(tmp_path / "missing.txt"))

    assert dumps_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    write_json({"k": True}, str(tmp_path / "d.json"))
    assert (tmp_path / "d.json").read_text() == '{\n  "k": true\n}\n'


def test_write_excel_with_tabs(tmp_path):
    xls_path = tmp_path / "book.xlsx"
    write_excel_with_tabs({"Summary": pd.DataFrame({"theorem": ["theorem1"], "pass": [3]}),
                           "Empty": pd.DataFrame()}, str(xls_path))
    assert xls_path.exists()
    sheets = pd.read_excel(xls_path, sheet_name=None)
    assert list(sheets) == ["Summary", "Empty"]
    assert sheets["Summary"]["pass"].iloc[0] == 3
