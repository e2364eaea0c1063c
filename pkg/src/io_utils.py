from __future__ import annotations

import json
import os
from typing import Any, Dict

import pandas as pd

from .logging_utils import setup_logger

logger = setup_logger(__name__)


def ensure_dir(path: str) -> None:
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory, exist_ok=True)


def read_text(path: str) -> str:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Input file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    logger.debug("Read %s (%d bytes)", path, len(text))
    return text


def write_text(text: str, path: str) -> None:
    ensure_dir(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.debug("Wrote %s (%d bytes)", path, len(text))


def write_csv(df: pd.DataFrame, path: str) -> None:
    ensure_dir(path)
    df.to_csv(path, index=False)
    logger.info("Wrote CSV: %s rows=%d cols=%d", path, len(df), df.shape[1])


def dumps_json(obj: Any) -> str:
    """Stable serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(obj: Any, path: str) -> None:
    write_text(dumps_json(obj), path)
    logger.info("Wrote JSON: %s", path)


def write_excel_with_tabs(tabs: Dict[str, pd.DataFrame], path: str) -> None:
    ensure_dir(path)
    with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
        for sheet_name, df in tabs.items():
            try:
                df.to_excel(writer, sheet_name=sheet_name, index=False)
            except Exception:
                # a broken tab becomes an empty sheet rather than aborting the workbook
                logger.warning("Could not write tab %s; leaving it empty", sheet_name)
                pd.DataFrame().to_excel(writer, sheet_name=sheet_name, index=False)
    logger.info("Wrote Excel workbook: %s (tabs: %s)", path, ", ".join(tabs))
