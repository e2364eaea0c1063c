"""Reading and writing Cayley tables in the plain-text table format.

    # optional comments, anywhere
    # labels: 0 a b ab
    4          <- order n
    0          <- index of the zero
    0 0 0 0    <- n rows of n entries
    ...

Parsed algebras are normalized so the zero sits at index 0.
"""
from __future__ import annotations

import os
import re
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

from .algebra import FiniteAlgebra, normalize_zero
from .errors import OrderTooLarge, TableParseError
from .io_utils import read_text, write_text
from .logging_utils import setup_logger
from .models import DEFAULT_PARAMETERS, Parameters

logger = setup_logger(__name__)

TABLES_DIR = Path(__file__).with_name("tables")
CATALOG_FILE = TABLES_DIR / "catalog.yaml"
LABELS_PREFIX = "labels:"


def _parse_int(token: str, line: int, column: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise TableParseError(f"expected an integer, got {token!r}", line=line, column=column) from None


def _tokens(text: str) -> List[Tuple[int, str]]:
    """(column, token) for each whitespace-separated token; columns are 1-based."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", text)]


def parse_table(text: str, params: Parameters = DEFAULT_PARAMETERS) -> FiniteAlgebra:
    labels: Optional[List[str]] = None
    content: List[Tuple[int, List[Tuple[int, str]]]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.lower().startswith(LABELS_PREFIX):
                labels = body[len(LABELS_PREFIX):].split()
            continue
        content.append((number, _tokens(raw)))

    if len(content) < 2:
        raise TableParseError("a table needs an order line and a zero line", line=len(text.splitlines()) or 1)
    (n_line, n_tokens), (z_line, z_tokens) = content[0], content[1]
    for line, tokens in ((n_line, n_tokens), (z_line, z_tokens)):
        if len(tokens) != 1:
            raise TableParseError("expected a single integer", line=line, column=tokens[1][0])
    n = _parse_int(n_tokens[0][1], n_line, n_tokens[0][0])
    if n < 1:
        raise TableParseError(f"order must be >= 1, got {n}", line=n_line, column=n_tokens[0][0])
    if n > params.max_order:
        raise OrderTooLarge(f"order {n} exceeds the configured maximum of {params.max_order}")
    zero = _parse_int(z_tokens[0][1], z_line, z_tokens[0][0])
    if not 0 <= zero < n:
        raise TableParseError(f"zero {zero} is outside [0, {n})", line=z_line, column=z_tokens[0][0])

    rows_part = content[2:]
    if len(rows_part) != n:
        line = rows_part[n][0] if len(rows_part) > n else (rows_part[-1][0] if rows_part else z_line) + 1
        raise TableParseError(f"expected {n} table rows, found {len(rows_part)}", line=line, column=1)
    rows = []
    for line, tokens in rows_part:
        if len(tokens) != n:
            column = tokens[n][0] if len(tokens) > n else (tokens[-1][0] + len(tokens[-1][1]) if tokens else 1)
            raise TableParseError(f"expected {n} entries, found {len(tokens)}", line=line, column=column)
        row = []
        for column, token in tokens:
            value = _parse_int(token, line, column)
            if not 0 <= value < n:
                raise TableParseError(f"entry {value} is outside [0, {n})", line=line, column=column)
            row.append(value)
        rows.append(tuple(row))

    if labels is not None and len(labels) != n:
        raise TableParseError(f"labels comment lists {len(labels)} names for {n} elements")
    algebra = FiniteAlgebra(table=tuple(rows), zero=zero, labels=tuple(labels) if labels else None)
    return normalize_zero(algebra)


def load_table(path: str, params: Parameters = DEFAULT_PARAMETERS) -> FiniteAlgebra:
    algebra = parse_table(read_text(path), params)
    logger.info("Loaded table %s order=%d", path, algebra.order)
    return algebra


def format_table(a: FiniteAlgebra, header_comments: Sequence[str] = ()) -> str:
    width = len(str(a.order - 1))
    lines = [f"# {comment}" for comment in header_comments]
    if a.labels is not None:
        lines.append("# labels: " + " ".join(label.replace(" ", "") for label in a.labels))
    lines.append(str(a.order))
    lines.append(str(a.zero))
    for row in a.table:
        lines.append(" ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def save_table(a: FiniteAlgebra, path: str, header_comments: Sequence[str] = ()) -> None:
    write_text(format_table(a, header_comments), path)
    logger.info("Wrote table %s order=%d", path, a.order)


# Bundled examples ------------------------------------------------------------------


def bundled_catalog() -> Dict[str, Dict[str, str]]:
    with open(CATALOG_FILE, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    return {str(name): dict(entry) for name, entry in raw.get("tables", {}).items()}


def bundled_table_path(name: str) -> str:
    catalog = bundled_catalog()
    if name not in catalog:
        raise KeyError(f"no bundled table named {name!r}; known: {', '.join(sorted(catalog))}")
    return str(TABLES_DIR / catalog[name]["file"])


def load_bundled(name: str, params: Parameters = DEFAULT_PARAMETERS) -> FiniteAlgebra:
    return load_table(bundled_table_path(name), params)


def resolve_table_arg(arg: str, params: Parameters = DEFAULT_PARAMETERS) -> FiniteAlgebra:
    """A table path, or the name of a bundled example such as ``z3``."""
    if os.path.exists(arg):
        return load_table(arg, params)
    if arg in bundled_catalog():
        return load_bundled(arg, params)
    raise FileNotFoundError(f"{arg} is neither a table file nor a bundled example name")
