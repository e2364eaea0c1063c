from __future__ import annotations

import os
from dataclasses import asdict
from typing import Any, Dict, List, Sequence

import pandas as pd

from .algebra import FiniteAlgebra
from .fenyves import fenyves_profile
from .io_utils import write_csv, write_json
from .logging_utils import setup_logger
from .models import DEFAULT_PARAMETERS, Parameters
from .search import canonical_form, resolve_predicate
from .table_loader import save_table

logger = setup_logger(__name__)

MANIFEST_COLUMNS = [
    "hash",
    "order",
    "bci",
    "bck",
    "p_semisimple",
    "associative",
    "quasigroup",
    "loop",
    "boolean_group",
    "quasi_associative",
    "fenyves_hex",
]
FLAG_COLUMNS = MANIFEST_COLUMNS[2:-1]


def manifest_row(a: FiniteAlgebra, params: Parameters = DEFAULT_PARAMETERS) -> Dict[str, Any]:
    row: Dict[str, Any] = {"hash": canonical_form(a, params).digest(), "order": a.order}
    for name in FLAG_COLUMNS:
        row[name] = bool(resolve_predicate(name)(a))
    row["fenyves_hex"] = fenyves_profile(a).to_hex()
    return row


def property_counts(algebras: Sequence[FiniteAlgebra]) -> Dict[str, int]:
    counts = {name: 0 for name in FLAG_COLUMNS}
    for a in algebras:
        for name in FLAG_COLUMNS:
            counts[name] += int(resolve_predicate(name)(a))
    return counts


def export_corpus(
    algebras: Sequence[FiniteAlgebra],
    outdir: str,
    params: Parameters = DEFAULT_PARAMETERS,
) -> pd.DataFrame:
    """Write each algebra as ``order_<n>/<hash>.tbl`` plus one ``manifest.csv`` per order."""
    by_order: Dict[int, List[Dict[str, Any]]] = {}
    for a in algebras:
        row = manifest_row(a, params)
        rows = by_order.setdefault(a.order, [])
        # labeled corpora repeat hashes
        repeats = sum(1 for r in rows if r["hash"] == row["hash"])
        stem = row["hash"] if repeats == 0 else f"{row['hash']}_{repeats}"
        order_dir = os.path.join(outdir, f"order_{a.order}")
        save_table(a, os.path.join(order_dir, f"{stem}.tbl"),
                   header_comments=[f"canonical hash {row['hash']}"])
        rows.append(row)
    frames = []
    for order, rows in sorted(by_order.items()):
        df = pd.DataFrame(rows, columns=MANIFEST_COLUMNS)
        write_csv(df, os.path.join(outdir, f"order_{order}", "manifest.csv"))
        frames.append(df)
    manifest = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=MANIFEST_COLUMNS)
    logger.info("Exported corpus: %s algebras=%d", outdir, len(manifest))
    return manifest


def snapshot_report(document: Dict[str, Any], path: str) -> None:
    write_json(document, path)


def snapshot_parameters(params: Parameters, path: str) -> None:
    write_json(asdict(params), path)

