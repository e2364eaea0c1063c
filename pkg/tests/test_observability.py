import json
import os

import pandas as pd

from src.algebra import chain_algebra, cyclic_difference
from src.models import EnumerationOptions, Parameters
from src.observability import (
    MANIFEST_COLUMNS,
    export_corpus,
    manifest_row,
    property_counts,
    snapshot_parameters,
    snapshot_report,
)
from src.search import enumerate_bci
from src.table_loader import load_table


def test_manifest_row():
    row = manifest_row(chain_algebra(2))
    assert list(row) == MANIFEST_COLUMNS
    assert row["order"] == 2
    assert row["bci"] and row["bck"]
    assert not row["associative"]
    assert len(row["fenyves_hex"]) == 15


def test_property_counts():
    algebras = enumerate_bci(EnumerationOptions(order=3))
    counts = property_counts(algebras)
    assert counts["bci"] == 5
    assert counts["bck"] == 3
    assert counts["p_semisimple"] == 1


def test_export_corpus(tmp_path):
    algebras = enumerate_bci(EnumerationOptions(order=2)) + [cyclic_difference(3)]
    manifest = export_corpus(algebras, str(tmp_path))
    assert len(manifest) == 3
    assert sorted(os.listdir(tmp_path)) == ["order_2", "order_3"]
    order2 = pd.read_csv(tmp_path / "order_2" / "manifest.csv")
    assert list(order2.columns) == MANIFEST_COLUMNS
    assert len(order2) == 2
    for digest in order2["hash"]:
        loaded = load_table(str(tmp_path / "order_2" / f"{digest}.tbl"))
        assert loaded.order == 2


def test_export_labeled_corpus_keeps_every_table(tmp_path):
    labeled = enumerate_bci(EnumerationOptions(order=3, up_to_isomorphism=False))
    export_corpus(labeled, str(tmp_path))
    files = [f for f in os.listdir(tmp_path / "order_3") if f.endswith(".tbl")]
    assert len(files) == 8


def test_snapshots(tmp_path):
    snapshot_report({"kind": "check"}, str(tmp_path / "report.json"))
    snapshot_parameters(Parameters(workers=2), str(tmp_path / "params.json"))
    assert json.loads((tmp_path / "report.json").read_text()) == {"kind": "check"}
    params = json.loads((tmp_path / "params.json").read_text())
    assert params["workers"] == 2
    assert params["max_order"] == 12
