from __future__ import annotations

import dataclasses
from typing import Any, Dict, List, Sequence

import pandas as pd

from .algebra import FiniteAlgebra
from .bci_props import ClassificationReport
from .errors import NotBci
from .fenyves import FenyvesProfile, checklist_rows, fenyves_algebra_kinds
from .holomorph import (
    NOT_APPLICABLE,
    AgreementReport,
    supported_transfer_indices,
    verify_corollary1,
    verify_corollary2,
    verify_corollary4,
    verify_fenyves_transfer,
    verify_theorem9,
    verify_theorem10,
    verify_theorem11,
    verify_theorem12,
    verify_theorem13,
)
from .io_utils import write_excel_with_tabs
from .models import Parameters, PropertyWitness
from .morphisms import AutomorphismGroup
from .search import TheoremMatrix

SCHEMA_VERSION = 1
REPORT_KINDS = ("check", "classification", "holomorph", "theorem_matrix", "enumeration", "catalog")


def report_document(kind: str, payload: Dict[str, Any]) -> Dict[str, Any]:
    assert kind in REPORT_KINDS, f"unknown report kind {kind}"
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}


def table_payload(a: FiniteAlgebra) -> Dict[str, Any]:
    return {
        "order": a.order,
        "zero": a.zero,
        "labels": list(a.labels) if a.labels is not None else None,
        "table": [list(row) for row in a.table],
    }


def check_payload(source: str, a: FiniteAlgebra, def1: PropertyWitness, thm1: PropertyWitness) -> Dict[str, Any]:
    return {
        "source": source,
        "order": a.order,
        "bci": def1.holds,
        "checkers_agree": def1.holds == thm1.holds,
        "definition_checker": def1.to_dict(),
        "necessary_sufficient_checker": thm1.to_dict(),
    }


def classification_payload(source: str, a: FiniteAlgebra, report: ClassificationReport) -> Dict[str, Any]:
    payload = {"source": source, "algebra": table_payload(a)}
    payload.update(report.to_dict())
    profile = FenyvesProfile.from_hex(report.fenyves_hex)
    payload["fenyves"]["kinds"] = fenyves_algebra_kinds(profile)
    return payload


def _not_bci_entry(claim: str) -> Dict[str, Any]:
    return {"claim": claim, "status": NOT_APPLICABLE, "note": "holomorph is not BCI"}


def _guarded(claim: str, verify, *args) -> Dict[str, Any]:
    try:
        report: AgreementReport = verify(*args)
    except NotBci:
        return _not_bci_entry(claim)
    return report.to_dict()


def holomorph_entry(base: FiniteAlgebra, autos: AutomorphismGroup, index: int) -> Dict[str, Any]:
    """Every holomorph check for one subgroup; checks needing a BCI holomorph report n/a otherwise."""
    t9 = verify_theorem9(base, autos)
    entry: Dict[str, Any] = {
        "subgroup": index,
        "automorphisms": [list(b.image) for b in autos.elements],
        "holomorph_order": autos.size * base.order,
        "holomorph_bci": t9.left,
        "theorem9": t9.to_dict(),
        "theorem10": verify_theorem10(base, autos).to_dict(),
        "corollary1": verify_corollary1(base, autos).to_dict(),
        "corollary2": verify_corollary2(base, autos).to_dict(),
        "corollary4": verify_corollary4(base, autos).to_dict(),
        "theorem11": _guarded("theorem11", verify_theorem11, base, autos),
        "theorem12": _guarded("theorem12", verify_theorem12, base, autos),
        "theorem13": _guarded("theorem13", verify_theorem13, base, autos),
        "transfers": {
            f"F{i}": _guarded(f"F{i}", verify_fenyves_transfer, base, autos, i)
            for i in supported_transfer_indices()
        },
    }
    return entry


def entry_failed(entry: Dict[str, Any]) -> bool:
    statuses = [v.get("status") for k, v in entry.items() if isinstance(v, dict) and "status" in v]
    statuses.extend(v.get("status") for v in entry["transfers"].values())
    return "fail" in statuses


def holomorph_payload(source: str, base: FiniteAlgebra, entries: List[Dict[str, Any]]) -> Dict[str, Any]:
    return {"source": source, "base": table_payload(base), "subgroups": entries}


def enumeration_payload(order: int, algebras: Sequence[FiniteAlgebra], counts: Dict[str, int],
                        options: Dict[str, Any]) -> Dict[str, Any]:
    return {"order": order, "count": len(algebras), "property_counts": counts, "options": options}


def catalog_payload() -> Dict[str, Any]:
    return {"identities": checklist_rows()}


# Tabular views ---------------------------------------------------------------------


def build_parameters_df(params: Parameters) -> pd.DataFrame:
    data: Dict[str, Any] = dataclasses.asdict(params)
    rows = [{"Parameter": k, "Value": v} for k, v in data.items()]
    return pd.DataFrame(rows, columns=["Parameter", "Value"])


def build_witnesses_df(matrix: TheoremMatrix) -> pd.DataFrame:
    """Records that did not pass, with the detail that explains them."""
    df = matrix.records_df()
    if df.empty:
        return df
    return df[df["status"] != "pass"].reset_index(drop=True)


def export_theorem_workbook(matrix: TheoremMatrix, params: Parameters, path: str) -> None:
    write_excel_with_tabs(
        {
            "Summary": matrix.summary(),
            "Instances": matrix.records_df(),
            "Witnesses": build_witnesses_df(matrix),
            "Nonassociative": matrix.witnesses_df(),
            "Parameters": build_parameters_df(params),
        },
        path,
    )


def summary_lines(matrix: TheoremMatrix) -> List[str]:
    lines = []
    for row in matrix.summary().itertuples(index=False):
        lines.append(f"{row[0]:<20} pass={row[1]:<5} fail={row[2]:<5} n/a={row[3]}")
    if matrix.witnesses:
        found = [f"F{i}" for i, name in sorted(matrix.witnesses.items()) if name is not None]
        none = [f"F{i}" for i, name in sorted(matrix.witnesses.items()) if name is None]
        lines.append(f"non-associative witnesses found: {', '.join(found) or '-'}")
        lines.append(f"non-associative witnesses none at order<={matrix.order_max}: {', '.join(none) or '-'}")
    return lines

