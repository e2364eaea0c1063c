from __future__ import annotations

import argparse
import os
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from .algebra import FiniteAlgebra
from .bci_props import classify, is_bci_def1, is_bci_thm1
from .errors import (
    ElementIndexError,
    FenyvesIndexError,
    InternalInconsistency,
    NotAutomorphism,
    NotAutomorphismGroup,
    NotBci,
    NotBooleanGroup,
    OrderTooLarge,
    TableParseError,
    UnsupportedIndex,
)
from .holomorph import build_holomorph, provenance
from .io_utils import dumps_json, ensure_dir, write_csv
from .logging_utils import setup_logger, set_level
from .models import EnumerationOptions, Parameters
from .morphisms import (
    AutomorphismGroup,
    Bijection,
    automorphism_group,
    boolean_automorphism_subgroups,
    is_automorphism,
    subgroup_generated,
)
from .observability import export_corpus, property_counts, snapshot_parameters, snapshot_report
from .reporting import (
    catalog_payload,
    check_payload,
    classification_payload,
    entry_failed,
    enumeration_payload,
    export_theorem_workbook,
    holomorph_entry,
    holomorph_payload,
    report_document,
    summary_lines,
)
from .search import corpus_sweep, enumerate_bci
from .table_loader import bundled_catalog, resolve_table_arg, save_table

# named explicitly: under `python -m src.cli` __name__ is "__main__"
logger = setup_logger("src.cli")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

USAGE_ERRORS = (
    TableParseError,
    FileNotFoundError,
    OrderTooLarge,
    NotAutomorphism,
    NotAutomorphismGroup,
    NotBooleanGroup,
    UnsupportedIndex,
    FenyvesIndexError,
    ElementIndexError,
)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--log-level", type=str, default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    p.add_argument("--quiet", action="store_true", help="Only log errors")
    p.add_argument("--report", type=str, default=None, help="Also write the JSON report to this path")
    p.add_argument("--max-order", type=int, default=12, help="Largest table order accepted")
    p.add_argument("--workers", type=int, default=1, help="Processes used by enumeration")


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common)

    p = argparse.ArgumentParser(description="BCI-algebra workbench")
    sub = p.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="Decide whether a table is a BCI-algebra")
    check.add_argument("table", help="Table file or bundled example name")

    cls = sub.add_parser("classify", parents=[common], help="Full property report for a BCI-algebra")
    cls.add_argument("table")

    holo = sub.add_parser("holomorph", parents=[common], help="Build A-holomorphs and check the transfer theorems")
    holo.add_argument("table")
    holo.add_argument("--subgroups", type=str, default="all",
                      help="'trivial', 'all', or automorphisms like 'swap(1,2)' / '0,2,1' separated by ';'")
    holo.add_argument("--emit-table", type=str, default=None, metavar="DIR",
                      help="Write each holomorph as a table file into DIR")

    enum = sub.add_parser("enumerate", parents=[common], help="Enumerate BCI-algebras of one order")
    enum.add_argument("order", type=int)
    enum.add_argument("--allow-slow", action="store_true", help="Permit orders above 4 (hard cap 6)")
    enum.add_argument("--require", action="append", default=None,
                      help="Predicate the algebras must satisfy (bck, p_semisimple, F42, ...); repeatable")
    enum.add_argument("--labeled", action="store_true", help="Keep every labeling instead of one per isomorphism class")
    enum.add_argument("--limit", type=int, default=None)
    enum.add_argument("--outdir", type=str, default=None, help="Export the corpus and manifest here")

    verify = sub.add_parser("verify-theorems", parents=[common], help="Run every theorem check over the corpus")
    verify.add_argument("--order-max", type=int, default=4)
    verify.add_argument("--allow-slow", action="store_true")
    verify.add_argument("--magma-sweep-order", type=int, default=2,
                        help="Order of the arbitrary-magma sweep for the groupoid form of the holomorph theorem")
    verify.add_argument("--lemma1-order-max", type=int, default=4)
    verify.add_argument("--holomorph-order-max", type=int, default=4)
    verify.add_argument("--outdir", type=str, default=None,
                        help="Directory to write a timestamped run with report, matrix CSV and workbook")

    sub.add_parser("catalog", parents=[common], help="List the sixty Fenyves identities")
    sub.add_parser("examples", parents=[common], help="List bundled example tables")
    return p


def _compute_run_dir(outdir: str) -> str:
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    base = outdir or "output/"
    run_dir = os.path.join(base, timestamp)
    ensure_dir(os.path.join(run_dir, "dummy"))
    return run_dir


def _params_from_args(args: argparse.Namespace) -> Parameters:
    defaults = Parameters()
    # a small --max-order pulls the other caps down with it
    params = Parameters(
        max_order=args.max_order,
        slow_order=max(1, min(defaults.slow_order, args.max_order)),
        hard_enumeration_cap=max(1, min(defaults.hard_enumeration_cap, args.max_order)),
        canonical_max_order=max(1, min(defaults.canonical_max_order, args.max_order)),
        workers=args.workers,
        allow_slow=bool(getattr(args, "allow_slow", False)),
    )
    for name in ("magma_sweep_order", "lemma1_order_max", "holomorph_order_max"):
        if hasattr(args, name):
            setattr(params, name, getattr(args, name))
    params.validate()
    return params


def _emit(document: Dict[str, Any], args: argparse.Namespace) -> None:
    sys.stdout.write(dumps_json(document))
    sys.stdout.flush()
    if args.report:
        snapshot_report(document, args.report)


# Subcommands -----------------------------------------------------------------------


def cmd_check(args: argparse.Namespace, params: Parameters) -> int:
    a = resolve_table_arg(args.table, params)
    def1 = is_bci_def1(a)
    thm1 = is_bci_thm1(a)
    _emit(report_document("check", check_payload(args.table, a, def1, thm1)), args)
    if def1.holds != thm1.holds:
        raise InternalInconsistency(f"BCI checkers disagree on {args.table}: {def1.holds} vs {thm1.holds}")
    if not def1.holds:
        logger.info("Not a BCI-algebra: %s fails at %s", def1.clause, def1.counterexample)
        return EXIT_FALSE
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, params: Parameters) -> int:
    a = resolve_table_arg(args.table, params)
    report = classify(a)
    _emit(report_document("classification", classification_payload(args.table, a, report)), args)
    return EXIT_OK


def _parse_bijection(token: str, n: int) -> Bijection:
    token = token.strip()
    if token.startswith("swap(") and token.endswith(")"):
        i, j = (int(v) for v in token[len("swap("):-1].split(","))
        return Bijection.swap(n, i, j)
    return Bijection(tuple(int(v) for v in token.replace(",", " ").split()))


def select_subgroups(a: FiniteAlgebra, selector: str) -> List[AutomorphismGroup]:
    if selector == "trivial":
        return [AutomorphismGroup((Bijection.identity(a.order),))]
    if selector == "all":
        return boolean_automorphism_subgroups(automorphism_group(a))
    tokens = [t for t in selector.strip().strip("[]").split(";") if t.strip()]
    generators = []
    for token in tokens:
        try:
            b = _parse_bijection(token, a.order)
        except (ValueError, IndexError) as exc:
            raise NotAutomorphism(f"cannot read {token!r} as a bijection: {exc}") from None
        if b.size != a.order or not is_automorphism(a, b):
            raise NotAutomorphism(f"{token.strip()} is not an automorphism of the input")
        generators.append(b)
    group = subgroup_generated(a.order, generators)
    group.require_boolean()
    return [group]


def cmd_holomorph(args: argparse.Namespace, params: Parameters) -> int:
    a = resolve_table_arg(args.table, params)
    if not is_bci_def1(a).holds:
        raise NotBci(f"{args.table} is not a BCI-algebra")
    entries = []
    failed = False
    for k, autos in enumerate(select_subgroups(a, args.subgroups)):
        entry = holomorph_entry(a, autos, k)
        failed = failed or entry_failed(entry)
        entries.append(entry)
        if args.emit_table:
            h = build_holomorph(a, autos)
            stem = Path(args.table).stem
            save_table(h.algebra, os.path.join(args.emit_table, f"{stem}_subgroup{k}.tbl"),
                       header_comments=provenance(h, base_name=stem))
    _emit(report_document("holomorph", holomorph_payload(args.table, a, entries)), args)
    return EXIT_FALSE if failed else EXIT_OK


def cmd_enumerate(args: argparse.Namespace, params: Parameters) -> int:
    opts = EnumerationOptions(
        order=args.order,
        require=frozenset(args.require or ()),
        up_to_isomorphism=not args.labeled,
        limit=args.limit,
        allow_slow=bool(args.allow_slow),
    )
    t0 = time.time()
    algebras = enumerate_bci(opts, params)
    elapsed = time.time() - t0
    counts = property_counts(algebras)
    if args.outdir:
        export_corpus(algebras, args.outdir, params)
    logger.info("Enumerated order=%d algebras=%d elapsed=%.2fs", args.order, len(algebras), elapsed)
    options = {"require": sorted(opts.require), "up_to_isomorphism": opts.up_to_isomorphism, "limit": opts.limit}
    _emit(report_document("enumeration", enumeration_payload(args.order, algebras, counts, options)), args)
    return EXIT_OK


def cmd_verify_theorems(args: argparse.Namespace, params: Parameters) -> int:
    t0 = time.time()
    matrix = corpus_sweep(args.order_max, params)
    elapsed = time.time() - t0
    document = report_document("theorem_matrix", matrix.to_dict())
    if args.outdir:
        run_dir = _compute_run_dir(args.outdir)
        snapshot_report(document, os.path.join(run_dir, "report.json"))
        write_csv(matrix.records_df(), os.path.join(run_dir, "matrix.csv"))
        export_theorem_workbook(matrix, params, os.path.join(run_dir, "theorem_matrix.xlsx"))
        snapshot_parameters(params, os.path.join(run_dir, "parameters.json"))
    for line in summary_lines(matrix):
        logger.info("%s", line)
    logger.info("Verified order_max=%d records=%d Time=%.2fs", args.order_max, len(matrix.records), elapsed)
    _emit(document, args)
    first = matrix.first_failure()
    if first is not None:
        logger.error("First failure: %s on %s (%s)", first.theorem, first.instance, first.detail)
        return EXIT_FALSE
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace, params: Parameters) -> int:
    _emit(report_document("catalog", catalog_payload()), args)
    return EXIT_OK


def cmd_examples(args: argparse.Namespace, params: Parameters) -> int:
    payload = {"tables": {name: entry.get("description", "") for name, entry in sorted(bundled_catalog().items())}}
    _emit(report_document("catalog", payload), args)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Parameters], int]] = {
    "check": cmd_check,
    "classify": cmd_classify,
    "holomorph": cmd_holomorph,
    "enumerate": cmd_enumerate,
    "verify-theorems": cmd_verify_theorems,
    "catalog": cmd_catalog,
    "examples": cmd_examples,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    set_level("ERROR" if args.quiet else args.log_level)
    try:
        params = _params_from_args(args)
    except AssertionError as exc:
        logger.error("Invalid parameters: %s", exc)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, params)
    except InternalInconsistency as exc:
        logger.error("Internal inconsistency: %s", exc)
        return EXIT_INTERNAL
    except NotBci as exc:
        logger.error("%s", exc)
        return EXIT_FALSE
    except USAGE_ERRORS as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except (ValueError, AssertionError) as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
