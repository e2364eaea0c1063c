import json
import logging
import os
import subprocess
import sys

from src import cli
from src.cli import EXIT_FALSE, EXIT_OK, EXIT_USAGE, main

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


def write_table(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def read_report(capsys):
    return json.loads(capsys.readouterr().out)


def test_check_accepts_bci(capsys):
    assert main(["check", "chain2"]) == EXIT_OK
    doc = read_report(capsys)
    assert doc["kind"] == "check"
    assert doc["payload"]["bci"] is True


def test_check_rejects_constant_zero(constant_zero_table, capsys):
    assert main(["check", constant_zero_table]) == EXIT_FALSE
    payload = read_report(capsys)["payload"]
    assert payload["bci"] is False
    assert payload["checkers_agree"] is True
    assert payload["necessary_sufficient_checker"]["counterexample"] == [0, 1]


def test_check_malformed_and_missing(tmp_path):
    path = write_table(tmp_path, "short.tbl", "2\n0\n0 0\n1\n")
    assert main(["check", path]) == EXIT_USAGE
    assert main(["check", str(tmp_path / "absent.tbl")]) == EXIT_USAGE
    too_big = write_table(tmp_path, "big.tbl", "3\n0\n0 0 0\n1 0 0\n2 1 0\n")
    assert main(["check", too_big, "--max-order", "2"]) == EXIT_USAGE


def test_report_flag_writes_file(tmp_path, capsys):
    report = tmp_path / "out" / "check.json"
    assert main(["check", "powerset2", "--report", str(report)]) == EXIT_OK
    assert json.loads(report.read_text()) == read_report(capsys)


def test_classify(constant_zero_table, capsys):
    assert main(["classify", "z2"]) == EXIT_OK
    payload = read_report(capsys)["payload"]
    assert payload["properties"]["associative"] is True
    assert payload["properties"]["boolean_group"] is True
    assert payload["fenyves"]["hex"] == "f" * 15

    assert main(["classify", constant_zero_table]) == EXIT_FALSE


def test_holomorph_all_subgroups(capsys):
    assert main(["holomorph", "z3"]) == EXIT_OK
    payload = read_report(capsys)["payload"]
    trivial, negation = payload["subgroups"]
    assert trivial["holomorph_bci"] is True
    assert negation["holomorph_bci"] is False
    assert negation["theorem9"]["details"]["theorem9_condition"]["counterexample"] == [0, 0, 1, 0, 1]
    assert negation["theorem11"]["status"] == "n/a"


def test_holomorph_selectors(tmp_path):
    assert main(["holomorph", "chain2", "--subgroups", "swap(0,1)"]) == EXIT_USAGE
    assert main(["holomorph", "klein", "--subgroups", "0,2,1,3;0,1,3,2"]) == EXIT_USAGE
    assert main(["holomorph", "klein", "--subgroups", "0,2,1,3"]) == EXIT_OK
    assert main(["holomorph", "z3", "--subgroups", "swap(0,9)"]) == EXIT_USAGE

    outdir = tmp_path / "holo"
    assert main(["holomorph", "z3", "--subgroups", "trivial", "--emit-table", str(outdir)]) == EXIT_OK
    text = (outdir / "z3_subgroup0.tbl").read_text()
    assert text.startswith("# holomorph of z3 (order 3)")


def test_holomorph_requires_bci(constant_zero_table):
    assert main(["holomorph", constant_zero_table]) == EXIT_FALSE


def test_enumerate(tmp_path, capsys):
    outdir = tmp_path / "corpus"
    assert main(["enumerate", "3", "--outdir", str(outdir)]) == EXIT_OK
    payload = read_report(capsys)["payload"]
    assert payload["count"] == 5
    assert payload["property_counts"]["bck"] == 3
    assert (outdir / "order_3" / "manifest.csv").exists()

    assert main(["enumerate", "3", "--require", "bck", "--require", "F54"]) == EXIT_OK
    assert read_report(capsys)["payload"]["count"] == 3
    assert main(["enumerate", "3", "--labeled"]) == EXIT_OK
    assert read_report(capsys)["payload"]["count"] == 8


def test_enumerate_rejects_large_or_unknown():
    assert main(["enumerate", "7"]) == EXIT_USAGE
    assert main(["enumerate", "5"]) == EXIT_USAGE
    assert main(["enumerate", "3", "--require", "nonsense"]) == EXIT_USAGE
    assert main(["enumerate", "3", "--workers", "0"]) == EXIT_USAGE


def test_verify_theorems_writes_run_dir(tmp_path, capsys):
    outdir = tmp_path / "runs"
    assert main(["verify-theorems", "--order-max", "2", "--outdir", str(outdir)]) == EXIT_OK
    doc = read_report(capsys)
    assert doc["kind"] == "theorem_matrix"
    assert doc["payload"]["ok"] is True
    partition = doc["payload"]["nonassociative_witnesses"]
    assert len(partition) == 14
    assert partition["F54"] is not None
    entries = os.listdir(outdir)
    assert len(entries) == 1
    run_dir = outdir / entries[0]
    for name in ("report.json", "matrix.csv", "theorem_matrix.xlsx", "parameters.json"):
        assert (run_dir / name).exists(), name


def test_verify_theorems_order_gate():
    assert main(["verify-theorems", "--order-max", "12"]) == EXIT_USAGE
    assert main(["verify-theorems", "--order-max", "5"]) == EXIT_USAGE


def test_catalog_and_examples(capsys):
    assert main(["catalog"]) == EXIT_OK
    assert len(read_report(capsys)["payload"]["identities"]) == 60
    assert main(["examples", "--quiet"]) == EXIT_OK
    tables = read_report(capsys)["payload"]["tables"]
    assert "klein" in tables


def test_cli_logger_follows_level_flags(capsys):
    assert cli.logger.name == "src.cli"
    assert main(["enumerate", "2", "--quiet"]) == EXIT_OK
    assert cli.logger.level == logging.ERROR
    assert main(["enumerate", "2", "--log-level", "WARNING"]) == EXIT_OK
    assert cli.logger.level == logging.WARNING
    assert main(["enumerate", "2"]) == EXIT_OK
    assert cli.logger.level == logging.INFO
    capsys.readouterr()


def test_module_entry_point_honours_quiet():
    for flags in (["--quiet"], ["--log-level", "WARNING"]):
        result = subprocess.run(
            [sys.executable, "-m", "src.cli", "enumerate", "2", *flags],
            cwd=PROJECT_ROOT,
            capture_output=True,
            text=True,
            check=False,
        )
        assert result.returncode == EXIT_OK, result.stderr
        assert "| INFO |" not in result.stderr
        assert json.loads(result.stdout)["payload"]["count"] == 2

    loud = subprocess.run(
        [sys.executable, "-m", "src.cli", "enumerate", "2"],
        cwd=PROJECT_ROOT,
        capture_output=True,
        text=True,
        check=False,
    )
    assert "| INFO | src.cli | Enumerated order=2" in loud.stderr
