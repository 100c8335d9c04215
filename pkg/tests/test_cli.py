# tests/test_cli.py
import csv
import io
import json

import pytest

from kummer_chow_verifier import cli
from kummer_chow_verifier.config import RunSettings


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_parser_defaults():
    args = cli.build_parser().parse_args(["rank"])
    settings = cli.settings_from_args(args)
    assert settings == RunSettings()
    assert settings.mode == "table"


def test_invalid_tolerance_is_a_usage_error(capsys):
    code, out = run(capsys, "periods", "--tol-quadrature", "0.5")
    assert code == cli.EXIT_USAGE
    assert out == ""


def test_invalid_points_is_a_usage_error(capsys):
    code, _ = run(capsys, "periods", "--points", "0")
    assert code == cli.EXIT_USAGE


def test_unknown_command_exits_with_usage():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["plot"])
    assert excinfo.value.code == 2


def test_rank_canonical_report(capsys):
    code, out = run(capsys, "rank", "--mode", "canonical", "--deterministic", "--quiet")
    report = json.loads(out)
    assert code == cli.EXIT_OK
    assert report["command"] == "rank"
    assert report["health"] == "healthy"
    assert "wall_time" not in report
    assert [c["status"] for c in report["checks"]] == ["pass"]
    assert len(report["table"]) == 3


def test_deterministic_reports_are_identical(capsys):
    _, first = run(capsys, "rank", "--mode", "canonical", "--deterministic", "--quiet")
    _, second = run(capsys, "rank", "--mode", "canonical", "--deterministic", "--quiet")
    assert first == second


def test_rank_table_csv(capsys, tmp_path):
    out = tmp_path / "table.csv"
    code, stdout = run(capsys, "rank", "--format", "csv", "--out", str(out), "--quiet")
    assert code == cli.EXIT_OK
    assert stdout == ""
    rows = list(csv.DictReader(io.StringIO(out.read_text(encoding="utf-8"))))
    assert len(rows) == 18
    assert list(rows[0]) == cli.CSV_TABLE_COLUMNS


@pytest.mark.slow
def test_corrupted_table_fails(capsys):
    code, out = run(capsys, "groups", "--corrupt-table", "--samples", "5", "--deterministic", "--quiet")
    report = json.loads(out)
    assert code == cli.EXIT_FAILED
    failing = [c for c in report["checks"] if c["status"] != "pass"]
    assert failing and failing[0]["name"] == "sigma_table"
    assert failing[0]["witness"]


@pytest.mark.slow
def test_cocycles_with_one_sample(capsys):
    code, out = run(capsys, "cocycles", "--samples", "1", "--deterministic", "--quiet")
    assert code == cli.EXIT_OK
    assert json.loads(out)["parameters"]["samples"] == 1
