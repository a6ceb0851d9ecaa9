import json
import logging

import pytest

from src.formats.report import dumps, read_report
from src.utils.logging import setup_logger


def run(cli, test_data_dir, *argv):
    """Run the CLI writing its report and logs into the temporary directory."""
    out = test_data_dir / "report.json"
    code = cli.main([*argv, "--out", str(out), "--log-dir", str(test_data_dir / "logs")])
    return code, (read_report(out) if out.exists() else None)


def test_info(cli, test_data_dir, examples_dir):
    """Test the info report of the path algebra of 1 -> 2."""
    code, report = run(cli, test_data_dir, "info", str(examples_dir / "a2.alg"))
    assert code == 0
    assert report["schema"] == 1
    assert report["command"] == "info"
    results = report["results"]
    assert results["algebra"]["dim"] == 3
    assert results["global_dim"]["verdict"] == "finite:1"
    assert set(results["corners"]) == {"top", "bottom"}


def test_gproj_and_verify(cli, test_data_dir, examples_dir):
    """Test that a gproj report replays against its input file."""
    path = examples_dir / "dual_numbers.alg"
    code, report = run(cli, test_data_dir, "gproj", str(path), "--module", "S")
    assert code == 0
    assert report["results"]["gproj"]["verdict"] == "yes"
    assert report["results"]["gpd"]["verdict"] == "finite:0"
    stored = test_data_dir / "gproj.json"
    (test_data_dir / "report.json").rename(stored)
    code, replay = run(cli, test_data_dir, "verify", str(stored), str(path))
    assert code == 0
    assert replay["results"]["verified"]


def test_gproj_on_corner(cli, test_data_dir, examples_dir):
    """Test restriction of a module to a named corner."""
    code, report = run(cli, test_data_dir, "gproj", str(examples_dir / "selfinjective_corner.alg"), "--module", "S3",
                       "--corner", "b")
    assert code == 0
    assert report["results"]["corner"] == ["3", "4", "5"]
    assert report["results"]["gproj"]["verdict"] == "no"


def test_schur(cli, test_data_dir, examples_dir):
    """Test the schur report of cmfree_corner."""
    code, report = run(cli, test_data_dir, "schur", str(examples_dir / "cmfree_corner.alg"), "--idempotent", "e")
    assert code == 0
    assert report["results"]["corner_dim"] == 6
    assert report["results"]["conclusions"]["full_diagram"] == "holds"


@pytest.mark.slow
def test_trimat_split(cli, test_data_dir, examples_dir):
    """Test the trimat report of a split file."""
    code, report = run(cli, test_data_dir, "trimat", "--from", str(examples_dir / "cmfree_corner.alg"),
                       "--split", "2,3,4", "--oracle-samples", "2")
    assert code == 0
    results = report["results"]
    assert results["dims"] == {"T": 9, "A": 6, "M": 2, "B": 1}
    assert results["compatibility"]["verdict"] == "holds"
    assert results["oracle"]["samples"] == 2


def test_trimat_three_files(cli, test_data_dir, examples_dir):
    """Test the trimat report of A, B and M given as files."""
    point = str(examples_dir / "point.alg")
    code, report = run(cli, test_data_dir, "trimat", "--algebra-a", point, "--algebra-b", point,
                       "--bimodule", str(examples_dir / "point_bimodule.bim"), "--oracle-samples", "2")
    assert code == 0
    assert report["results"]["dims"]["T"] == 3
    assert report["results"]["vertices"] == {"A": ["Ao"], "B": ["Bo"]}
    assert len(report["input_sha256"]) == 64


def test_input_errors(cli, test_data_dir, examples_dir):
    """Test that bad input exits with code 1."""
    code, _ = run(cli, test_data_dir, "info", str(test_data_dir / "missing.alg"))
    assert code == 1
    code, _ = run(cli, test_data_dir, "trimat", "--from", str(examples_dir / "cmfree_corner.alg"))
    assert code == 1
    code, _ = run(cli, test_data_dir, "gproj", str(examples_dir / "a2.alg"), "--module", "Z")
    assert code == 1
    code, _ = run(cli, test_data_dir, "info", str(examples_dir / "a2.alg"), "--p", "100")
    assert code == 1


def test_bad_file_reports_position(cli, test_data_dir):
    """Test that a malformed algebra file exits with code 1."""
    path = test_data_dir / "bad.alg"
    path.write_text("[quiver]\nvertices = 1 2\narrow a 1 -> 2\n")
    code, report = run(cli, test_data_dir, "info", str(path))
    assert code == 1
    assert report is None


def test_dumps_is_sorted():
    """Test that reports serialize with sorted keys."""
    text = dumps({"b": 1, "a": {"d": 2, "c": 3}})
    assert text.index('"a"') < text.index('"b"')
    assert text.index('"c"') < text.index('"d"')
    assert json.loads(text) == {"a": {"c": 3, "d": 2}, "b": 1}


def test_setup_logger_writes_file(test_data_dir):
    """Test that the logger creates a log file in the given directory."""
    logger = setup_logger("test_cli_logger", log_dir=str(test_data_dir / "logs"), console_level=logging.ERROR)
    logger.info("hello")
    assert list((test_data_dir / "logs").glob("test_cli_logger_*.log"))
    assert setup_logger("test_cli_logger") is logger
