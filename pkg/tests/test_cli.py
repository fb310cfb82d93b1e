"""Unit tests for the command-line entry point, moment-problem files and report rendering."""

import json
import logging
from pathlib import Path

import pytest

from src.cli.moment_problem import ingest_moment_problem
from src.cli.report import ReportWriter, render, render_json, render_tsv
from src.cumulants.functional import GenericFunctional, TabulatedFunctional
from src.main_cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, EXIT_USAGE, main, parse_range


@pytest.fixture(autouse=True)
def isolated_run(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Path:
    """Use to run every command in a scratch folder without saving results."""
    monkeypatch.setenv("EXECUTION_ENV", "test")
    monkeypatch.delenv("SI_MAX_N", raising=False)
    monkeypatch.delenv("SI_SEED", raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def logger() -> logging.Logger:
    """Use to provide a test logger."""
    return logging.getLogger("test")


def write_problem(path: Path, **fields: object) -> Path:
    """Use to write a moment-problem file with sensible defaults."""
    problem = {
        "domain": "rational",
        "alphabet": ["x"],
        "weight": "ind:interval",
        "max_order": 4,
        "moments": [{"word": "x", "value": "0"}, {"word": "xx", "value": "1"},
                    {"word": "xxx", "value": "0"}, {"word": "xxxx", "value": "2"}],
    }
    problem.update(fields)
    problem = {key: value for key, value in problem.items() if value is not None}
    path.write_text(json.dumps(problem), encoding="utf-8")
    return path


def test_parse_range() -> None:
	"""Use to test sizes and ranges on the command line."""
	assert parse_range("5") == [5]
	assert parse_range("1..3") == [1, 2, 3]
	with pytest.raises(ValueError, match="Empty range"):
		parse_range("3..1")
	with pytest.raises(ValueError, match="Expected a size"):
		parse_range("a..b")


def test_families_count_command(capsys: pytest.CaptureFixture) -> None:
	"""Use to test the almost-interval counts against the odd Fibonacci numbers."""
	assert main(["families", "count", "--family", "almost-interval", "--n", "1..6", "--check-closed-form"]) == EXIT_OK
	payload = json.loads(capsys.readouterr().out)
	assert [row["count"] for row in payload["rows"]] == [1, 2, 5, 13, 34, 89]
	assert payload["matches_closed_form"]


def test_moebius_command_as_tsv(capsys: pytest.CaptureFixture) -> None:
	"""Use to test the tab-separated Möbius row."""
	assert main(["--format", "tsv", "poset", "moebius", "--family", "almost-interval", "--n", "1..6"]) == EXIT_OK
	lines = capsys.readouterr().out.splitlines()
	assert lines[0] == "n\tmoebius"
	assert [line.split("\t")[1] for line in lines[1:]] == ["1", "-1", "2", "-4", "8", "-16"]


def test_failed_check_exits_with_one(capsys: pytest.CaptureFixture) -> None:
	"""Use to test that a failed singleton-inductive check still prints its witness."""
	assert main(["poset", "si-check", "--weight", "monotone", "--n-max", "4"]) == EXIT_FAILED
	payload = json.loads(capsys.readouterr().out)
	assert payload["witness"]["image"] == "1,3/2"
	assert main(["poset", "si-check", "--family", "nc", "--n-max", "4"]) == EXIT_OK


def test_hasse_command_prints_dot(capsys: pytest.CaptureFixture) -> None:
	"""Use to test the DOT output of the Hasse diagram."""
	assert main(["poset", "hasse", "--family", "ci", "--n", "3", "--dot"]) == EXIT_OK
	out = capsys.readouterr().out
	assert out.startswith("digraph")
	assert "rankdir=BT" in out


def test_weights_and_pair_queries(capsys: pytest.CaptureFixture) -> None:
	"""Use to test weight evaluation and joins on the command line."""
	assert main(["weights", "eval", "--weight", "modified-monotone", "--partition", "1,3/2"]) == EXIT_OK
	assert json.loads(capsys.readouterr().out)["value"] == "1"
	assert main(["poset", "join", "--family", "interval", "--left", "1,2/3/4", "--right", "1/2/3,4"]) == EXIT_OK
	assert json.loads(capsys.readouterr().out)["join"] == "1,2/3,4"


def test_usage_errors(capsys: pytest.CaptureFixture) -> None:
	"""Use to test exit code 2 for unknown names, caps and missing files."""
	assert main(["families", "enumerate", "--family", "dyck", "--n", "3"]) == EXIT_USAGE
	assert "Unknown family" in capsys.readouterr().err
	assert main(["--max-n", "4", "families", "enumerate", "--family", "all", "--n", "5"]) == EXIT_USAGE
	assert "enumeration cap" in capsys.readouterr().err
	assert main(["cumulants", "solve", "missing.json"]) == EXIT_USAGE
	assert main(["--format", "tsv", "weights", "eval", "--weight", "monotone", "--partition", "1,2"]) == EXIT_USAGE
	with pytest.raises(SystemExit) as exit_info:
		main(["families"])
	assert exit_info.value.code == EXIT_USAGE


def test_cumulants_solve_command(isolated_run: Path, capsys: pytest.CaptureFixture) -> None:
	"""Use to test boolean cumulants by recursion and free cumulants by Möbius inversion."""
	path = write_problem(isolated_run / "problem.json")
	assert main(["cumulants", "solve", str(path)]) == EXIT_OK
	entries = {e["word"]: e["value"] for e in json.loads(capsys.readouterr().out)["entries"]}
	assert entries["xx"] == "1"
	assert entries["xxxx"] == "1"
	assert main(["cumulants", "solve", str(path), "--family", "nc"]) == EXIT_OK
	payload = json.loads(capsys.readouterr().out)
	assert payload["weight"] == "ind:nc"
	assert {e["word"]: e["value"] for e in payload["entries"]}["xxxx"] == "0"


def test_verify_paper_writes_report(isolated_run: Path) -> None:
	"""Use to test a selected acceptance check written to an explicit path."""
	out = isolated_run / "reports" / "report.json"
	code = main(["--max-n", "6", "--out", str(out), "verify-paper", "--only", "moebius-almost-interval"])
	assert code == EXIT_OK
	report = json.loads(out.read_text(encoding="utf-8"))
	assert report["passed"]
	assert report["max_n"] == 6
	assert [c["name"] for c in report["checks"]] == ["moebius-almost-interval"]
	assert report["checks"][0]["computed"] == "1 -1 2 -4 8 -16"
	assert main(["verify-paper", "--only", "no-such-check"]) == EXIT_USAGE


def test_verify_paper_weisner_and_si_checks(isolated_run: Path) -> None:
	"""Use to test the σ = 1_n Weisner reductions and the pinned singleton-inductive witnesses in a report."""
	out = isolated_run / "weisner_si.json"
	assert main(["--max-n", "5", "--out", str(out), "verify-paper", "--only", "weisner", "si"]) == EXIT_OK
	checks = {c["name"]: c for c in json.loads(out.read_text(encoding="utf-8"))["checks"]}
	assert set(checks) == {"weisner-interval", "weisner-cyclic-interval", "weisner-almost-interval", "si"}
	assert all(c["passed"] for c in checks.values())
	cyclic = checks["weisner-cyclic-interval"]["computed"]["4"]
	assert (cyclic["total"], cyclic["top"], cyclic["below_top"]) == (0, -3, 3)
	assert checks["weisner-almost-interval"]["computed"]["5"]["contributors"] == 3
	computed = checks["si"]["computed"]
	assert computed["monotone witness"] == "1,3/2 1/2 1"
	assert computed["ind:interval witness"] == "1,3/2 0 1"
	assert computed["ind:cyclic-interval witness"] == "1/2,4/3 0 1"
	assert computed["ind:cyclic-interval"] is False


def test_unexpected_errors_are_told_apart_from_failed_checks(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture) -> None:
	"""Use to test that an unexpected exception exits with its own code instead of the failed-check code."""
	def broken_render(*_args: object) -> str:
		error = "disk full"
		raise OSError(error)

	monkeypatch.setattr("src.main_cli.render", broken_render)
	code = main(["families", "count", "--family", "nc", "--n", "3"])
	assert code == EXIT_ERROR
	assert code != EXIT_FAILED
	assert capsys.readouterr().out == ""


def test_ingest_moment_problems(isolated_run: Path, logger: logging.Logger) -> None:
	"""Use to test the tabulated and generic readings of a moment-problem file."""
	problem = ingest_moment_problem(write_problem(isolated_run / "p.json"), logger)
	assert isinstance(problem.functional, TabulatedFunctional)
	assert problem.weight.name == "ind:interval"
	assert problem.max_order == 4
	generic = ingest_moment_problem(write_problem(isolated_run / "g.json", domain="poly", moments=None), logger)
	assert isinstance(generic.functional, GenericFunctional)


@pytest.mark.parametrize(("fields", "message"), [
	({"moments": [{"word": "xz", "value": "1"}]}, "Unknown symbol"),
	({"max_order": 5}, "no moment given"),
	({"domain": "complex"}, "field 'domain'"),
	({"weight": "dyck"}, "field 'weight'"),
	({"max_order": 0}, "must be positive"),
	({"alphabet": []}, "nonempty list"),
])
def test_ingest_rejects_bad_problems(isolated_run: Path, logger: logging.Logger, fields: dict, message: str) -> None:
	"""Use to test that malformed files raise ValueError naming the file."""
	path = write_problem(isolated_run / "bad.json", **fields)
	with pytest.raises(ValueError, match=message):
		ingest_moment_problem(path, logger)


def test_ingest_missing_file(isolated_run: Path, logger: logging.Logger) -> None:
	"""Use to test the missing-file error."""
	with pytest.raises(FileNotFoundError, match="not found"):
		ingest_moment_problem(isolated_run / "nothing.json", logger)


def test_render_formats() -> None:
	"""Use to test deterministic JSON, TSV tables and the format checks."""
	assert render_json({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'
	assert render_tsv([{"n": 1, "count": 1}, {"n": 2, "count": 2}]) == "n\tcount\n1\t1\n2\t2\n"
	assert render_tsv([]) == ""
	with pytest.raises(ValueError, match="no tabular output"):
		render({}, "tsv")
	with pytest.raises(ValueError, match="Only Hasse"):
		render({}, "dot")
	with pytest.raises(ValueError, match="Unknown format"):
		render({}, "xml")


def test_report_writer_saves_locally(isolated_run: Path, logger: logging.Logger) -> None:
	"""Use to test the local report layout and the unknown-environment fallback."""
	writer = ReportWriter(logger, "local", str(isolated_run / "bucket"))
	metadata = ReportWriter.metadata("job", "20240101T000000Z", "local", "verify-paper")
	saved = Path(writer.save("si_cumulants/verify_paper", "job", "{}\n", metadata))
	assert saved == isolated_run / "bucket" / "si_cumulants" / "verify_paper" / "job" / "report.json"
	assert saved.read_text(encoding="utf-8") == "{}\n"
	assert json.loads((saved.parent / "metadata.json").read_text(encoding="utf-8"))["job_id"] == "job"
	assert ReportWriter(logger, "test", None).save("folder", "job", "{}\n", metadata) is None
