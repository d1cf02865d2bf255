import json

import pytest

from conftest import GOLDEN
from src.backend.commands import EXIT_ERROR, EXIT_OK, EXIT_WARNINGS, main
from src.backend.frontend import read_records
from src.backend.statsdb import load_db

DB = str(GOLDEN / "golden.statsdb")


def _results(path):
    return json.loads(path.read_text(encoding="utf-8"))["runs"][0]["results"]


def test_check_reports_swaps(tmp_path):
    out = tmp_path / "report.sarif"
    assert main(["check", str(GOLDEN / "listing1"), "--db", DB, "--out", str(out)]) == EXIT_WARNINGS
    [result] = _results(out)
    assert result["ruleId"] == "swap.cover"
    assert result["locations"][0]["physicalLocation"]["artifactLocation"]["uri"].endswith("listing1/xvile.c")


def test_check_clean_sources(tmp_path):
    out = tmp_path / "report.sarif"
    assert main(["check", str(GOLDEN / "listing3"), "--db", DB, "--out", str(out)]) == EXIT_OK
    assert _results(out) == []


def test_check_writes_to_stdout(capsys):
    assert main(["check", str(GOLDEN / "listing9" / "draw.c"), str(GOLDEN / "listing9" / "gl.h")]) == EXIT_WARNINGS
    report = json.loads(capsys.readouterr().out)
    assert report["version"] == "2.1.0"
    assert len(report["runs"][0]["results"]) == 1


def test_check_records(tmp_path):
    out = tmp_path / "report.sarif"
    code = main(["check", "--records", str(GOLDEN / "records.jsonl"), "--db", DB, "--out", str(out)])
    assert code == EXIT_WARNINGS
    assert [r["ruleId"] for r in _results(out)] == ["swap.cover", "swap.statistical", "swap.cover", "swap.cover"]


def test_check_stages_and_thresholds(tmp_path):
    out = tmp_path / "report.sarif"
    assert main(["check", str(GOLDEN / "listing2"), "--db", DB, "--stages", "3", "--out", str(out)]) == EXIT_WARNINGS
    assert [r["ruleId"] for r in _results(out)] == ["swap.statistical"]
    driver = json.loads(out.read_text(encoding="utf-8"))["runs"][0]["tool"]["driver"]
    assert driver["properties"]["stages"] == "3"
    assert main(["check", str(GOLDEN / "listing1"), "--db", DB, "--alpha2", "1.0", "--stages", "124",
                 "--out", str(out)]) == EXIT_OK


def test_check_synonyms(tmp_path):
    out = tmp_path / "report.sarif"
    args = ["check", str(GOLDEN / "listing10"), "--db", DB, "--out", str(out)]
    assert main(args) == EXIT_OK
    assert main(args + ["--synonyms", str(GOLDEN / "synonyms.txt")]) == EXIT_WARNINGS


def test_check_include_suppressed(tmp_path):
    out = tmp_path / "report.sarif"
    args = ["check", str(GOLDEN / "listing7"), "--db", DB, "--out", str(out), "--include-suppressed"]
    assert main(args) == EXIT_OK
    [result] = _results(out)
    assert result["suppressions"][0]["kind"] == "external"


def test_check_disable_filter(tmp_path):
    out = tmp_path / "report.sarif"
    args = ["check", str(GOLDEN / "listing7"), "--db", DB, "--out", str(out), "--disable-filter", "whitelist-words"]
    assert main(args) == EXIT_WARNINGS


def test_check_without_database_warns(tmp_path, caplog):
    out = tmp_path / "report.sarif"
    assert main(["check", str(GOLDEN / "listing2"), "--out", str(out)]) == EXIT_OK
    assert "No statistics database" in caplog.text


@pytest.mark.parametrize("argv", [
    ["check", "does/not/exist.c"],
    ["check"],
    ["check", str(GOLDEN / "listing1"), "--stages", "5"],
    ["check", str(GOLDEN / "listing1"), "--db", str(GOLDEN / "synonyms.txt")],
    ["check", "--records", str(GOLDEN / "golden.statsdb")],
    ["build-db", "does/not/exist"],
    ["check", str(GOLDEN / "listing1"), "--alpha1", "0.9", "--alpha2", "0.8"],
])
def test_errors_exit_with_two(argv, caplog):
    assert main(argv) == EXIT_ERROR
    assert "failed" in caplog.text


def test_unknown_filter_is_a_usage_error():
    with pytest.raises(SystemExit):
        main(["check", str(GOLDEN / "listing1"), "--disable-filter", "bogus"])


def test_build_db_on_empty_corpus(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    out = tmp_path / "out"
    assert main(["build-db", str(corpus), "--out", str(out)]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "projects: 0" in printed
    assert "entries: 0" in printed
    db = load_db(out / "argswap.statsdb")
    assert len(db) == 0 and db.corpus_meta.project_count == 0
    assert (out / "argswap.freq").is_file()


def test_build_db_from_corpus_then_check(tmp_path):
    out = tmp_path / "out"
    records = tmp_path / "corpus.jsonl"
    assert main(["build-db", str(GOLDEN), "--out", str(out), "--write-records", str(records)]) == EXIT_OK
    db = load_db(out / "argswap.statsdb")
    assert db.corpus_meta.project_count == 9
    assert db.has_function("kill")
    assert sorted(p.project_id for p in read_records(records))[0] == "listing1"
    report = tmp_path / "report.sarif"
    code = main(["check", str(GOLDEN / "listing9"), "--db", str(out / "argswap.statsdb"),
                 "--freq-table", str(out / "argswap.freq"), "--out", str(report)])
    assert code == EXIT_WARNINGS


def test_build_db_from_records(tmp_path):
    db_path = tmp_path / "golden.statsdb"
    args = ["build-db", "--records", str(GOLDEN / "records.jsonl"), "--out", str(tmp_path), "--db", str(db_path)]
    assert main(args) == EXIT_OK
    assert load_db(db_path).corpus_meta.project_count == 7


def test_corpus_stats(capsys):
    assert main(["corpus-stats", "--records", str(GOLDEN / "records.jsonl")]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "morpheme-set size" in printed
    assert "morphemes\targuments\t1\t" in printed


def test_config_file(tmp_path):
    config = tmp_path / "argswap.env"
    config.write_text("ARGSWAP_STAGES=13\nARGSWAP_DB=" + DB + "\n", encoding="utf-8")
    out = tmp_path / "report.sarif"
    assert main(["check", str(GOLDEN / "listing7"), "--config", str(config), "--out", str(out)]) == EXIT_WARNINGS
    driver = json.loads(out.read_text(encoding="utf-8"))["runs"][0]["tool"]["driver"]
    assert driver["properties"]["stages"] == "13"
