import pytest

from conftest import scan_listing
from src.backend.checker import SwapChecker
from src.backend.report import emit_sarif
from src.viewer.report import filter_rows, group_by_file, load_report_rows, parse_report


@pytest.fixture(scope="module")
def rows(golden_db, seed_freq):
    calls, decls = scan_listing("listing1", "listing2", "listing7")
    result = SwapChecker(db=golden_db, freq=seed_freq).check(calls, decls)
    return load_report_rows(parse_report(emit_sarif(result.warnings, suppressed=result.suppressed)))


def test_rows_from_report(rows):
    assert [(r.file_path, r.line, r.rule_id) for r in rows] == [
        ("listing1/xvile.c", 20, "swap.cover"),
        ("listing2/gpaste.c", 11, "swap.statistical"),
        ("listing7/background.c", 22, "swap.cover"),
    ]
    first = rows[0]
    assert first.callee == "kill"
    assert first.positions == [1, 2]
    assert first.column == 9
    assert len(first.fingerprint) == 64
    assert "callee" not in first.properties
    assert rows[2].suppressed_by == "Suppressed by the whitelist-words filter"


def test_filter_rows(rows):
    assert len(filter_rows(rows, ["swap.cover", "swap.statistical"], show_suppressed=True)) == 3
    visible = filter_rows(rows, ["swap.cover", "swap.statistical"], show_suppressed=False)
    assert [r.line for r in visible] == [20, 11]
    assert [r.rule_id for r in filter_rows(rows, ["swap.statistical"], show_suppressed=True)] == ["swap.statistical"]


def test_group_by_file(rows):
    grouped = group_by_file(rows)
    assert list(grouped) == ["listing1/xvile.c", "listing2/gpaste.c", "listing7/background.c"]
    assert all(len(group) == 1 for group in grouped.values())


@pytest.mark.parametrize("text", ["{}", "[]", '{"version": "2.0.0", "runs": []}'])
def test_parse_report_rejects_other_documents(text):
    with pytest.raises(ValueError):
        parse_report(text)
