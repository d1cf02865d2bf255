import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional


@dataclass
class ReportRow:
    """One SARIF result flattened for display.

    Attributes:
        rule_id: Rule that produced the result
        file_path: Artifact URI
        line: Start line
        column: Start column
        message: Result message
        callee: Called function
        positions: Swapped 1-based argument positions
        fingerprint: Partial fingerprint
        suppressed_by: Justification of a suppression, None for reported results
        properties: Remaining evidence
    """
    rule_id: str
    file_path: str
    line: int
    column: int
    message: str
    callee: str = ""
    positions: List[int] = field(default_factory=list)
    fingerprint: str = ""
    suppressed_by: Optional[str] = None
    properties: Dict[str, Any] = field(default_factory=dict)

    @property
    def suppressed(self) -> bool:
        return self.suppressed_by is not None


def parse_report(text: str) -> Dict[str, Any]:
    """Parse SARIF text.

    Raises:
        ValueError: If the text is not a SARIF 2.1.0 log
    """
    data = json.loads(text)
    if not isinstance(data, dict) or data.get("version") != "2.1.0" or not isinstance(data.get("runs"), list):
        raise ValueError("Not a SARIF 2.1.0 log")
    return data


def load_report_rows(sarif: Dict[str, Any]) -> List[ReportRow]:
    """Rows for every result of every run, sorted by file, line and column."""
    rows = []
    for run in sarif.get("runs", []):
        for result in run.get("results", []):
            physical = result["locations"][0]["physicalLocation"]
            region = physical.get("region", {})
            props = dict(result.get("properties", {}))
            suppressions = result.get("suppressions") or []
            rows.append(ReportRow(
                rule_id=result.get("ruleId", ""),
                file_path=physical["artifactLocation"]["uri"],
                line=region.get("startLine", 1),
                column=region.get("startColumn", 1),
                message=result.get("message", {}).get("text", ""),
                callee=props.pop("callee", ""),
                positions=props.pop("positions", []),
                fingerprint=next(iter(result.get("partialFingerprints", {}).values()), ""),
                suppressed_by=suppressions[0].get("justification", "suppressed") if suppressions else None,
                properties=props,
            ))
    return sorted(rows, key=lambda r: (r.file_path, r.line, r.column, r.positions))


def filter_rows(rows: Iterable[ReportRow], rules: Iterable[str], show_suppressed: bool) -> List[ReportRow]:
    rules = set(rules)
    return [r for r in rows if r.rule_id in rules and (show_suppressed or not r.suppressed)]


def group_by_file(rows: Iterable[ReportRow]) -> Dict[str, List[ReportRow]]:
    grouped: Dict[str, List[ReportRow]] = {}
    for row in rows:
        grouped.setdefault(row.file_path, []).append(row)
    return grouped
