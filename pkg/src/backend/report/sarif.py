import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from .. import __version__
from ..schema import Origin, Warning

SARIF_VERSION = "2.1.0"
SARIF_SCHEMA = "https://json.schemastore.org/sarif-2.1.0.json"

RULES = {
    Origin.COVER.rule_id: (
        "SwappedArgumentsByName",
        "Argument names match the parameters of the other position better than their own.",
    ),
    Origin.STATISTICAL.rule_id: (
        "SwappedArgumentsByUsage",
        "Argument morphemes usually appear at each other's positions in calls to this function.",
    ),
}


@dataclass
class ToolMeta:
    """Driver information written into a report.

    Attributes:
        name: Tool name
        version: Tool version
        properties: Effective settings echoed for reproducibility
    """
    name: str = "argswap"
    version: str = __version__
    properties: Dict[str, Any] = field(default_factory=dict)


def _rule_descriptor(rule_id: str) -> Dict[str, Any]:
    name, text = RULES[rule_id]
    return {
        "id": rule_id,
        "name": name,
        "shortDescription": {"text": text},
        "defaultConfiguration": {"level": "warning"},
    }


def _result(warning: Warning, rule_index: Dict[str, int]) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        "ruleId": warning.rule_id,
        "ruleIndex": rule_index[warning.rule_id],
        "level": "warning",
        "message": {"text": warning.message},
        "locations": [{
            "physicalLocation": {
                "artifactLocation": {"uri": warning.location.file_path},
                "region": {"startLine": warning.location.line, "startColumn": warning.location.column},
            }
        }],
        "partialFingerprints": {"argswap/v1": warning.fingerprint},
        "properties": warning.properties,
    }
    if warning.suppressed_by is not None:
        result["suppressions"] = [{
            "kind": "external",
            "justification": f"Suppressed by the {warning.suppressed_by.value} filter",
        }]
    return result


def build_sarif(warnings: Iterable[Warning], tool_meta: Optional[ToolMeta] = None,
                suppressed: Iterable[Warning] = ()) -> Dict[str, Any]:
    """SARIF log with one run; reported and suppressed results share one sorted list."""
    tool_meta = tool_meta or ToolMeta()
    results: List[Warning] = sorted([*warnings, *suppressed], key=Warning.sort_key)
    rule_ids = sorted(RULES)
    rule_index = {rule_id: n for n, rule_id in enumerate(rule_ids)}
    driver: Dict[str, Any] = {
        "name": tool_meta.name,
        "version": tool_meta.version,
        "rules": [_rule_descriptor(rule_id) for rule_id in rule_ids],
    }
    if tool_meta.properties:
        driver["properties"] = tool_meta.properties
    return {
        "$schema": SARIF_SCHEMA,
        "version": SARIF_VERSION,
        "runs": [{
            "tool": {"driver": driver},
            "columnKind": "unicodeCodePoints",
            "results": [_result(w, rule_index) for w in results],
        }],
    }


def emit_sarif(warnings: Iterable[Warning], tool_meta: Optional[ToolMeta] = None,
               suppressed: Iterable[Warning] = ()) -> str:
    """Serialize a SARIF 2.1.0 report; equal inputs give identical text."""
    return json.dumps(build_sarif(warnings, tool_meta, suppressed), indent=2, sort_keys=True) + "\n"
