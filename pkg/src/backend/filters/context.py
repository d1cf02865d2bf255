from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..schema import CallSiteRecord, SourceLocation

Pair = Tuple[int, int]


@dataclass
class CallerContext:
    """Calls sharing a caller function, as seen by the filters.

    Attributes:
        file_path: File holding the caller
        caller_name: Caller function name, None at file scope
        calls: Every call site within the caller, in source order
        declaration_files: Files declaring each callee
        flagged: Position pairs a checker flagged per call, before vetting
    """
    file_path: str
    caller_name: Optional[str]
    calls: List[CallSiteRecord] = field(default_factory=list)
    declaration_files: Dict[str, FrozenSet[str]] = field(default_factory=dict)
    flagged: Dict[SourceLocation, FrozenSet[Pair]] = field(default_factory=dict)

    def is_flagged(self, call: CallSiteRecord, pair: Pair) -> bool:
        return pair in self.flagged.get(call.location, frozenset())

    def calls_to(self, callee: str) -> List[CallSiteRecord]:
        return [call for call in self.calls if call.callee == callee]


def group_by_caller(calls: List[CallSiteRecord], declaration_files: Dict[str, FrozenSet[str]],
                    flagged: Dict[SourceLocation, FrozenSet[Pair]]) -> Dict[Tuple[str, Optional[str]], CallerContext]:
    """Contexts keyed by (file, caller name)."""
    contexts: Dict[Tuple[str, Optional[str]], CallerContext] = {}
    for call in sorted(calls, key=lambda c: c.location.sort_key()):
        key = (call.location.file_path, call.caller_name)
        ctx = contexts.get(key)
        if ctx is None:
            ctx = contexts[key] = CallerContext(key[0], key[1], declaration_files=declaration_files, flagged=flagged)
        ctx.calls.append(call)
    return contexts
