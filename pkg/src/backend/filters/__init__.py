from .context import CallerContext, group_by_caller
from .engine import FILTERS, apply_filters
from .heuristics import (
    geometric_negation, nearby_correct_call, nearby_declaration, swap_distance,
    swap_not_rare, type_check_filter, whitelist_words,
)

__all__ = [
    "CallerContext", "group_by_caller", "FILTERS", "apply_filters",
    "geometric_negation", "nearby_correct_call", "nearby_declaration", "swap_distance",
    "swap_not_rare", "type_check_filter", "whitelist_words",
]
