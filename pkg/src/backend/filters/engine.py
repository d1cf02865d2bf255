import logging
from typing import Callable, List, Optional, Tuple

from ..schema import CandidateWarning, FilterConfig, FilterName
from .context import CallerContext
from .heuristics import (
    geometric_negation, nearby_correct_call, nearby_declaration, swap_distance,
    swap_not_rare, type_check_filter, whitelist_words,
)

Predicate = Callable[[CandidateWarning, CallerContext, FilterConfig], bool]

# Evaluation order; the first match names the suppression.
FILTERS: List[Tuple[FilterName, Predicate]] = [
    (FilterName.WHITELIST_WORDS, whitelist_words),
    (FilterName.SWAP_DISTANCE, swap_distance),
    (FilterName.GEOMETRIC_NEGATION, geometric_negation),
    (FilterName.TYPE_CHECK, type_check_filter),
    (FilterName.NEARBY_DECLARATION, nearby_declaration),
    (FilterName.NEARBY_CORRECT_CALL, nearby_correct_call),
    (FilterName.SWAP_NOT_RARE, swap_not_rare),
]


def apply_filters(cand: CandidateWarning, ctx: CallerContext,
                  cfg: FilterConfig) -> Tuple[bool, Optional[FilterName]]:
    """Run the enabled filters in order.

    Returns:
        (keep, suppressed_by); suppressed_by names the first filter that matched
    """
    for name, predicate in FILTERS:
        if cfg.is_enabled(name) and predicate(cand, ctx, cfg):
            logging.debug(f"{name.value} suppressed {cand.call.callee}({cand.pos_i},{cand.pos_j}) "
                          f"at {cand.call.location.file_path}:{cand.call.location.line}")
            return False, name
    return True, None
