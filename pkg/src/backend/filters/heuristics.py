import re
from typing import Optional

from ..naming import extract_name
from ..schema import CandidateWarning, FilterConfig
from .context import CallerContext

_SPACE = re.compile(r"\s+")


def whitelist_words(cand: CandidateWarning, ctx: CallerContext, cfg: FilterConfig) -> bool:
    """A whitelist word appears in the callee, caller, enclosing conditions or preceding lines."""
    call = cand.call
    haystacks = [call.callee, call.caller_name or ""]
    haystacks.extend(call.enclosing_conditions[-call.MAX_CONDITIONS:])
    haystacks.extend(call.preceding_lines[-call.MAX_PRECEDING_LINES:])
    text = "\n".join(haystacks).lower()
    return any(word in text for word in cfg.whitelist_words)


def swap_distance(cand: CandidateWarning, ctx: CallerContext, cfg: FilterConfig) -> bool:
    return cand.pos_j - cand.pos_i > cfg.max_swap_distance


def _negated(text: str) -> bool:
    text = text.lstrip()
    return text.startswith("-") and not text.startswith("--")


def geometric_negation(cand: CandidateWarning, ctx: CallerContext, cfg: FilterConfig) -> bool:
    """Exactly one of the two arguments is negated, as in a rotation (x, -y) -> (y, x)."""
    texts = cand.call.arg_source_texts
    return _negated(texts[cand.pos_i - 1]) != _negated(texts[cand.pos_j - 1])


def _norm_type(text: Optional[str]) -> Optional[str]:
    return _SPACE.sub(" ", text).replace(" *", "*").strip() if text else None


def type_check_filter(cand: CandidateWarning, ctx: CallerContext, cfg: FilterConfig) -> bool:
    """Argument types fit the current parameters exactly and the swapped ones do not."""
    if cand.decl is None:
        return False
    i, j = cand.pos_i, cand.pos_j
    param_i, param_j = _norm_type(cand.decl.param_type(i)), _norm_type(cand.decl.param_type(j))
    arg_i, arg_j = _norm_type(cand.call.arg_types[i - 1]), _norm_type(cand.call.arg_types[j - 1])
    if None in (param_i, param_j, arg_i, arg_j) or param_i == param_j:
        return False
    return arg_i == param_i and arg_j == param_j


def nearby_declaration(cand: CandidateWarning, ctx: CallerContext, cfg: FilterConfig) -> bool:
    """The callee is declared in the file of the call."""
    file_path = cand.call.location.file_path
    if cand.decl is not None and cand.decl.location.file_path == file_path:
        return True
    return file_path in ctx.declaration_files.get(cand.call.callee, frozenset())


def nearby_correct_call(cand: CandidateWarning, ctx: CallerContext, cfg: FilterConfig) -> bool:
    """Another call to the callee in the same caller is not flagged at this pair."""
    pair = (cand.pos_i, cand.pos_j)
    for other in ctx.calls_to(cand.call.callee):
        if other.location == cand.call.location or other.arity < cand.pos_j:
            continue
        if extract_name(other.args[cand.pos_i - 1]) is None or extract_name(other.args[cand.pos_j - 1]) is None:
            continue
        if not ctx.is_flagged(other, pair):
            return True
    return False


def swap_not_rare(cand: CandidateWarning, ctx: CallerContext, cfg: FilterConfig) -> bool:
    """The same swap is flagged at several calls in one caller, so it is likely intended."""
    pair = (cand.pos_i, cand.pos_j)
    flagged = sum(1 for call in ctx.calls_to(cand.call.callee) if ctx.is_flagged(call, pair))
    return flagged >= cfg.not_rare_count
