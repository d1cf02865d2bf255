from typing import Optional

from ..schema import ArgExpr, ArgKind

_OPERAND_KINDS = frozenset({
    ArgKind.PAREN, ArgKind.PREFIX_INC_DEC, ArgKind.POSTFIX_INC_DEC,
    ArgKind.UNARY_OP, ArgKind.CAST,
})


def extract_name(expr: ArgExpr) -> Optional[str]:
    """Return the name an argument expression stands for, or None.

    Identifiers, macro identifiers and non-string literals name themselves,
    ``this`` is "this" and sizeof is "sizeof". Parens, casts, increments and
    the unary operators & + - * defer to their operand, member access to the
    member, indexing to the base and calls to the callee.
    """
    while True:
        kind = expr.kind
        if kind in (ArgKind.IDENTIFIER, ArgKind.MACRO_IDENTIFIER, ArgKind.NON_STRING_LITERAL):
            return expr.token_text or None
        if kind is ArgKind.THIS:
            return "this"
        if kind is ArgKind.SIZEOF:
            return "sizeof"
        if kind is ArgKind.MEMBER:
            return expr.token_text or None
        if kind in _OPERAND_KINDS or kind in (ArgKind.INDEX, ArgKind.CALL):
            expr = expr.children[0]
            continue
        return None
