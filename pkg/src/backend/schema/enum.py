from enum import Enum

class ArgKind(Enum):
    """Syntactic kinds of argument expressions at a call site."""
    IDENTIFIER = "Identifier"
    NON_STRING_LITERAL = "NonStringLiteral"
    STRING_LITERAL = "StringLiteral"
    THIS = "This"
    PAREN = "Paren"
    PREFIX_INC_DEC = "PrefixIncDec"
    POSTFIX_INC_DEC = "PostfixIncDec"
    UNARY_OP = "UnaryOp"
    SIZEOF = "Sizeof"
    CAST = "Cast"
    MEMBER = "Member"
    INDEX = "Index"
    CALL = "Call"
    MACRO_IDENTIFIER = "MacroIdentifier"
    OTHER = "Other"

class Origin(Enum):
    """Checker that produced a candidate warning."""
    COVER = "CoverChecker"
    STATISTICAL = "StatisticalChecker"

    @property
    def rule_id(self) -> str:
        return "swap.cover" if self is Origin.COVER else "swap.statistical"

class FilterName(Enum):
    """False-positive filters, in evaluation order."""
    WHITELIST_WORDS = "whitelist-words"
    SWAP_DISTANCE = "swap-distance"
    GEOMETRIC_NEGATION = "geometric-negation"
    TYPE_CHECK = "type-check"
    NEARBY_DECLARATION = "nearby-declaration"
    NEARBY_CORRECT_CALL = "nearby-correct-call"
    SWAP_NOT_RARE = "swap-not-rare"
