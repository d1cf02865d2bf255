from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .enum import ArgKind

LEAF_KINDS = frozenset({
    ArgKind.IDENTIFIER, ArgKind.NON_STRING_LITERAL, ArgKind.STRING_LITERAL,
    ArgKind.THIS, ArgKind.MACRO_IDENTIFIER,
})

# Exact child counts; Sizeof takes 0 (type operand) or 1, Call takes 1 + argument count.
_ARITY = {
    ArgKind.PAREN: 1,
    ArgKind.PREFIX_INC_DEC: 1,
    ArgKind.POSTFIX_INC_DEC: 1,
    ArgKind.UNARY_OP: 1,
    ArgKind.CAST: 1,
    ArgKind.MEMBER: 1,
    ArgKind.INDEX: 2,
}

UNARY_OPS = frozenset({"&", "+", "-", "*"})
MEMBER_ACCESSORS = frozenset({".", "->", "::"})


@dataclass(frozen=True)
class SourceLocation:
    """A 1-based position in a source file.

    Attributes:
        file_path: Path of the file, relative to the scanned root when known
        line: 1-based line number
        column: 1-based column number
    """
    file_path: str
    line: int
    column: int

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError(f"Invalid location {self.file_path}:{self.line}:{self.column}")

    def sort_key(self) -> Tuple[str, int, int]:
        return (self.file_path, self.line, self.column)


@dataclass(frozen=True)
class ArgExpr:
    """Argument expression tree, restricted to the node kinds name extraction knows.

    Attributes:
        kind: Node kind
        children: Operand nodes. Member holds the object, Index holds base then
            subscript, Call holds the callee followed by its arguments
        token_text: Leaf payload; the member name for Member, the target type for Cast
        op: Operator for UnaryOp and inc/dec nodes, accessor for Member
    """
    kind: ArgKind
    children: Tuple["ArgExpr", ...] = ()
    token_text: str = ""
    op: Optional[str] = None

    def __post_init__(self) -> None:
        count = len(self.children)
        if self.kind in LEAF_KINDS and count:
            raise ValueError(f"{self.kind.value} must not have children")
        expected = _ARITY.get(self.kind)
        if expected is not None and count != expected:
            raise ValueError(f"{self.kind.value} expects {expected} children, got {count}")
        if self.kind is ArgKind.SIZEOF and count > 1:
            raise ValueError("Sizeof takes at most one operand")
        if self.kind is ArgKind.CALL and count < 1:
            raise ValueError("Call requires a callee child")
        if self.kind is ArgKind.UNARY_OP and self.op not in UNARY_OPS:
            raise ValueError(f"Unsupported unary operator {self.op!r}")
        if self.kind is ArgKind.MEMBER and self.op not in MEMBER_ACCESSORS:
            raise ValueError(f"Unsupported member accessor {self.op!r}")

    @classmethod
    def leaf(cls, kind: ArgKind, text: str) -> "ArgExpr":
        return cls(kind=kind, token_text=text)


@dataclass
class CallSiteRecord:
    """One function call with the context the filters inspect.

    Attributes:
        callee: Called function name
        args: Parsed argument expressions in call order
        location: Position of the callee token
        caller_name: Enclosing function, if any
        enclosing_conditions: Innermost-last condition texts of enclosing branches
        preceding_lines: Source lines directly above the call, in file order
        arg_source_texts: Raw text of each argument
        from_macro_expansion: True when the call goes through a function-like macro
        arg_types: Inferred type string per argument, None when unknown
    """
    callee: str
    args: List[ArgExpr]
    location: SourceLocation
    caller_name: Optional[str] = None
    enclosing_conditions: List[str] = field(default_factory=list)
    preceding_lines: List[str] = field(default_factory=list)
    arg_source_texts: List[str] = field(default_factory=list)
    from_macro_expansion: bool = False
    arg_types: List[Optional[str]] = field(default_factory=list)

    MAX_CONDITIONS = 5
    MAX_PRECEDING_LINES = 6

    def __post_init__(self) -> None:
        if len(self.args) != len(self.arg_source_texts):
            raise ValueError(
                f"Call to {self.callee} has {len(self.args)} args but "
                f"{len(self.arg_source_texts)} source texts"
            )
        if not self.arg_types:
            self.arg_types = [None] * len(self.args)
        elif len(self.arg_types) != len(self.args):
            raise ValueError(f"Call to {self.callee} has mismatched arg_types")
        if len(self.enclosing_conditions) > self.MAX_CONDITIONS:
            raise ValueError(f"At most {self.MAX_CONDITIONS} enclosing conditions are retained")
        if len(self.preceding_lines) > self.MAX_PRECEDING_LINES:
            raise ValueError(f"At most {self.MAX_PRECEDING_LINES} preceding lines are retained")

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass
class DeclarationRecord:
    """A function declaration or definition header.

    Attributes:
        function_name: Declared name
        param_names: Parameter names, None entries for unnamed parameters;
            None when the parameter list is unknown
        param_types: Normalized parameter type strings
        location: Position of the declarator name
    """
    function_name: str
    param_names: Optional[List[Optional[str]]]
    param_types: Optional[List[str]]
    location: SourceLocation

    def __post_init__(self) -> None:
        if (self.param_names is not None and self.param_types is not None
                and len(self.param_names) != len(self.param_types)):
            raise ValueError(f"Declaration of {self.function_name} has mismatched names and types")

    @property
    def arity(self) -> Optional[int]:
        if self.param_names is not None:
            return len(self.param_names)
        if self.param_types is not None:
            return len(self.param_types)
        return None

    def param_name(self, position: int) -> Optional[str]:
        """Parameter name at a 1-based position, None when absent."""
        if self.param_names is None or not 1 <= position <= len(self.param_names):
            return None
        return self.param_names[position - 1]

    def param_type(self, position: int) -> Optional[str]:
        if self.param_types is None or not 1 <= position <= len(self.param_types):
            return None
        return self.param_types[position - 1]


@dataclass
class ProjectRecord:
    """All records extracted from one project.

    Attributes:
        project_id: Unique project identifier
        call_sites: Call sites sorted by location
        declarations: Declarations sorted by location
        file_digests: SHA-256 hex digest per file path
    """
    project_id: str
    call_sites: List[CallSiteRecord] = field(default_factory=list)
    declarations: List[DeclarationRecord] = field(default_factory=list)
    file_digests: Dict[str, str] = field(default_factory=dict)
