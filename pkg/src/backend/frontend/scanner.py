import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple, Union

import tree_sitter_c as tsc
import tree_sitter_cpp as tscpp
from tree_sitter import Language, Node, Parser, Tree

from ..schema import ArgExpr, ArgKind, CallSiteRecord, DeclarationRecord, SourceLocation

C_LANGUAGE = Language(tsc.language())
CPP_LANGUAGE = Language(tscpp.language())

C_SUFFIXES = frozenset({".c", ".h"})
CPP_SUFFIXES = frozenset({".cc", ".cpp", ".cxx", ".c++", ".hh", ".hpp", ".hxx", ".h++"})
SOURCE_SUFFIXES = C_SUFFIXES | CPP_SUFFIXES

_MACRO_NAME = re.compile(r"^[A-Z0-9_]*[A-Z][A-Z0-9_]*$")

_CONDITION_OWNERS = frozenset({
    "if_statement", "while_statement", "do_statement", "for_statement",
    "switch_statement", "conditional_expression",
})
_STRING_NODES = frozenset({"string_literal", "concatenated_string", "raw_string_literal"})
_LITERAL_NODES = frozenset({"number_literal", "char_literal", "true", "false"})
_POINTER_DECLARATORS = frozenset({
    "pointer_declarator", "abstract_pointer_declarator",
    "array_declarator", "abstract_array_declarator",
})

SourceText = Union[str, bytes]


def language_for(file_path: str) -> Language:
    """Pick the C++ grammar for C++ suffixes, C otherwise."""
    lowered = file_path.lower()
    return CPP_LANGUAGE if any(lowered.endswith(s) for s in CPP_SUFFIXES) else C_LANGUAGE


def is_macro_name(name: str) -> bool:
    return bool(_MACRO_NAME.match(name))


def _text(node: Optional[Node]) -> str:
    if node is None:
        return ""
    return node.text.decode("utf-8", errors="replace")


def _squash(text: str) -> str:
    return " ".join(text.split())


def _named(node: Node) -> List[Node]:
    return [child for child in node.named_children if child.type != "comment"]


def _walk(root: Node) -> Iterator[Node]:
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def _inside_error(node: Node) -> bool:
    parent = node.parent
    while parent is not None:
        if parent.type == "ERROR":
            return True
        parent = parent.parent
    return False


@dataclass(frozen=True)
class Symbols:
    """Names that steer macro classification.

    Attributes:
        functions: Names declared or defined as functions
        function_macros: Names defined as function-like macros
    """
    functions: FrozenSet[str] = frozenset()
    function_macros: FrozenSet[str] = frozenset()

    def merge(self, other: "Symbols") -> "Symbols":
        return Symbols(self.functions | other.functions, self.function_macros | other.function_macros)


@dataclass
class ParsedFile:
    """A parsed source file awaiting record extraction."""
    file_path: str
    source: bytes
    tree: Tree
    symbols: Symbols
    lines: List[bytes] = field(default_factory=list)


def _function_declarator(declarator: Optional[Node]) -> Optional[Node]:
    """Follow pointer declarators down to a function declarator naming a function."""
    while declarator is not None:
        if declarator.type == "function_declarator":
            inner = declarator.child_by_field_name("declarator")
            if inner is not None and inner.type in ("identifier", "qualified_identifier"):
                return declarator
            return None
        if declarator.type in ("pointer_declarator", "reference_declarator"):
            declarator = declarator.child_by_field_name("declarator") or next(iter(_named(declarator)[-1:]), None)
            continue
        return None
    return None


def _declared_name(function_declarator: Node) -> Optional[Node]:
    inner = function_declarator.child_by_field_name("declarator")
    while inner is not None and inner.type == "qualified_identifier":
        inner = inner.child_by_field_name("name")
    if inner is not None and inner.type in ("identifier", "template_function"):
        if inner.type == "template_function":
            inner = inner.child_by_field_name("name")
        return inner
    return None


def _variable_declarator(declarator: Optional[Node]) -> Tuple[Optional[str], int]:
    """Name and pointer depth of a (possibly abstract) declarator."""
    depth = 0
    while declarator is not None:
        kind = declarator.type
        if kind in ("identifier", "field_identifier"):
            return _text(declarator), depth
        if kind in _POINTER_DECLARATORS:
            depth += 1
            declarator = declarator.child_by_field_name("declarator")
        elif kind == "function_declarator":
            depth += 1
            declarator = declarator.child_by_field_name("declarator")
        elif kind in ("init_declarator", "reference_declarator", "parenthesized_declarator"):
            declarator = declarator.child_by_field_name("declarator") or next(iter(_named(declarator)), None)
        else:
            return None, depth
    return None, depth


def _base_type(node: Node) -> str:
    """Qualifiers plus the type specifier of a declaration-like node."""
    type_node = node.child_by_field_name("type")
    parts = []
    for child in node.children:
        if child.type == "type_qualifier" and (type_node is None or child.start_byte < type_node.start_byte):
            parts.append(_text(child))
    parts.append(_squash(_text(type_node)))
    return " ".join(part for part in parts if part)


def _parameters(function_declarator: Node) -> Tuple[List[Optional[str]], List[str]]:
    names: List[Optional[str]] = []
    types: List[str] = []
    params = function_declarator.child_by_field_name("parameters")
    if params is None:
        return names, types
    for param in _named(params):
        if param.type not in ("parameter_declaration", "optional_parameter_declaration"):
            continue
        declarator = param.child_by_field_name("declarator")
        name, depth = _variable_declarator(declarator)
        base = _base_type(param)
        if declarator is None and base == "void":
            continue
        names.append(name)
        types.append(base + "*" * depth)
    return names, types


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
        text = text[1:-1].strip()
    return text


def _balanced(text: str) -> bool:
    depth = 0
    for c in text:
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0


class SourceScanner:
    """Tolerant C/C++ scanner extracting call sites and declarations.

    Files are parsed with tree-sitter; regions the parser cannot make sense
    of are wrapped in ERROR nodes and contribute no records. Scanning runs in
    two phases so that macro classification can see every declaration of a
    project: ``parse`` collects symbols, ``extract`` builds records.
    """

    def parse(self, source: SourceText, file_path: str) -> ParsedFile:
        data = source.encode("utf-8", errors="replace") if isinstance(source, str) else bytes(source)
        parser = Parser(language_for(file_path))
        tree = parser.parse(data)
        if tree.root_node.has_error:
            logging.debug(f"{file_path}: syntax errors, affected regions are skipped")
        functions: Set[str] = set()
        macros: Set[str] = set()
        for node in _walk(tree.root_node):
            if node.type == "preproc_function_def":
                macros.add(_text(node.child_by_field_name("name")))
            elif node.type in ("declaration", "function_definition"):
                for declarator in node.children_by_field_name("declarator"):
                    fn = _function_declarator(declarator)
                    name = _declared_name(fn) if fn is not None else None
                    if name is not None:
                        functions.add(_text(name))
        return ParsedFile(file_path, data, tree, Symbols(frozenset(functions), frozenset(macros)),
                          data.split(b"\n"))

    def extract(self, parsed: ParsedFile, symbols: Optional[Symbols] = None,
                ) -> Tuple[List[CallSiteRecord], List[DeclarationRecord]]:
        """Build records for one parsed file.

        Args:
            parsed: Output of ``parse``
            symbols: Project-wide symbols, defaults to the file's own

        Returns:
            Call sites and declarations sorted by location
        """
        return _FileExtractor(parsed, symbols or parsed.symbols).run()

    def scan(self, source: SourceText, file_path: str) -> Tuple[List[CallSiteRecord], List[DeclarationRecord]]:
        return self.extract(self.parse(source, file_path))


def scan_file(source_text: SourceText, file_path: str) -> Tuple[List[CallSiteRecord], List[DeclarationRecord]]:
    """Scan one file in isolation; never raises on malformed source."""
    return SourceScanner().scan(source_text, file_path)


class _FileExtractor:
    """Record extraction for a single parsed file."""

    def __init__(self, parsed: ParsedFile, symbols: Symbols) -> None:
        self.parsed = parsed
        self.symbols = symbols
        self.globals: Dict[str, str] = {}
        self.locals: Dict[Tuple[int, int], Dict[str, str]] = {}

    def run(self) -> Tuple[List[CallSiteRecord], List[DeclarationRecord]]:
        root = self.parsed.tree.root_node
        self.globals = self._variables(root, nested=False)
        calls: List[CallSiteRecord] = []
        decls: List[DeclarationRecord] = []
        for node in _walk(root):
            if node.type == "call_expression":
                record = self._call(node)
                if record is not None:
                    calls.append(record)
            elif node.type in ("declaration", "function_definition") and not node.has_error:
                decls.extend(self._declarations(node))
        calls.sort(key=lambda c: c.location.sort_key())
        decls.sort(key=lambda d: d.location.sort_key())
        return calls, decls

    def _location(self, node: Node) -> SourceLocation:
        row, byte_col = node.start_point
        line = self.parsed.lines[row] if row < len(self.parsed.lines) else b""
        column = len(line[:byte_col].decode("utf-8", errors="replace")) + 1
        return SourceLocation(self.parsed.file_path, row + 1, column)

    def _declarations(self, node: Node) -> List[DeclarationRecord]:
        records = []
        for declarator in node.children_by_field_name("declarator"):
            fn = _function_declarator(declarator)
            name = _declared_name(fn) if fn is not None else None
            if name is None:
                continue
            names, types = _parameters(fn)
            records.append(DeclarationRecord(
                function_name=_text(name),
                param_names=names,
                param_types=types,
                location=self._location(name),
            ))
        return records

    def _variables(self, scope: Node, nested: bool) -> Dict[str, str]:
        """Declared variable types within a scope; the first declaration of a name wins."""
        found: Dict[str, str] = {}
        stack = list(reversed(scope.children))
        while stack:
            node = stack.pop()
            if node.type == "function_definition" and not nested:
                continue
            if node.type == "declaration":
                base = _base_type(node)
                for declarator in node.children_by_field_name("declarator"):
                    if _function_declarator(declarator) is not None:
                        continue
                    name, depth = _variable_declarator(declarator)
                    if name and name not in found:
                        found[name] = base + "*" * depth
            if nested or node.type not in ("compound_statement",):
                stack.extend(reversed(node.children))
        return found

    def _function_scope(self, function: Node) -> Dict[str, str]:
        key = (function.start_byte, function.end_byte)
        scope = self.locals.get(key)
        if scope is None:
            scope = {}
            fn = _function_declarator(function.child_by_field_name("declarator"))
            if fn is not None:
                names, types = _parameters(fn)
                scope.update((n, t) for n, t in zip(names, types) if n)
            body = function.child_by_field_name("body")
            if body is not None:
                for name, type_string in self._variables(body, nested=True).items():
                    scope.setdefault(name, type_string)
            self.locals[key] = scope
        return scope

    def _call(self, node: Node) -> Optional[CallSiteRecord]:
        if node.has_error or _inside_error(node):
            return None
        callee_node = node.child_by_field_name("function")
        callee = self._callee_name(callee_node)
        arguments = node.child_by_field_name("arguments")
        if callee is None or arguments is None or arguments.type != "argument_list":
            return None

        arg_nodes = _named(arguments)
        function = self._enclosing_function(node)
        scope = self._function_scope(function) if function is not None else {}
        location = self._location(callee_node)
        start = max(0, location.line - 1 - CallSiteRecord.MAX_PRECEDING_LINES)
        preceding = [
            line.decode("utf-8", errors="replace").rstrip("\r")
            for line in self.parsed.lines[start:location.line - 1]
        ]
        from_macro = callee in self.symbols.function_macros or (
            is_macro_name(callee) and callee not in self.symbols.functions
        )
        return CallSiteRecord(
            callee=callee,
            args=[self._arg_expr(arg) for arg in arg_nodes],
            location=location,
            caller_name=self._function_name(function),
            enclosing_conditions=self._conditions(node),
            preceding_lines=preceding,
            arg_source_texts=[_squash(_text(arg)) for arg in arg_nodes],
            from_macro_expansion=from_macro,
            arg_types=[self._arg_type(arg, scope) for arg in arg_nodes],
        )

    @staticmethod
    def _callee_name(node: Optional[Node]) -> Optional[str]:
        while node is not None:
            if node.type == "identifier":
                return _text(node)
            if node.type in ("qualified_identifier", "template_function"):
                node = node.child_by_field_name("name")
                continue
            return None
        return None

    @staticmethod
    def _enclosing_function(node: Node) -> Optional[Node]:
        parent = node.parent
        while parent is not None and parent.type != "function_definition":
            parent = parent.parent
        return parent

    @staticmethod
    def _function_name(function: Optional[Node]) -> Optional[str]:
        if function is None:
            return None
        fn = _function_declarator(function.child_by_field_name("declarator"))
        name = _declared_name(fn) if fn is not None else None
        return _text(name) if name is not None else None

    @staticmethod
    def _conditions(node: Node) -> List[str]:
        conditions: List[str] = []
        parent = node.parent
        while parent is not None and parent.type != "function_definition":
            if parent.type in _CONDITION_OWNERS:
                condition = parent.child_by_field_name("condition")
                contains_call = condition is not None and (
                    condition.start_byte <= node.start_byte and node.end_byte <= condition.end_byte
                )
                if condition is not None and not contains_call:
                    conditions.append(_strip_parens(_squash(_text(condition))))
            parent = parent.parent
        conditions.reverse()
        return conditions[-CallSiteRecord.MAX_CONDITIONS:]

    def _arg_expr(self, node: Node) -> ArgExpr:
        kind = node.type
        if kind == "identifier":
            name = _text(node)
            if is_macro_name(name) and name not in self.symbols.functions:
                return ArgExpr.leaf(ArgKind.MACRO_IDENTIFIER, name)
            return ArgExpr.leaf(ArgKind.IDENTIFIER, name)
        if kind == "null":
            name = _text(node)
            return ArgExpr.leaf(ArgKind.MACRO_IDENTIFIER if name == "NULL" else ArgKind.NON_STRING_LITERAL, name)
        if kind in _LITERAL_NODES:
            return ArgExpr.leaf(ArgKind.NON_STRING_LITERAL, _text(node))
        if kind in _STRING_NODES:
            return ArgExpr.leaf(ArgKind.STRING_LITERAL, _text(node))
        if kind == "this":
            return ArgExpr.leaf(ArgKind.THIS, "this")

        inner = _named(node)
        if kind == "parenthesized_expression" and len(inner) == 1:
            return ArgExpr(ArgKind.PAREN, (self._arg_expr(inner[0]),))
        if kind == "update_expression":
            operand = node.child_by_field_name("argument")
            operator = _text(node.child_by_field_name("operator"))
            if operand is not None:
                prefix = node.children[0].type in ("++", "--")
                return ArgExpr(ArgKind.PREFIX_INC_DEC if prefix else ArgKind.POSTFIX_INC_DEC,
                               (self._arg_expr(operand),), op=operator)
        if kind in ("unary_expression", "pointer_expression"):
            operand = node.child_by_field_name("argument")
            operator = _text(node.child_by_field_name("operator"))
            if operand is not None and operator in ("&", "+", "-", "*"):
                return ArgExpr(ArgKind.UNARY_OP, (self._arg_expr(operand),), op=operator)
        if kind == "sizeof_expression":
            value = node.child_by_field_name("value")
            return ArgExpr(ArgKind.SIZEOF, (self._arg_expr(value),) if value is not None else ())
        if kind == "cast_expression":
            value = node.child_by_field_name("value")
            if value is not None:
                return ArgExpr(ArgKind.CAST, (self._arg_expr(value),),
                               token_text=self._type_descriptor(node.child_by_field_name("type")))
        if kind == "field_expression":
            obj = node.child_by_field_name("argument")
            member = node.child_by_field_name("field")
            operator = _text(node.child_by_field_name("operator"))
            if obj is not None and member is not None and operator in (".", "->"):
                return ArgExpr(ArgKind.MEMBER, (self._arg_expr(obj),), token_text=_text(member), op=operator)
        if kind == "qualified_identifier":
            scope = node.child_by_field_name("scope")
            name = node.child_by_field_name("name")
            if name is not None:
                return ArgExpr(ArgKind.MEMBER, (ArgExpr.leaf(ArgKind.IDENTIFIER, _text(scope)),),
                               token_text=self._callee_name(name) or _text(name), op="::")
        if kind == "subscript_expression":
            base = node.child_by_field_name("argument")
            rest = [child for child in inner if base is None or child.start_byte != base.start_byte]
            if base is not None:
                index = self._arg_expr(rest[0]) if rest else ArgExpr.leaf(ArgKind.OTHER, "")
                return ArgExpr(ArgKind.INDEX, (self._arg_expr(base), index))
        if kind == "call_expression":
            function = node.child_by_field_name("function")
            arguments = node.child_by_field_name("arguments")
            if function is not None:
                args = _named(arguments) if arguments is not None else []
                return ArgExpr(ArgKind.CALL, tuple([self._arg_expr(function)] + [self._arg_expr(a) for a in args]))
        return ArgExpr.leaf(ArgKind.OTHER, _squash(_text(node)))

    @staticmethod
    def _type_descriptor(node: Optional[Node]) -> str:
        if node is None:
            return ""
        _, depth = _variable_declarator(node.child_by_field_name("declarator"))
        return _base_type(node) + "*" * depth

    def _arg_type(self, node: Node, scope: Dict[str, str]) -> Optional[str]:
        kind = node.type
        if kind == "identifier":
            name = _text(node)
            return scope.get(name) or self.globals.get(name)
        if kind == "number_literal":
            text = _text(node).lower()
            if text.startswith("0x"):
                return "int"
            if "." in text or "e" in text:
                return "float" if text.endswith("f") else "double"
            return "int"
        if kind == "char_literal":
            return "char"
        if kind in _STRING_NODES:
            return "const char*"
        if kind == "cast_expression":
            return self._type_descriptor(node.child_by_field_name("type")) or None
        if kind == "parenthesized_expression":
            inner = _named(node)
            return self._arg_type(inner[0], scope) if len(inner) == 1 else None
        if kind == "pointer_expression":
            operand = node.child_by_field_name("argument")
            operator = _text(node.child_by_field_name("operator"))
            inner_type = self._arg_type(operand, scope) if operand is not None else None
            if inner_type is None:
                return None
            if operator == "&":
                return inner_type + "*"
            return inner_type[:-1] if inner_type.endswith("*") else None
        return None
