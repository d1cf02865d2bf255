from pathlib import Path
from typing import List, Optional, Sequence, Union

import pytest

from src.backend.frontend import is_macro_name, scan_files, source_files
from src.backend.naming import FrequencyTable, MorphemeSplitter
from src.backend.schema import (
    ArgExpr, ArgKind, CallSiteRecord, CandidateWarning, CoverEvidence,
    DeclarationRecord, Origin, SourceLocation,
)
from src.backend.statsdb import load_db

GOLDEN = Path(__file__).parent / "fixtures" / "golden"
DOCS = Path(__file__).parent.parent / "docs"


def arg(text: str) -> ArgExpr:
    """Argument expression guessed from its spelling: negation, literal, macro or identifier."""
    if text.startswith("-") and len(text) > 1:
        return ArgExpr(ArgKind.UNARY_OP, (arg(text[1:]),), op="-")
    if text[:1].isdigit() or text[:1] in "'.":
        return ArgExpr.leaf(ArgKind.NON_STRING_LITERAL, text)
    if text.startswith('"'):
        return ArgExpr.leaf(ArgKind.STRING_LITERAL, text)
    if is_macro_name(text):
        return ArgExpr.leaf(ArgKind.MACRO_IDENTIFIER, text)
    return ArgExpr.leaf(ArgKind.IDENTIFIER, text)


def make_call(callee: str, args: Sequence[Union[str, ArgExpr]], file_path: str = "a.c", line: int = 1,
              column: int = 1, caller: Optional[str] = "caller", **kwargs) -> CallSiteRecord:
    exprs = [a if isinstance(a, ArgExpr) else arg(a) for a in args]
    texts = kwargs.pop("arg_source_texts", [a if isinstance(a, str) else a.token_text for a in args])
    return CallSiteRecord(
        callee=callee,
        args=exprs,
        location=SourceLocation(file_path, line, column),
        caller_name=caller,
        arg_source_texts=texts,
        **kwargs,
    )


def make_decl(name: str, params: List[Optional[str]], types: Optional[List[str]] = None,
              file_path: str = "a.h", line: int = 1) -> DeclarationRecord:
    return DeclarationRecord(
        function_name=name,
        param_names=params,
        param_types=types if types is not None else ["int"] * len(params),
        location=SourceLocation(file_path, line, 1),
    )


def make_candidate(call: CallSiteRecord, decl: Optional[DeclarationRecord], i: int, j: int) -> CandidateWarning:
    evidence = CoverEvidence(0.0, 0.0, 1.0, 1.0, frozenset({"a"}), frozenset({"b"}),
                             frozenset({"b"}), frozenset({"a"}), 1)
    return CandidateWarning(call, decl, i, j, Origin.COVER, evidence)


def scan_listing(*names: str):
    """Scan golden listing directories with paths relative to the golden root."""
    files = []
    for name in names:
        files.extend((f, f.relative_to(GOLDEN).as_posix()) for f in source_files(GOLDEN / name))
    calls, decls, _ = scan_files(files)
    return calls, decls


@pytest.fixture(scope="session")
def golden_db():
    return load_db(GOLDEN / "golden.statsdb")


@pytest.fixture(scope="session")
def seed_freq():
    return FrequencyTable.seed()


@pytest.fixture
def splitter(seed_freq):
    return MorphemeSplitter(seed_freq)
