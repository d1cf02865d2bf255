import hashlib
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

from ..schema import CallSiteRecord, DeclarationRecord, ProjectRecord
from .scanner import SOURCE_SUFFIXES, ParsedFile, SourceScanner, Symbols

T = TypeVar("T")
R = TypeVar("R")

ScanResult = Tuple[List[CallSiteRecord], List[DeclarationRecord]]


def _parallel_map(func: Callable[[T], R], items: Sequence[T], jobs: int) -> List[R]:
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, items))


def source_files(directory: Path) -> List[Path]:
    """C-like source files under a directory, in sorted walk order."""
    found = []
    for current, dirs, files in os.walk(directory):
        dirs.sort()
        for name in sorted(files):
            if Path(name).suffix.lower() in SOURCE_SUFFIXES:
                found.append(Path(current) / name)
    return found


def _read(path: Path) -> Optional[bytes]:
    try:
        return path.read_bytes()
    except OSError as e:
        logging.warning(f"Skipping unreadable file {path}: {e}")
        return None


def scan_files(files: Sequence[Tuple[Path, str]], jobs: int = 1,
               ) -> Tuple[List[CallSiteRecord], List[DeclarationRecord], Dict[str, str]]:
    """Scan files as one unit, sharing declarations for macro classification.

    Args:
        files: (path on disk, path to report) pairs
        jobs: Worker threads

    Returns:
        Sorted call sites, sorted declarations and the SHA-256 digest per reported path
    """
    scanner = SourceScanner()

    def parse(item: Tuple[Path, str]) -> Optional[ParsedFile]:
        path, reported = item
        data = _read(path)
        return scanner.parse(data, reported) if data is not None else None

    parsed = [p for p in _parallel_map(parse, list(files), jobs) if p is not None]
    symbols = Symbols()
    for p in parsed:
        symbols = symbols.merge(p.symbols)

    results = _parallel_map(lambda p: scanner.extract(p, symbols), parsed, jobs)
    calls = sorted((c for file_calls, _ in results for c in file_calls), key=lambda c: c.location.sort_key())
    decls = sorted((d for _, file_decls in results for d in file_decls), key=lambda d: d.location.sort_key())
    digests = {p.file_path: hashlib.sha256(p.source).hexdigest() for p in parsed}
    logging.info(f"Scanned {len(parsed)} files: {len(calls)} calls, {len(decls)} declarations")
    return calls, decls, digests


def scan_paths(paths: Iterable[str], jobs: int = 1) -> ScanResult:
    """Scan files and directories given on the command line.

    Raises:
        FileNotFoundError: If a path does not exist
    """
    files: List[Tuple[Path, str]] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend((f, f.as_posix()) for f in source_files(path))
        elif path.is_file():
            files.append((path, path.as_posix()))
        else:
            raise FileNotFoundError(f"No such file or directory: {raw}")
    calls, decls, _ = scan_files(files, jobs)
    return calls, decls


def scan_corpus(root: str, jobs: int = 1) -> List[ProjectRecord]:
    """Scan a corpus whose first-level subdirectories are projects.

    File paths are reported relative to the root.

    Raises:
        NotADirectoryError: If root is not a directory
    """
    root_path = Path(root)
    if not root_path.is_dir():
        raise NotADirectoryError(f"Corpus root is not a directory: {root}")
    projects = []
    for entry in sorted(root_path.iterdir()):
        if not entry.is_dir():
            logging.debug(f"Ignoring {entry}: projects are first-level directories")
            continue
        files = [(f, f.relative_to(root_path).as_posix()) for f in source_files(entry)]
        calls, decls, digests = scan_files(files, jobs)
        projects.append(ProjectRecord(entry.name, calls, decls, digests))
    logging.info(f"Scanned {len(projects)} projects under {root}")
    return projects


class DeclarationIndex:
    """Declarations by function name, in first-seen order."""

    def __init__(self, declarations: Iterable[DeclarationRecord]) -> None:
        self._by_name: Dict[str, List[DeclarationRecord]] = {}
        for decl in sorted(declarations, key=lambda d: d.location.sort_key()):
            self._by_name.setdefault(decl.function_name, []).append(decl)

    def match(self, call: CallSiteRecord) -> Optional[DeclarationRecord]:
        """Declaration for a call: exact name, arity equal to the call's preferred."""
        candidates = self._by_name.get(call.callee)
        if not candidates:
            return None
        for decl in candidates:
            if decl.arity == call.arity:
                return decl
        return candidates[0]


def match_declaration(call: CallSiteRecord, declarations: Iterable[DeclarationRecord]) -> Optional[DeclarationRecord]:
    return DeclarationIndex(declarations).match(call)
