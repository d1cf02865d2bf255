import logging
import os
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .. import __version__
from ..naming import FrequencyTable, MorphemeSplitter, extract_name
from ..schema import CallSiteRecord, NamingConfig, ProjectRecord, StatsConfig
from ..utils import PathLike, TableFormatError, TableVersionError, parse_int, read_table, write_table

Key = Tuple[str, int, str]

_MORPHEME = re.compile(r"^[a-z]+$")


class StatsDBFormatError(TableFormatError):
    """A statistics database file is malformed."""


class StatsDBVersionError(TableVersionError, StatsDBFormatError):
    """A statistics database file has an unsupported format version."""


@dataclass
class CorpusMeta:
    """Provenance of a statistics database.

    Attributes:
        project_count: Projects counted, including ones without calls
        build_timestamp: UTC ISO-8601 build time
        tool_version: Version of the tool that built it
    """
    project_count: int = 0
    build_timestamp: str = ""
    tool_version: str = __version__


@dataclass
class StatsDB:
    """Weights w(f, m, i): projects where morpheme m appears at position i of calls to f.

    Attributes:
        weights: Map from (function, position, morpheme) to weight
        corpus_meta: Build metadata
    """
    weights: Dict[Key, int] = field(default_factory=dict)
    corpus_meta: CorpusMeta = field(default_factory=CorpusMeta)

    MAGIC = "argswap-statsdb"
    VERSION = 1

    def __post_init__(self) -> None:
        self._by_function: Dict[str, Dict[int, Dict[str, int]]] = {}
        for (function, position, morpheme), weight in self.weights.items():
            if weight < 1:
                raise ValueError(f"Weight for {(function, position, morpheme)} must be >= 1")
            self._by_function.setdefault(function, {}).setdefault(position, {})[morpheme] = weight

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, StatsDB) and self.weights == other.weights
                and self.corpus_meta == other.corpus_meta)

    def __len__(self) -> int:
        return len(self.weights)

    def weight(self, function: str, morpheme: str, position: int) -> int:
        return self._by_function.get(function, {}).get(position, {}).get(morpheme, 0)

    def has_function(self, function: str) -> bool:
        return function in self._by_function

    def morphemes_at(self, function: str, position: int) -> Dict[str, int]:
        return dict(self._by_function.get(function, {}).get(position, {}))

    def psi_exceeds(self, function: str, morpheme: str, i: int, j: int, threshold: float) -> bool:
        """Whether w(f, m, i) / w(f, m, j) exceeds ``threshold``, with a zero w_j read as 1."""
        if i == j:
            raise ValueError("psi compares two distinct positions")
        if threshold < 0:
            raise ValueError(f"threshold must be non-negative, got {threshold}")
        w_i = self.weight(function, morpheme, i)
        w_j = self.weight(function, morpheme, j)
        return w_i > threshold * max(w_j, 1)

    def argmax_position_gap(self, function: str, j: int, i: int) -> Optional[str]:
        """Morpheme maximizing w(f, x, j) - w(f, x, i); None unless the best gap is positive."""
        if i == j:
            raise ValueError("argmax_position_gap compares two distinct positions")
        at_j = self._by_function.get(function, {}).get(j, {})
        at_i = self._by_function.get(function, {}).get(i, {})
        best: Optional[str] = None
        best_gap = 0
        for morpheme in sorted(set(at_j) | set(at_i)):
            gap = at_j.get(morpheme, 0) - at_i.get(morpheme, 0)
            if gap > best_gap:
                best, best_gap = morpheme, gap
        return best


def weight(db: StatsDB, f: str, m: str, i: int) -> int:
    return db.weight(f, m, i)


def psi_exceeds(db: StatsDB, f: str, m: str, i: int, j: int, threshold: float) -> bool:
    return db.psi_exceeds(f, m, i, j, threshold)


def has_function(db: StatsDB, f: str) -> bool:
    return db.has_function(f)


def argmax_position_gap(db: StatsDB, f: str, j: int, i: int) -> Optional[str]:
    return db.argmax_position_gap(f, j, i)


def call_keys(call: CallSiteRecord, splitter: MorphemeSplitter, max_position: int) -> Set[Key]:
    """(function, position, morpheme) keys contributed by one call.

    Morphemes present at every argument position are dropped first.
    """
    sets = [splitter.morphemes_of(extract_name(arg)) for arg in call.args]
    if len(sets) >= 2:
        common = frozenset.intersection(*sets)
        sets = [s - common for s in sets]
    keys = set()
    for position, morphemes in enumerate(sets[:max_position], start=1):
        keys.update((call.callee, position, m) for m in morphemes)
    return keys


def _excluded_files(projects: List[ProjectRecord]) -> Dict[str, Set[str]]:
    """Files per project whose content already appeared in an earlier project."""
    seen: Dict[str, str] = {}
    excluded: Dict[str, Set[str]] = {}
    for project in projects:
        for path, digest in sorted(project.file_digests.items()):
            owner = seen.setdefault(digest, project.project_id)
            if owner != project.project_id:
                excluded.setdefault(project.project_id, set()).add(path)
                logging.info(f"Skipping {project.project_id}/{path}: duplicate of a file in {owner}")
    return excluded


def _default_timestamp() -> str:
    epoch = os.getenv("SOURCE_DATE_EPOCH")
    moment = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def build_db(projects: List[ProjectRecord], freq: FrequencyTable,
             config: Optional[StatsConfig] = None, naming: Optional[NamingConfig] = None,
             jobs: int = 1, build_timestamp: Optional[str] = None) -> StatsDB:
    """Count, for every (function, position, morpheme), the projects using it.

    Args:
        projects: Corpus projects with distinct ids
        freq: Frequency table for splitting
        config: Build limits
        naming: Splitter configuration
        jobs: Worker threads; the merge is order independent
        build_timestamp: Fixed timestamp, defaults to SOURCE_DATE_EPOCH or now

    Returns:
        The statistics database

    Raises:
        ValueError: If two projects share an id
    """
    config = config or StatsConfig()
    ordered = sorted(projects, key=lambda p: p.project_id)
    id_counts = Counter(p.project_id for p in ordered)
    duplicates = sorted(pid for pid, n in id_counts.items() if n > 1)
    if duplicates:
        raise ValueError(f"duplicate project id: {', '.join(duplicates)}")

    excluded = _excluded_files(ordered)
    splitter = MorphemeSplitter(freq, naming)

    def project_keys(project: ProjectRecord) -> FrozenSet[Key]:
        skip = excluded.get(project.project_id, set())
        keys: Set[Key] = set()
        for call in project.call_sites:
            if call.from_macro_expansion or call.location.file_path in skip:
                continue
            keys |= call_keys(call, splitter, config.max_position)
        return frozenset(keys)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            per_project = list(executor.map(project_keys, ordered))
    else:
        per_project = [project_keys(p) for p in ordered]

    counts: Counter = Counter()
    for keys in per_project:
        counts.update(keys)

    db = StatsDB(
        weights=dict(counts),
        corpus_meta=CorpusMeta(
            project_count=len(ordered),
            build_timestamp=build_timestamp or _default_timestamp(),
        ),
    )
    logging.info(f"Built statistics database: {len(db)} keys over {len(ordered)} projects")
    return db


def save_db(db: StatsDB, path: PathLike) -> None:
    """Write the database; identical databases give identical bytes."""
    meta = {
        "project_count": db.corpus_meta.project_count,
        "build_timestamp": db.corpus_meta.build_timestamp,
        "tool_version": db.corpus_meta.tool_version,
    }
    rows = ((f, i, m, w) for (f, i, m), w in sorted(db.weights.items()))
    written = write_table(path, StatsDB.MAGIC, StatsDB.VERSION, meta, rows)
    logging.info(f"Wrote {written} statistics entries to {path}")


def load_db(path: PathLike) -> StatsDB:
    """Read a database written by ``save_db``.

    Raises:
        StatsDBVersionError: If the file has another format version
        StatsDBFormatError: If the file is corrupt, with the byte offset
    """
    meta, rows = read_table(path, StatsDB.MAGIC, StatsDB.VERSION, 4,
                            format_error=StatsDBFormatError, version_error=StatsDBVersionError)
    if "project_count" not in meta:
        raise StatsDBFormatError(f"{path}: byte 0: header lacks project_count")
    project_count = parse_int(meta["project_count"], 0, path, StatsDBFormatError)

    weights: Dict[Key, int] = {}
    for (function, position, morpheme, value), offset in rows:
        if not function:
            raise StatsDBFormatError(f"{path}: byte {offset}: empty function name")
        if not _MORPHEME.match(morpheme):
            raise StatsDBFormatError(f"{path}: byte {offset}: invalid morpheme '{morpheme}'")
        pos = parse_int(position, offset, path, StatsDBFormatError, minimum=1)
        w = parse_int(value, offset, path, StatsDBFormatError, minimum=1)
        if w > project_count:
            raise StatsDBFormatError(f"{path}: byte {offset}: weight {w} exceeds project count {project_count}")
        weights[(function, pos, morpheme)] = w

    return StatsDB(weights=weights, corpus_meta=CorpusMeta(
        project_count=project_count,
        build_timestamp=meta.get("build_timestamp", ""),
        tool_version=meta.get("tool_version", ""),
    ))
