import logging
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from ..schema import ProjectRecord
from ..utils import PathLike, TableFormatError, parse_int, read_table, read_word_file, write_table
from .extract import extract_name
from .tokens import split_identifier

DATA_DIR = Path(__file__).parent / "data"


class FrequencyTableFormatError(TableFormatError):
    """A frequency table file is malformed."""


class FrequencyTable:
    """Token occurrence counts over the names of a corpus."""

    MAGIC = "argswap-freq"
    VERSION = 1

    def __init__(self, counts: Optional[Dict[str, int]] = None) -> None:
        self._counts: Dict[str, int] = {}
        for token, count in (counts or {}).items():
            self.add(token, count)

    def add(self, token: str, count: int = 1) -> None:
        if count < 1:
            raise ValueError(f"Count for '{token}' must be >= 1, got {count}")
        token = token.lower()
        self._counts[token] = self._counts.get(token, 0) + count

    def count(self, token: str) -> int:
        return self._counts.get(token, 0)

    def merge(self, other: "FrequencyTable") -> "FrequencyTable":
        merged = FrequencyTable(self._counts)
        for token, count in other.items():
            merged.add(token, count)
        return merged

    def items(self) -> Iterator[Tuple[str, int]]:
        return iter(sorted(self._counts.items()))

    def as_dict(self) -> Dict[str, int]:
        return dict(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, token: str) -> bool:
        return token in self._counts

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrequencyTable) and self._counts == other._counts

    def save(self, path: PathLike) -> None:
        written = write_table(path, self.MAGIC, self.VERSION, {}, self.items())
        logging.info(f"Wrote frequency table with {written} tokens to {path}")

    @classmethod
    def load(cls, path: PathLike) -> "FrequencyTable":
        """Load a table written by ``save``.

        Raises:
            FrequencyTableFormatError: If the file is malformed
        """
        _, rows = read_table(path, cls.MAGIC, cls.VERSION, 2, format_error=FrequencyTableFormatError)
        table = cls()
        for (token, count), offset in rows:
            if not token or token != token.lower():
                raise FrequencyTableFormatError(f"{path}: byte {offset}: invalid token '{token}'")
            table.add(token, parse_int(count, offset, path, FrequencyTableFormatError, minimum=1))
        return table

    @classmethod
    def seed(cls) -> "FrequencyTable":
        """The bundled table of common identifier morphemes."""
        table = cls()
        for line in read_word_file(DATA_DIR / "code_tokens.tsv"):
            token, count = line.split("\t")
            table.add(token, int(count))
        return table


def _split_tokens(name: Optional[str]) -> List[str]:
    return split_identifier(name) if name else []


def build_frequency_table(projects: List[ProjectRecord]) -> FrequencyTable:
    """Count stage-one tokens of every argument and parameter name in a corpus.

    Calls expanded from function-like macros are skipped, as in the
    statistics database.
    """
    table = FrequencyTable()
    for project in sorted(projects, key=lambda p: p.project_id):
        for call in project.call_sites:
            if call.from_macro_expansion:
                continue
            for arg in call.args:
                for token in _split_tokens(extract_name(arg)):
                    table.add(token)
        for decl in project.declarations:
            for name in decl.param_names or []:
                for token in _split_tokens(name):
                    table.add(token)
    logging.info(f"Frequency table holds {len(table)} distinct tokens")
    return table
