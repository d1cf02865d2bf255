from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from ..schema import ArgExpr, DeclarationRecord, NamingConfig
from ..utils import PathLike, read_word_file
from .extract import extract_name
from .frequency import FrequencyTable
from .tokens import split_identifier

DATA_DIR = Path(__file__).parent / "data"

MorphemeSet = FrozenSet[str]


@lru_cache(maxsize=None)
def english_words() -> FrozenSet[str]:
    return frozenset(read_word_file(DATA_DIR / "english_words.txt"))


def load_stop_morphemes(path: PathLike) -> FrozenSet[str]:
    """Read a stop-morpheme list, one lowercase token per line."""
    return frozenset(word.lower() for word in read_word_file(path))


@lru_cache(maxsize=None)
def default_stop_morphemes() -> FrozenSet[str]:
    return load_stop_morphemes(DATA_DIR / "stop_morphemes.txt")


class MorphemeSplitter:
    """Splits names into morpheme sets.

    Stage one is ``split_identifier``. Stage two sub-splits residual tokens
    the corpus does not know, preferring the segmentation whose pieces are
    frequent and long. Stop-morphemes and single-letter tokens are dropped
    last; a single letter split off a longer token survives.

    Attributes:
        freq: Corpus token frequencies
        config: Splitting parameters
        words: English wordlist of tokens that are never sub-split
    """

    def __init__(self, freq: Optional[FrequencyTable] = None, config: Optional[NamingConfig] = None,
                 words: Optional[FrozenSet[str]] = None) -> None:
        self.freq = freq if freq is not None else FrequencyTable()
        self.config = config or NamingConfig()
        self.words = words if words is not None else english_words()
        self.stop_morphemes = self.config.stop_morphemes
        if self.stop_morphemes is None:
            self.stop_morphemes = default_stop_morphemes()
        self._segment_cache: Dict[str, Tuple[str, ...]] = {}
        self._split_cache: Dict[str, MorphemeSet] = {}

    @classmethod
    def of(cls, source: Union["MorphemeSplitter", FrequencyTable, None]) -> "MorphemeSplitter":
        """Reuse a splitter, or build one over a frequency table."""
        return source if isinstance(source, cls) else cls(source)

    def is_known(self, token: str) -> bool:
        return self.freq.count(token) >= self.config.min_token_count or token in self.words

    def segment(self, token: str) -> Tuple[str, ...]:
        """Sub-split one lowercase stage-one token; unknown tokens stay whole."""
        cached = self._segment_cache.get(token)
        if cached is not None:
            return cached
        result: Tuple[str, ...] = (token,)
        if len(token) >= self.config.min_split_length and not self.is_known(token):
            best_score = 0
            for pieces in self._viable_splits(token):
                score = sum(self.freq.count(piece) * len(piece) ** 2 for piece in pieces)
                if score > best_score:
                    best_score, result = score, pieces
        self._segment_cache[token] = result
        return result

    def _viable_splits(self, token: str) -> List[Tuple[str, ...]]:
        found: List[Tuple[str, ...]] = []
        budget = [self.config.search_budget]
        max_splits = self.config.max_viable_splits

        def walk(rest: str, pieces: List[str], short2: int, short3: int) -> None:
            if len(found) >= max_splits or budget[0] <= 0:
                return
            budget[0] -= 1
            if not rest:
                if len(pieces) > 1:
                    found.append(tuple(pieces))
                return
            for end in range(len(rest), 0, -1):
                piece = rest[:end]
                if end > 1 and (end < self.config.min_piece_length or not self.is_known(piece)):
                    continue
                if pieces == [] and end == len(rest):
                    continue
                n2 = short2 + (end <= 2)
                n3 = short3 + (end <= 3)
                if n2 > 2 or n3 > 4:
                    continue
                pieces.append(piece)
                walk(rest[end:], pieces, n2, n3)
                pieces.pop()
                if len(found) >= max_splits:
                    return

        walk(token, [], 0, 0)
        return found

    def segment_name(self, name: str) -> List[str]:
        """All pieces of a name before stop-morpheme removal."""
        pieces: List[str] = []
        for token in split_identifier(name):
            pieces.extend(self.segment(token))
        return pieces

    def split(self, name: str) -> MorphemeSet:
        """Morpheme set of a name; empty for literals and names without letters."""
        cached = self._split_cache.get(name)
        if cached is not None:
            return cached
        tokens = split_identifier(name)
        kept = set()
        for token in tokens:
            pieces = self.segment(token)
            # single letters carved out of a longer token ("c" in "cpid") are kept
            kept.update(p for p in pieces if not self._is_stop(p, whole_token=len(pieces) == 1))
        result = frozenset(kept) if kept else frozenset(tokens)
        self._split_cache[name] = result
        return result

    def _is_stop(self, piece: str, whole_token: bool = True) -> bool:
        if piece in self.stop_morphemes:
            return True
        return self.config.drop_single_letters and whole_token and len(piece) == 1

    def morphemes_of(self, name: Optional[str]) -> MorphemeSet:
        return self.split(name) if name else frozenset()


def split(name: str, freq: FrequencyTable) -> MorphemeSet:
    """Split a name with default settings against ``freq``."""
    return MorphemeSplitter(freq).split(name)


def eliminate_common(a: Iterable[str], b: Iterable[str]) -> Tuple[MorphemeSet, MorphemeSet]:
    """Drop morphemes present on both sides: returns (a \\ b, b \\ a)."""
    a, b = frozenset(a), frozenset(b)
    return a - b, b - a


def argument_morphemes(arg: ArgExpr, splitter: MorphemeSplitter) -> MorphemeSet:
    """Morphemes of an argument's extracted name; empty for literals and unnamed expressions."""
    return splitter.morphemes_of(extract_name(arg))


def parameter_morphemes(decl: DeclarationRecord, position: int, splitter: MorphemeSplitter) -> MorphemeSet:
    return splitter.morphemes_of(decl.param_name(position))
