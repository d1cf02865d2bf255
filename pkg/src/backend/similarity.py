import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import FrozenSet, Iterable, Optional, Tuple

from .schema import SimilarityConfig
from .utils import PathLike, read_word_file

VOWELS = frozenset("aeiou")


@dataclass(frozen=True)
class SynonymTable:
    """Unordered pairs of morphemes treated as fully similar.

    Attributes:
        pairs: Each pair is a two-element frozenset, so lookups are symmetric
    """
    pairs: FrozenSet[FrozenSet[str]] = field(default_factory=frozenset)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]]) -> "SynonymTable":
        """Build a table, rejecting a token paired with itself.

        Raises:
            ValueError: For a self pair or an empty token
        """
        built = set()
        for a, b in pairs:
            a, b = a.strip().lower(), b.strip().lower()
            if not a or not b:
                raise ValueError("Synonym tokens must be non-empty")
            if a == b:
                raise ValueError(f"Token '{a}' cannot be its own synonym")
            built.add(frozenset((a, b)))
        return cls(frozenset(built))

    def contains(self, m1: str, m2: str) -> bool:
        return frozenset((m1, m2)) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)


def load_synonyms(path: PathLike) -> SynonymTable:
    """Read ``token,token`` lines.

    Raises:
        ValueError: For a line that is not exactly two comma-separated tokens
    """
    pairs = []
    for line in read_word_file(path):
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}: expected 'token,token', got '{line}'")
        pairs.append((parts[0], parts[1]))
    table = SynonymTable.from_pairs(pairs)
    logging.info(f"Loaded {len(table)} synonym pairs from {path}")
    return table


def _deletion_cost(word: str, config: SimilarityConfig) -> Tuple[float, ...]:
    n = len(word)
    costs = []
    for i, c in enumerate(word):
        if c == "s" and i == n - 1:
            base = config.final_s_penalty
        elif c in VOWELS:
            base = config.vowel_penalty
        else:
            base = config.consonant_penalty
        costs.append(base * (n - i) / n)
    return tuple(costs)


@lru_cache(maxsize=65536)
def _lcs_penalty(m1: str, m2: str, config: SimilarityConfig) -> float:
    """Smallest total deletion penalty over all longest common subsequences."""
    c1, c2 = _deletion_cost(m1, config), _deletion_cost(m2, config)
    n1, n2 = len(m1), len(m2)
    # best[i][j] = (lcs length, penalty) for suffixes m1[i:], m2[j:]
    best = [[(0, 0.0)] * (n2 + 1) for _ in range(n1 + 1)]
    for i in range(n1 - 1, -1, -1):
        best[i][n2] = (0, best[i + 1][n2][1] + c1[i])
    for j in range(n2 - 1, -1, -1):
        best[n1][j] = (0, best[n1][j + 1][1] + c2[j])
    for i in range(n1 - 1, -1, -1):
        for j in range(n2 - 1, -1, -1):
            skip1 = best[i + 1][j]
            skip2 = best[i][j + 1]
            options = [(skip1[0], skip1[1] + c1[i]), (skip2[0], skip2[1] + c2[j])]
            if m1[i] == m2[j]:
                diag = best[i + 1][j + 1]
                options.append((diag[0] + 1, diag[1]))
            best[i][j] = min(options, key=lambda o: (-o[0], o[1]))
    return best[0][0][1]


def sim(m1: str, m2: str, synonyms: Optional[SynonymTable] = None,
        config: Optional[SimilarityConfig] = None) -> float:
    """Abbreviation-aware similarity of two morphemes in [0, 1].

    Morphemes with different first characters score 0 unless they are
    synonyms. Otherwise characters outside a longest common subsequence are
    deleted; vowels cost less than consonants, a final 's' is free, and the
    cost of a deletion shrinks toward the end of its word. The total is
    normalized by the longer morpheme.

    Args:
        m1: Lowercase morpheme
        m2: Lowercase morpheme
        synonyms: Optional pairs scored as 1
        config: Deletion penalties

    Returns:
        Similarity score
    """
    if m1 == m2:
        return 1.0
    if synonyms is not None and synonyms.contains(m1, m2):
        return 1.0
    if not m1 or not m2 or m1[0] != m2[0]:
        return 0.0
    penalty = _lcs_penalty(m1, m2, config or SimilarityConfig())
    return max(0.0, 1.0 - penalty / max(len(m1), len(m2)))
