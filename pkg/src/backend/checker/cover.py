import logging
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from ..naming import (
    FrequencyTable, MorphemeSet, MorphemeSplitter, argument_morphemes,
    eliminate_common, parameter_morphemes,
)
from ..schema import (
    CallSiteRecord, CandidateWarning, CoverEvidence, DeclarationRecord,
    Origin, SimilarityConfig, Thresholds,
)
from ..similarity import SynonymTable, sim

SplitterSource = Union[MorphemeSplitter, FrequencyTable, None]


def position_pairs(arity: int, max_distance: Optional[int] = None) -> Iterator[Tuple[int, int]]:
    """1-based pairs (i, j), i < j, at most ``max_distance`` apart when given."""
    for i, j in combinations(range(1, arity + 1), 2):
        if max_distance is None or j - i <= max_distance:
            yield i, j


def cover(a: Iterable[str], p: Iterable[str], synonyms: Optional[SynonymTable] = None,
          config: Optional[SimilarityConfig] = None) -> float:
    """How well argument morphemes ``a`` explain parameter morphemes ``p``.

    The minimum over parameter morphemes of the best similarity to any
    argument morpheme.

    Raises:
        ValueError: If either set is empty
    """
    a, p = sorted(set(a)), sorted(set(p))
    if not a or not p:
        raise ValueError("cover is undefined for an empty morpheme set")
    return min(max(sim(x, y, synonyms, config) for x in a) for y in p)


def cover_check(call: CallSiteRecord, decl: Optional[DeclarationRecord], th: Thresholds,
                freq: SplitterSource = None, synonyms: Optional[SynonymTable] = None,
                max_distance: Optional[int] = None,
                similarity: Optional[SimilarityConfig] = None) -> List[CandidateWarning]:
    """Report argument pairs that cover their own parameters badly and each other's well.

    Args:
        call: Call site
        decl: Matched declaration; nothing is checked without parameter names
        th: Thresholds, alpha1 and alpha2 are used
        freq: Frequency table or a ready splitter
        synonyms: Synonym pairs for the similarity
        max_distance: Largest |i - j| considered, all pairs when None
        similarity: Deletion penalties

    Returns:
        Candidates ordered by position pair
    """
    if decl is None or not decl.param_names:
        return []
    splitter = MorphemeSplitter.of(freq)
    arity = min(call.arity, len(decl.param_names))
    args = [argument_morphemes(arg, splitter) for arg in call.args[:arity]]
    candidates = []
    for i, j in position_pairs(arity, max_distance):
        if decl.param_name(i) is None or decl.param_name(j) is None:
            continue
        params_i = parameter_morphemes(decl, i, splitter)
        params_j = parameter_morphemes(decl, j, splitter)
        evidence = _pair_evidence(args[i - 1], args[j - 1], params_i, params_j, synonyms, similarity)
        if evidence is None:
            continue
        if (evidence.c_ii < th.alpha1 and evidence.c_jj < th.alpha1
                and evidence.c_ij > th.alpha2 and evidence.c_ji > th.alpha2):
            candidates.append(CandidateWarning(call, decl, i, j, Origin.COVER, evidence))
    if candidates:
        logging.debug(f"Cover checker flagged {call.callee} at {call.location.sort_key()}: "
                      f"{[(c.pos_i, c.pos_j) for c in candidates]}")
    return candidates


def _pair_evidence(a_i: MorphemeSet, a_j: MorphemeSet, p_i: MorphemeSet, p_j: MorphemeSet,
                   synonyms: Optional[SynonymTable],
                   similarity: Optional[SimilarityConfig]) -> Optional[CoverEvidence]:
    largest = max(len(a_i), len(a_j), len(p_i), len(p_j))
    a_i, a_j = eliminate_common(a_i, a_j)
    p_i, p_j = eliminate_common(p_i, p_j)
    if not (a_i and a_j and p_i and p_j):
        return None
    return CoverEvidence(
        c_ii=cover(a_i, p_i, synonyms, similarity),
        c_jj=cover(a_j, p_j, synonyms, similarity),
        c_ij=cover(a_i, p_j, synonyms, similarity),
        c_ji=cover(a_j, p_i, synonyms, similarity),
        args_i=a_i, args_j=a_j, params_i=p_i, params_j=p_j,
        max_morphemes=largest,
    )
