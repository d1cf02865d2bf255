import logging
from typing import List, Optional

from ..naming import MorphemeSet, MorphemeSplitter, argument_morphemes, eliminate_common
from ..schema import CallSiteRecord, CandidateWarning, Origin, SimilarityConfig, StatisticalEvidence, Thresholds
from ..similarity import SynonymTable, sim
from ..statsdb import StatsDB
from .cover import SplitterSource, position_pairs


def statistical_check(call: CallSiteRecord, db: StatsDB, th: Thresholds,
                      freq: SplitterSource = None, synonyms: Optional[SynonymTable] = None,
                      max_distance: Optional[int] = None,
                      similarity: Optional[SimilarityConfig] = None) -> List[CandidateWarning]:
    """Find pairs where exactly one morpheme on each side sits at the other's usual position.

    For a pair (i, j), a morpheme a_i at i must be more than gamma times as
    frequent at j as at i, a_j the same the other way round, the sets must
    agree once a_i and a_j are removed, and each misplaced morpheme must be
    similar to the morpheme most characteristic of the position it belongs to.

    Args:
        call: Call site
        db: Statistics database; nothing is reported for unknown callees
        th: Thresholds, gamma and sim_threshold are used
        freq: Frequency table or a ready splitter
        synonyms: Synonym pairs for the similarity
        max_distance: Largest |i - j| considered, all pairs when None
        similarity: Deletion penalties

    Returns:
        Candidates ordered by position pair
    """
    f = call.callee
    if not db.has_function(f):
        return []
    splitter = MorphemeSplitter.of(freq)
    args = [argument_morphemes(arg, splitter) for arg in call.args]

    candidates = []
    for i, j in position_pairs(call.arity, max_distance):
        largest = max(len(args[i - 1]), len(args[j - 1]))
        a_i, a_j = eliminate_common(args[i - 1], args[j - 1])
        if not a_i or not a_j:
            continue
        evidence = _misplaced(f, i, j, a_i, a_j, db, th, synonyms, similarity)
        if evidence is not None:
            evidence = StatisticalEvidence(evidence.morpheme_i, evidence.morpheme_j, evidence.weights,
                                           a_i, a_j, largest)
            candidates.append(CandidateWarning(call, None, i, j, Origin.STATISTICAL, evidence))
    if candidates:
        logging.debug(f"Statistical checker flagged {f} at {call.location.sort_key()}: "
                      f"{[(c.pos_i, c.pos_j) for c in candidates]}")
    return candidates


def _misplaced(f: str, i: int, j: int, a_i: MorphemeSet, a_j: MorphemeSet, db: StatsDB, th: Thresholds,
               synonyms: Optional[SynonymTable],
               similarity: Optional[SimilarityConfig]) -> Optional[StatisticalEvidence]:
    belongs_at_j = [m for m in sorted(a_i) if db.psi_exceeds(f, m, j, i, th.gamma)]
    belongs_at_i = [m for m in sorted(a_j) if db.psi_exceeds(f, m, i, j, th.gamma)]
    if not belongs_at_j or not belongs_at_i:
        return None
    typical_j = db.argmax_position_gap(f, j, i)
    typical_i = db.argmax_position_gap(f, i, j)
    if typical_j is None or typical_i is None:
        return None
    for m_i in belongs_at_j:
        for m_j in belongs_at_i:
            if a_i - {m_i} != a_j - {m_j}:
                continue
            if sim(m_i, typical_j, synonyms, similarity) < th.sim_threshold:
                continue
            if sim(m_j, typical_i, synonyms, similarity) < th.sim_threshold:
                continue
            weights = {
                f"{m}@{p}": db.weight(f, m, p)
                for m in (m_i, m_j) for p in (i, j)
            }
            return StatisticalEvidence(m_i, m_j, weights, a_i, a_j)
    return None
