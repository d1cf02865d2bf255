import logging

from ..schema import CandidateWarning, CoverEvidence, Origin, Thresholds
from ..statsdb import StatsDB


def vet(cand: CandidateWarning, db: StatsDB, th: Thresholds) -> bool:
    """Keep a cover candidate unless the corpus shows its arrangement is common.

    The candidate is dropped when some argument morpheme at i is more than
    beta times as frequent at i as at j, or symmetrically for j.

    Returns:
        True to keep the candidate
    """
    if cand.origin is not Origin.COVER or not isinstance(cand.evidence, CoverEvidence):
        raise ValueError("Only cover candidates are vetted")
    f = cand.call.callee
    if not db.has_function(f):
        return True
    i, j = cand.pos_i, cand.pos_j
    evidence = cand.evidence
    for m in sorted(evidence.args_i):
        if db.psi_exceeds(f, m, i, j, th.beta):
            logging.debug(f"Vetted out {f}({i},{j}): '{m}' is common at position {i}")
            return False
    for m in sorted(evidence.args_j):
        if db.psi_exceeds(f, m, j, i, th.beta):
            logging.debug(f"Vetted out {f}({i},{j}): '{m}' is common at position {j}")
            return False
    return True
