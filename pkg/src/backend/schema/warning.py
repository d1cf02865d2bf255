from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Union

from .enum import FilterName, Origin
from .record import CallSiteRecord, DeclarationRecord, SourceLocation


@dataclass(frozen=True)
class CoverEvidence:
    """Cover scores and the morpheme sets they were computed on.

    Attributes:
        c_ii: C(A_i, P_i)
        c_jj: C(A_j, P_j)
        c_ij: C(A_i, P_j)
        c_ji: C(A_j, P_i)
        args_i: A_i after common-morpheme elimination
        args_j: A_j after common-morpheme elimination
        params_i: P_i after common-morpheme elimination
        params_j: P_j after common-morpheme elimination
        max_morphemes: Largest of the four sets before elimination
    """
    c_ii: float
    c_jj: float
    c_ij: float
    c_ji: float
    args_i: FrozenSet[str]
    args_j: FrozenSet[str]
    params_i: FrozenSet[str]
    params_j: FrozenSet[str]
    max_morphemes: int = 0


@dataclass(frozen=True)
class StatisticalEvidence:
    """Misplaced morphemes and the weights backing them.

    Attributes:
        morpheme_i: Morpheme at position i that belongs at j
        morpheme_j: Morpheme at position j that belongs at i
        weights: w(f, m, p) for both morphemes at both positions, keyed "m@p"
        args_i: A_i after common-morpheme elimination
        args_j: A_j after common-morpheme elimination
        max_morphemes: Larger argument set before elimination
    """
    morpheme_i: str
    morpheme_j: str
    weights: Dict[str, int]
    args_i: FrozenSet[str]
    args_j: FrozenSet[str]
    max_morphemes: int = 0


Evidence = Union[CoverEvidence, StatisticalEvidence]


@dataclass
class CandidateWarning:
    """A suspected swap before vetting and filtering.

    Attributes:
        call: The call site
        decl: Matched declaration, if any
        pos_i: Smaller 1-based position
        pos_j: Larger 1-based position
        origin: Checker that produced it
        evidence: Scores for a cover candidate, morphemes and weights otherwise
    """
    call: CallSiteRecord
    decl: Optional[DeclarationRecord]
    pos_i: int
    pos_j: int
    origin: Origin
    evidence: Evidence

    def __post_init__(self) -> None:
        if not 1 <= self.pos_i < self.pos_j <= self.call.arity:
            raise ValueError(
                f"Invalid positions ({self.pos_i}, {self.pos_j}) for a call with {self.call.arity} args"
            )
        expected = CoverEvidence if self.origin is Origin.COVER else StatisticalEvidence
        if not isinstance(self.evidence, expected):
            raise ValueError(f"{self.origin.value} candidate needs {expected.__name__}")

    @property
    def key(self):
        return (self.call.location.sort_key(), self.pos_i, self.pos_j)


@dataclass
class Warning:
    """A reported swap.

    Attributes:
        rule_id: "swap.cover" or "swap.statistical"
        message: Human readable description
        location: Call site location
        fingerprint: Location-independent hash
        candidate: The candidate it was built from
        suppressed_by: Filter that suppressed it, for reports that include suppressions
    """
    rule_id: str
    message: str
    location: SourceLocation
    fingerprint: str
    candidate: CandidateWarning
    suppressed_by: Optional[FilterName] = None
    properties: Dict[str, object] = field(default_factory=dict)

    def sort_key(self):
        return (*self.location.sort_key(), self.candidate.pos_i, self.candidate.pos_j)
