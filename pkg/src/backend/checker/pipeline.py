import hashlib
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..filters import apply_filters, group_by_caller
from ..frontend import DeclarationIndex
from ..naming import FrequencyTable, MorphemeSplitter
from ..schema import (
    CallSiteRecord, CandidateWarning, CoverEvidence, DeclarationRecord, FilterConfig, FilterName,
    NamingConfig, Origin, PipelineConfig, SimilarityConfig, SourceLocation, Thresholds, Warning,
)
from ..similarity import SynonymTable
from ..statsdb import StatsDB
from .cover import cover_check
from .statistical import statistical_check
from .vetting import vet

_SPACE = re.compile(r"\s+")

Pair = Tuple[int, int]


def fingerprint(call: CallSiteRecord, pos_i: int, pos_j: int, rule_id: str) -> str:
    """Location-free identity of a warning: callee, argument texts, positions and rule."""
    texts = [_SPACE.sub(" ", text).strip() for text in call.arg_source_texts]
    payload = "\x1f".join([call.callee, *texts, str(pos_i), str(pos_j), rule_id])
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _message(cand: CandidateWarning) -> str:
    call, i, j = cand.call, cand.pos_i, cand.pos_j
    head = (f"Arguments {i} and {j} of call to '{call.callee}' may be swapped: "
            f"'{call.arg_source_texts[i - 1]}' and '{call.arg_source_texts[j - 1]}'")
    evidence = cand.evidence
    if isinstance(evidence, CoverEvidence):
        name_i, name_j = cand.decl.param_name(i), cand.decl.param_name(j)
        return (f"{head} match parameters '{name_j}' and '{name_i}' better than "
                f"'{name_i}' and '{name_j}'")
    return (f"{head}; morpheme '{evidence.morpheme_i}' usually appears at position {j} "
            f"and '{evidence.morpheme_j}' at position {i}")


def _properties(cand: CandidateWarning) -> Dict[str, object]:
    evidence = cand.evidence
    props: Dict[str, object] = {
        "callee": cand.call.callee,
        "positions": [cand.pos_i, cand.pos_j],
        "origin": cand.origin.value,
        "maxMorphemes": evidence.max_morphemes,
        "argumentMorphemes": [sorted(evidence.args_i), sorted(evidence.args_j)],
    }
    if isinstance(evidence, CoverEvidence):
        props["cover"] = {
            "C_ii": round(evidence.c_ii, 4),
            "C_jj": round(evidence.c_jj, 4),
            "C_ij": round(evidence.c_ij, 4),
            "C_ji": round(evidence.c_ji, 4),
        }
        props["parameterMorphemes"] = [sorted(evidence.params_i), sorted(evidence.params_j)]
    else:
        props["misplacedMorphemes"] = [evidence.morpheme_i, evidence.morpheme_j]
        props["weights"] = dict(sorted(evidence.weights.items()))
    return props


def to_warning(cand: CandidateWarning, suppressed_by: Optional[FilterName] = None) -> Warning:
    rule_id = cand.origin.rule_id
    return Warning(
        rule_id=rule_id,
        message=_message(cand),
        location=cand.call.location,
        fingerprint=fingerprint(cand.call, cand.pos_i, cand.pos_j, rule_id),
        candidate=cand,
        suppressed_by=suppressed_by,
        properties=_properties(cand),
    )


def deduplicate(candidates: Iterable[CandidateWarning]) -> List[CandidateWarning]:
    """One candidate per (location, pos_i, pos_j), cover before statistical."""
    best: Dict[tuple, CandidateWarning] = {}
    for cand in candidates:
        kept = best.get(cand.key)
        if kept is None or (kept.origin is Origin.STATISTICAL and cand.origin is Origin.COVER):
            best[cand.key] = cand
    return [best[key] for key in sorted(best)]


@dataclass
class CallOutcome:
    """Checker results for one call site.

    Attributes:
        flagged: Pairs a checker raised before vetting
        survivors: Candidates left after vetting, deduplicated
    """
    flagged: FrozenSet[Pair]
    survivors: List[CandidateWarning]


@dataclass
class CheckResult:
    """Warnings reported and warnings the filters suppressed, both sorted."""
    warnings: List[Warning] = field(default_factory=list)
    suppressed: List[Warning] = field(default_factory=list)


class SwapChecker:
    """Runs the checking pipeline over call sites.

    Stage one is the cover checker, stage two vets its candidates against the
    statistics database, stage three is the statistical checker for calls
    stage one raised nothing for, and stage four filters what survives.
    """

    def __init__(self, db: Optional[StatsDB] = None, freq: Optional[FrequencyTable] = None,
                 thresholds: Optional[Thresholds] = None, synonyms: Optional[SynonymTable] = None,
                 filters: Optional[FilterConfig] = None, pipeline: Optional[PipelineConfig] = None,
                 naming: Optional[NamingConfig] = None, similarity: Optional[SimilarityConfig] = None,
                 jobs: int = 1) -> None:
        self.db = db
        self.thresholds = thresholds or Thresholds()
        self.synonyms = synonyms
        self.filters = filters or FilterConfig()
        self.pipeline = pipeline or PipelineConfig()
        self.similarity = similarity or SimilarityConfig()
        self.splitter = MorphemeSplitter(freq, naming)
        self.jobs = jobs

    def check_call(self, call: CallSiteRecord, decl: Optional[DeclarationRecord]) -> CallOutcome:
        """Stages one to three for a single call."""
        if call.from_macro_expansion:
            return CallOutcome(frozenset(), [])
        max_distance = self.filters.max_swap_distance
        raw_cover: List[CandidateWarning] = []
        if self.pipeline.enable_cover:
            raw_cover = cover_check(call, decl, self.thresholds, self.splitter, self.synonyms,
                                    max_distance, self.similarity)
        kept = raw_cover
        if self.pipeline.enable_vetting and self.db is not None:
            kept = [cand for cand in raw_cover if vet(cand, self.db, self.thresholds)]
        raw_stat: List[CandidateWarning] = []
        if self.pipeline.enable_statistical and self.db is not None and not raw_cover:
            raw_stat = statistical_check(call, self.db, self.thresholds, self.splitter, self.synonyms,
                                         max_distance, self.similarity)
            raw_stat = [replace(cand, decl=decl) for cand in raw_stat]
        flagged = frozenset((c.pos_i, c.pos_j) for c in raw_cover + raw_stat)
        return CallOutcome(flagged, deduplicate(kept + raw_stat))

    def check(self, call_sites: Iterable[CallSiteRecord],
              declarations: Iterable[DeclarationRecord] = ()) -> CheckResult:
        """Check call sites against their declarations and filter the candidates.

        Args:
            call_sites: Calls to check
            declarations: Declarations visible to the calls

        Returns:
            Sorted warnings and sorted suppressed warnings
        """
        declarations = list(declarations)
        calls = sorted(call_sites, key=lambda c: c.location.sort_key())
        index = DeclarationIndex(declarations)
        declaration_files: Dict[str, FrozenSet[str]] = {}
        for decl in declarations:
            declaration_files[decl.function_name] = (
                declaration_files.get(decl.function_name, frozenset()) | {decl.location.file_path}
            )

        def run(call: CallSiteRecord) -> CallOutcome:
            return self.check_call(call, index.match(call))

        if self.jobs > 1 and len(calls) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as executor:
                outcomes = list(executor.map(run, calls))
        else:
            outcomes = [run(call) for call in calls]

        flagged: Dict[SourceLocation, FrozenSet[Pair]] = {
            call.location: outcome.flagged for call, outcome in zip(calls, outcomes) if outcome.flagged
        }
        contexts = group_by_caller(calls, declaration_files, flagged)

        result = CheckResult()
        for outcome in outcomes:
            for cand in outcome.survivors:
                if self.pipeline.enable_filters:
                    ctx = contexts[(cand.call.location.file_path, cand.call.caller_name)]
                    keep, suppressed_by = apply_filters(cand, ctx, self.filters)
                else:
                    keep, suppressed_by = True, None
                warning = to_warning(cand, suppressed_by)
                (result.warnings if keep else result.suppressed).append(warning)
        result.warnings.sort(key=Warning.sort_key)
        result.suppressed.sort(key=Warning.sort_key)
        logging.info(f"Checked {len(calls)} calls: {len(result.warnings)} warnings, "
                     f"{len(result.suppressed)} suppressed")
        return result


def run_pipeline(call: CallSiteRecord, decl: Optional[DeclarationRecord], db: Optional[StatsDB],
                 th: Thresholds, freq: Optional[FrequencyTable], synonyms: Optional[SynonymTable],
                 filters_config: Optional[FilterConfig] = None) -> List[Warning]:
    """Run all four stages on a single call with no other calls in its caller."""
    checker = SwapChecker(db, freq, th, synonyms, filters_config)
    return checker.check([call], [decl] if decl is not None else []).warnings
