from .config import (
    Thresholds, FilterConfig, NamingConfig, SimilarityConfig,
    PipelineConfig, StatsConfig, Settings,
)
from .record import SourceLocation, ArgExpr, CallSiteRecord, DeclarationRecord, ProjectRecord
from .warning import CandidateWarning, CoverEvidence, StatisticalEvidence, Warning
from .enum import ArgKind, Origin, FilterName

__all__ = [
    "Thresholds", "FilterConfig", "NamingConfig", "SimilarityConfig",
    "PipelineConfig", "StatsConfig", "Settings",
    "SourceLocation", "ArgExpr", "CallSiteRecord", "DeclarationRecord", "ProjectRecord",
    "CandidateWarning", "CoverEvidence", "StatisticalEvidence", "Warning",
    "ArgKind", "Origin", "FilterName",
]
