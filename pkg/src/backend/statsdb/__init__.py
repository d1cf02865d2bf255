from .database import (
    CorpusMeta, StatsDB, StatsDBFormatError, StatsDBVersionError,
    argmax_position_gap, build_db, call_keys, has_function, load_db,
    psi_exceeds, save_db, weight,
)
from .morphology import MorphologyHistograms, format_morphology_report, morphology_report

__all__ = [
    "CorpusMeta", "StatsDB", "StatsDBFormatError", "StatsDBVersionError",
    "argmax_position_gap", "build_db", "call_keys", "has_function", "load_db",
    "psi_exceeds", "save_db", "weight",
    "MorphologyHistograms", "format_morphology_report", "morphology_report",
]
