from .cover import cover, cover_check, position_pairs
from .pipeline import CheckResult, SwapChecker, deduplicate, fingerprint, run_pipeline, to_warning
from .statistical import statistical_check
from .vetting import vet

__all__ = [
    "cover", "cover_check", "position_pairs",
    "CheckResult", "SwapChecker", "deduplicate", "fingerprint", "run_pipeline", "to_warning",
    "statistical_check", "vet",
]
