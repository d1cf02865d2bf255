import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional

from ..naming import FrequencyTable, MorphemeSplitter, extract_name
from ..schema import NamingConfig, ProjectRecord

BUCKETS = ("1", "2", ">=3")


def _empty() -> Dict[str, int]:
    return {bucket: 0 for bucket in BUCKETS}


@dataclass
class MorphologyHistograms:
    """Morpheme-set size distributions of argument and parameter names."""
    arguments: Dict[str, int] = field(default_factory=_empty)
    parameters: Dict[str, int] = field(default_factory=_empty)

    @staticmethod
    def bucket(size: int) -> str:
        return ">=3" if size >= 3 else str(size)


def morphology_report(projects: List[ProjectRecord], freq: FrequencyTable,
                      naming: Optional[NamingConfig] = None) -> MorphologyHistograms:
    """Histogram the morpheme-set sizes of every argument and parameter name.

    Single-letter pieces count here ("cpid" has two morphemes); names that
    yield no morphemes are not counted.
    """
    splitter = MorphemeSplitter(freq, replace(naming or NamingConfig(), drop_single_letters=False))
    report = MorphologyHistograms()

    def count(names: Iterable[Optional[str]], histogram: Dict[str, int]) -> None:
        for name in names:
            size = len(splitter.morphemes_of(name))
            if size:
                histogram[MorphologyHistograms.bucket(size)] += 1

    for project in projects:
        for call in project.call_sites:
            if not call.from_macro_expansion:
                count((extract_name(arg) for arg in call.args), report.arguments)
        for decl in project.declarations:
            count(decl.param_names or [], report.parameters)

    logging.info(f"Morphology: {sum(report.arguments.values())} argument names, "
                 f"{sum(report.parameters.values())} parameter names")
    return report


def format_morphology_report(report: MorphologyHistograms) -> str:
    """Aligned table followed by ``morphemes<TAB>kind<TAB>bucket<TAB>count`` lines."""
    rows = [("arguments", report.arguments), ("parameters", report.parameters)]
    width = max(len(str(v)) for _, hist in rows for v in hist.values())
    width = max(width, 3)
    lines = ["morpheme-set size  " + "  ".join(b.rjust(width) for b in BUCKETS)]
    for kind, hist in rows:
        lines.append(f"{kind:<17}  " + "  ".join(str(hist[b]).rjust(width) for b in BUCKETS))
    lines.append("")
    for kind, hist in rows:
        lines.extend(f"morphemes\t{kind}\t{b}\t{hist[b]}" for b in BUCKETS)
    return "\n".join(lines) + "\n"
