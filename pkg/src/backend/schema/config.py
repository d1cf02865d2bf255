from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional

from .enum import FilterName

DEFAULT_WHITELIST_WORDS: FrozenSet[str] = frozenset({"swap", "exchange", "rotate", "flip"})


@dataclass
class Thresholds:
    """Decision thresholds of the checkers.

    Attributes:
        alpha1: Cover below this means an argument explains its own parameter badly
        alpha2: Cover above this means an argument explains the other parameter well
        beta: Vetting drops a cover candidate whose arrangement has psi above this
        gamma: Statistical checker needs psi above this for both misplaced morphemes
        sim_threshold: Similarity needed between a misplaced morpheme and the
            position's most characteristic morpheme
    """
    alpha1: float = 0.5
    alpha2: float = 0.75
    beta: float = 1.0
    gamma: float = 5.0
    sim_threshold: float = 0.75

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha1 <= self.alpha2 <= 1.0:
            raise ValueError(f"Need 0 <= alpha1 <= alpha2 <= 1, got {self.alpha1}, {self.alpha2}")
        if self.beta < 0 or self.gamma < 0:
            raise ValueError(f"beta and gamma must be non-negative, got {self.beta}, {self.gamma}")
        if not 0.0 <= self.sim_threshold <= 1.0:
            raise ValueError(f"sim_threshold must lie in [0, 1], got {self.sim_threshold}")

    def as_properties(self) -> Dict[str, float]:
        return {
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "beta": self.beta,
            "gamma": self.gamma,
            "simThreshold": self.sim_threshold,
        }


@dataclass
class FilterConfig:
    """Configuration of the false-positive filters.

    Attributes:
        whitelist_words: Words signalling an intentional swap
        max_swap_distance: Largest allowed |i - j| between swapped positions
        not_rare_count: Flagged calls per caller at which a swap counts as intended
        enabled: Per-filter switch; filters missing from the map are enabled
    """
    whitelist_words: FrozenSet[str] = DEFAULT_WHITELIST_WORDS
    max_swap_distance: int = 2
    not_rare_count: int = 3
    enabled: Dict[FilterName, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.max_swap_distance < 1:
            raise ValueError(f"max_swap_distance must be >= 1, got {self.max_swap_distance}")
        if self.not_rare_count < 2:
            raise ValueError(f"not_rare_count must be >= 2, got {self.not_rare_count}")
        self.whitelist_words = frozenset(word.lower() for word in self.whitelist_words if word)

    def is_enabled(self, name: FilterName) -> bool:
        return self.enabled.get(name, True)

    @classmethod
    def with_disabled(cls, names: Iterable[str], **kwargs) -> "FilterConfig":
        """Build a config with the named filters switched off.

        Raises:
            ValueError: If a name is not a known filter
        """
        enabled = {}
        for name in names:
            try:
                enabled[FilterName(name)] = False
            except ValueError:
                known = ", ".join(f.value for f in FilterName)
                raise ValueError(f"Unknown filter '{name}' (known: {known})") from None
        return cls(enabled=enabled, **kwargs)

    @classmethod
    def all_disabled(cls) -> "FilterConfig":
        return cls(enabled={name: False for name in FilterName})


@dataclass
class NamingConfig:
    """Identifier splitting parameters."""
    min_token_count: int = 5  # frequency needed for a token to be "known"
    min_split_length: int = 4  # shorter tokens are never sub-split
    min_piece_length: int = 2
    max_viable_splits: int = 3
    search_budget: int = 2000
    stop_morphemes: Optional[FrozenSet[str]] = None  # None: the bundled list
    drop_single_letters: bool = True

    def __post_init__(self) -> None:
        if self.min_token_count < 1 or self.min_split_length < 2 or self.max_viable_splits < 1:
            raise ValueError("Invalid naming configuration")
        if self.stop_morphemes is not None:
            self.stop_morphemes = frozenset(m.lower() for m in self.stop_morphemes)


@dataclass(frozen=True)
class SimilarityConfig:
    """Per-character deletion penalties of the similarity metric."""
    vowel_penalty: float = 0.25
    consonant_penalty: float = 1.0
    final_s_penalty: float = 0.0

    def __post_init__(self) -> None:
        if min(self.vowel_penalty, self.consonant_penalty, self.final_s_penalty) < 0:
            raise ValueError("Penalties must be non-negative")


@dataclass
class PipelineConfig:
    """Which of the four checking stages run.

    Attributes:
        enable_cover: Stage 1, cover-based checker
        enable_vetting: Stage 2, statistical vetting of cover candidates
        enable_statistical: Stage 3, statistical checker
        enable_filters: Stage 4, false-positive filtering
    """
    enable_cover: bool = True
    enable_vetting: bool = True
    enable_statistical: bool = True
    enable_filters: bool = True

    @classmethod
    def from_stages(cls, stages: str, **kwargs) -> "PipelineConfig":
        """Parse a digit string such as "1234" or "13".

        Raises:
            ValueError: If the string holds anything but the digits 1-4
        """
        stages = stages.strip()
        if not stages or set(stages) - set("1234"):
            raise ValueError(f"Stages must be a combination of 1-4, got '{stages}'")
        return cls(
            enable_cover="1" in stages,
            enable_vetting="2" in stages,
            enable_statistical="3" in stages,
            enable_filters="4" in stages,
            **kwargs,
        )

    @property
    def stages(self) -> str:
        flags = (self.enable_cover, self.enable_vetting, self.enable_statistical, self.enable_filters)
        return "".join(str(n) for n, on in enumerate(flags, start=1) if on)


@dataclass
class StatsConfig:
    """Statistics database build limits."""
    max_position: int = 32

    def __post_init__(self) -> None:
        if self.max_position < 1:
            raise ValueError(f"max_position must be >= 1, got {self.max_position}")


@dataclass
class Settings:
    """Everything a command needs, after merging flags, config file and environment.

    Attributes:
        thresholds: Checker thresholds
        filters: Filter configuration
        naming: Splitter configuration
        similarity: Similarity penalties
        pipeline: Stage toggles
        stats: Database build limits
        db_path: Statistics database file
        freq_table_path: Frequency table file
        synonyms_path: Synonym pair file
        stoplist_path: Stop-morpheme override file
        jobs: Worker threads for scanning
    """
    thresholds: Thresholds = field(default_factory=Thresholds)
    filters: FilterConfig = field(default_factory=FilterConfig)
    naming: NamingConfig = field(default_factory=NamingConfig)
    similarity: SimilarityConfig = field(default_factory=SimilarityConfig)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    stats: StatsConfig = field(default_factory=StatsConfig)
    db_path: Optional[str] = None
    freq_table_path: Optional[str] = None
    synonyms_path: Optional[str] = None
    stoplist_path: Optional[str] = None
    jobs: int = 1
