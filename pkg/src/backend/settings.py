import logging
import os
from typing import Callable, Dict, List, Mapping, Optional, TypeVar

from dotenv import dotenv_values

from .naming import load_stop_morphemes
from .schema import FilterConfig, NamingConfig, PipelineConfig, Settings, Thresholds

PREFIX = "ARGSWAP_"

KEYS = (
    "ALPHA1", "ALPHA2", "BETA", "GAMMA", "SIM_THRESHOLD",
    "WHITELIST_WORDS", "DISABLED_FILTERS", "MAX_SWAP_DISTANCE", "NOT_RARE_COUNT",
    "MIN_TOKEN_COUNT", "STAGES", "DB", "FREQ_TABLE", "SYNONYMS", "STOPLIST", "JOBS",
)

T = TypeVar("T")


def _csv(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _layered(config_path: Optional[str], overrides: Mapping[str, object]) -> Dict[str, str]:
    """Raw settings: environment, then the config file, then command-line values."""
    values: Dict[str, str] = {}
    for key in KEYS:
        if PREFIX + key in os.environ:
            values[key] = os.environ[PREFIX + key]
    if config_path:
        if not os.path.isfile(config_path):
            raise FileNotFoundError(f"Config file not found: {config_path}")
        for name, value in dotenv_values(config_path).items():
            key = name[len(PREFIX):] if name.startswith(PREFIX) else None
            if key not in KEYS:
                logging.warning(f"{config_path}: ignoring unknown setting '{name}'")
            elif value is not None:
                values[key] = value
    for key, value in overrides.items():
        if value is not None:
            values[key] = ",".join(value) if isinstance(value, (list, tuple)) else str(value)
    return values


def _get(values: Dict[str, str], key: str, parse: Callable[[str], T], default: T) -> T:
    if key not in values:
        return default
    try:
        return parse(values[key])
    except ValueError:
        raise ValueError(f"Invalid value for {PREFIX}{key}: '{values[key]}'") from None


def load_settings(config_path: Optional[str] = None, overrides: Optional[Mapping[str, object]] = None) -> Settings:
    """Merge defaults, ARGSWAP_* environment variables, a dotenv config file and command-line values.

    Later sources win. ``overrides`` uses the keys of ``KEYS`` and skips
    None values.

    Raises:
        ValueError: For a malformed or out-of-range value
        FileNotFoundError: If the config file does not exist
    """
    values = _layered(config_path, overrides or {})
    defaults = Thresholds()
    thresholds = Thresholds(
        alpha1=_get(values, "ALPHA1", float, defaults.alpha1),
        alpha2=_get(values, "ALPHA2", float, defaults.alpha2),
        beta=_get(values, "BETA", float, defaults.beta),
        gamma=_get(values, "GAMMA", float, defaults.gamma),
        sim_threshold=_get(values, "SIM_THRESHOLD", float, defaults.sim_threshold),
    )

    filter_kwargs = {
        "max_swap_distance": _get(values, "MAX_SWAP_DISTANCE", int, FilterConfig.max_swap_distance),
        "not_rare_count": _get(values, "NOT_RARE_COUNT", int, FilterConfig.not_rare_count),
    }
    if "WHITELIST_WORDS" in values:
        filter_kwargs["whitelist_words"] = frozenset(_csv(values["WHITELIST_WORDS"]))
    filters = FilterConfig.with_disabled(_csv(values.get("DISABLED_FILTERS", "")), **filter_kwargs)

    naming_kwargs = {"min_token_count": _get(values, "MIN_TOKEN_COUNT", int, NamingConfig.min_token_count)}
    stoplist_path = values.get("STOPLIST")
    if stoplist_path:
        naming_kwargs["stop_morphemes"] = load_stop_morphemes(stoplist_path)

    pipeline = PipelineConfig.from_stages(values.get("STAGES", "1234"))
    jobs = _get(values, "JOBS", int, 1)
    if jobs < 1:
        raise ValueError(f"{PREFIX}JOBS must be >= 1, got {jobs}")

    settings = Settings(
        thresholds=thresholds,
        filters=filters,
        naming=NamingConfig(**naming_kwargs),
        pipeline=pipeline,
        db_path=values.get("DB"),
        freq_table_path=values.get("FREQ_TABLE"),
        synonyms_path=values.get("SYNONYMS"),
        stoplist_path=stoplist_path,
        jobs=jobs,
    )
    logging.debug(f"Effective settings: {settings}")
    return settings
