from .extract import extract_name
from .frequency import FrequencyTable, FrequencyTableFormatError, build_frequency_table
from .splitter import (
    MorphemeSet, MorphemeSplitter, argument_morphemes, default_stop_morphemes, eliminate_common,
    english_words, load_stop_morphemes, parameter_morphemes, split,
)
from .tokens import split_identifier

__all__ = [
    "extract_name", "FrequencyTable", "FrequencyTableFormatError", "build_frequency_table",
    "MorphemeSet", "MorphemeSplitter", "argument_morphemes", "default_stop_morphemes", "eliminate_common",
    "english_words", "load_stop_morphemes", "parameter_morphemes", "split", "split_identifier",
]
