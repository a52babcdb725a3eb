"""Dependency-parse album review text into CoNLL-U files.

Reads the same reviews JSONL the clustering pipeline ingests and writes the
CoNLL-U parses it consumes, carrying each review's key in a
``# review_id = <user>|<album>`` comment. The two packages share nothing
but these file formats.
"""

from .adapter import ParseReport, parse_reviews
from .backends import BUILTIN_MODEL, BuiltinBackend, SpacyBackend, get_backend
from .conllu import Row, check_sentence, sentence_lines, validate_file
from .errors import AdapterError, InputError, ModelError
from .reviews import BadRow, ReviewText, iter_reviews

__all__ = [
    "AdapterError",
    "BUILTIN_MODEL",
    "BadRow",
    "BuiltinBackend",
    "InputError",
    "ModelError",
    "ParseReport",
    "ReviewText",
    "Row",
    "SpacyBackend",
    "check_sentence",
    "get_backend",
    "iter_reviews",
    "parse_reviews",
    "sentence_lines",
    "validate_file",
]

__version__ = "0.1.0"
