"""Real-time reverse transliteration of romanized text to native script.

The pipeline combines a longest-match rule engine, a frequency-ranked
lexicon with vowel-omission (skeleton) lookup, and n-gram context
disambiguation over a per-word candidate lattice, plus a WER/CER/BLEU
evaluation harness and a local HTTP typing service.
"""

from .errors import XlitError
from .lexicon import (
    Candidate,
    ColumnOrder,
    Lexicon,
    LexiconEntry,
    Source,
    build_lexicon,
    load_lexicon,
    skeleton,
)
from .pipeline import Pipeline, PipelineConfig, TransliterationResult
from .rules import RuleTable, load_rules, transliterate_word
from .scoring import ExternalScorer, NgramModel, SentenceScore, train_ngram
from .text_core import Token, TokenKind, detokenize, normalize, tokenize

__all__ = [
    "Candidate",
    "ColumnOrder",
    "ExternalScorer",
    "Lexicon",
    "LexiconEntry",
    "NgramModel",
    "Pipeline",
    "PipelineConfig",
    "RuleTable",
    "SentenceScore",
    "Source",
    "Token",
    "TokenKind",
    "TransliterationResult",
    "XlitError",
    "build_lexicon",
    "detokenize",
    "load_lexicon",
    "load_rules",
    "normalize",
    "skeleton",
    "tokenize",
    "train_ngram",
    "transliterate_word",
]

__version__ = "0.1.0"
