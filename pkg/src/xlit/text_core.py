"""Unicode normalization, word/passthrough tokenization, and detokenization.

Every piece of text entering the engine goes through :func:`normalize` first,
so rule keys, lexicon keys and metric references all compare in the same
form: NFC, roman letters lowercased, whitespace runs collapsed to one space.

Tokenization splits a normalized sentence into maximal runs of word
characters and non-word characters.  Word characters are Unicode alphabetic
codepoints plus the apostrophe, plus combining marks and the zero-width
(non-)joiners: Indic scripts encode dependent vowels and viramas as combining
marks (and conjuncts via ZWJ), and those must stay inside the word they
modify.  Everything else (digits, punctuation, emoji, spaces) forms
passthrough runs that are preserved verbatim through transliteration.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import MissingOutput

_WHITESPACE_RE = re.compile(r"\s+")

# Combining marks (dependent vowels, viramas, nuktas) and the zero-width
# joiners used for Indic conjuncts count as word characters.
_MARK_CATEGORIES = ("Mn", "Mc", "Me")
_ZERO_WIDTH_JOINERS = ("‌", "‍")


class TokenKind(Enum):
    WORD = "word"
    PASSTHROUGH = "passthrough"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind
    position: int


@lru_cache(maxsize=4096)
def _is_word_char(ch: str) -> bool:
    if ch.isalpha() or ch == "'" or ch in _ZERO_WIDTH_JOINERS:
        return True
    return unicodedata.category(ch) in _MARK_CATEGORIES


@lru_cache(maxsize=4096)
def _lower_roman(ch: str) -> str:
    # Only Latin-script letters are lowercased; native-script text (and any
    # other cased script) passes through so references compare byte-exactly.
    lowered = ch.lower()
    if lowered != ch and unicodedata.name(ch, "").startswith("LATIN"):
        return lowered
    return ch


def normalize(raw: str) -> str:
    """NFC-normalize, lowercase roman letters, collapse whitespace.

    Idempotent: normalizing an already-normalized string is a no-op.
    Empty input yields the empty string.
    """
    text = unicodedata.normalize("NFC", raw)
    text = "".join(_lower_roman(ch) for ch in text)
    text = unicodedata.normalize("NFC", text)
    return _WHITESPACE_RE.sub(" ", text).strip()


def tokenize(text: str) -> list[Token]:
    """Split normalized text into maximal word/passthrough runs.

    Concatenating the token surfaces in position order reproduces the
    input exactly; adjacent tokens never share a kind.
    """
    tokens: list[Token] = []
    run_start = 0
    run_is_word: bool | None = None
    for i, ch in enumerate(text):
        is_word = _is_word_char(ch)
        if run_is_word is None:
            run_is_word = is_word
        elif is_word != run_is_word:
            kind = TokenKind.WORD if run_is_word else TokenKind.PASSTHROUGH
            tokens.append(Token(text[run_start:i], kind, len(tokens)))
            run_start = i
            run_is_word = is_word
    if run_is_word is not None:
        kind = TokenKind.WORD if run_is_word else TokenKind.PASSTHROUGH
        tokens.append(Token(text[run_start:], kind, len(tokens)))
    return tokens


def detokenize(tokens: Iterable[Token], outputs: Mapping[int, str]) -> str:
    """Rebuild a sentence, replacing word surfaces by their outputs.

    Passthrough surfaces are emitted verbatim regardless of ``outputs``.
    Raises :class:`MissingOutput` if a word position has no output.
    """
    parts: list[str] = []
    for token in tokens:
        if token.kind is TokenKind.WORD:
            if token.position not in outputs:
                raise MissingOutput(token.position)
            parts.append(outputs[token.position])
        else:
            parts.append(token.surface)
    return "".join(parts)


def word_tokens(sentence: str) -> list[str]:
    """Normalize a raw sentence and return just its word surfaces."""
    return [t.surface for t in tokenize(normalize(sentence)) if t.kind is TokenKind.WORD]
