"""Greedy longest-match character transliteration for out-of-vocabulary words.

A :class:`RuleTable` maps roman substrings to native-script strings.  A word
is scanned left to right; at each position the longest matching key consumes
its substring, and a character with no matching key is copied to the output
unchanged.  The maximum key length is a property of the loaded table, not a
hard engine limit (shipped tables keep keys short; the engine takes whatever
the data provides).
"""

from __future__ import annotations

import io
import unicodedata
from dataclasses import dataclass, field
from typing import IO, Union

from .errors import DuplicateKey, EmptyKey, MalformedLine
from .text_core import _is_word_char, normalize


@dataclass(frozen=True)
class RuleTable:
    """Immutable roman-substring to native-string mapping."""

    rules: dict[str, str] = field(default_factory=dict)
    max_key_len: int = 0

    def __len__(self) -> int:
        return len(self.rules)


def load_rules(source: Union[str, bytes, IO]) -> RuleTable:
    """Parse a rules-TSV stream into a :class:`RuleTable`.

    Format: UTF-8 lines ``key<TAB>output``; ``#`` starts a comment line;
    blank lines are ignored; LF and CRLF both accepted.  Keys are normalized
    and must be unique and word-class only.
    """
    rules: dict[str, str] = {}
    max_key_len = 0
    for line_no, line in _data_lines(source):
        columns = line.split("\t")
        if len(columns) != 2:
            raise MalformedLine(line_no, f"expected 2 tab-separated columns, got {len(columns)}")
        key = normalize(columns[0])
        # Outputs are native-script strings: NFC only, never lowercased.
        output = unicodedata.normalize("NFC", columns[1])
        if not key:
            raise EmptyKey(line_no)
        if not all(_is_word_char(ch) for ch in key):
            raise MalformedLine(line_no, f"rule key {key!r} contains non-word characters")
        if key in rules:
            raise DuplicateKey(key, line_no)
        rules[key] = output
        max_key_len = max(max_key_len, len(key))
    return RuleTable(rules=rules, max_key_len=max_key_len)


def transliterate_word(word: str, table: RuleTable) -> str:
    """Transliterate one normalized word by greedy longest match.

    Total on any word surface: unmatched characters pass through unchanged,
    and an empty table makes this the identity function.
    """
    rules = table.rules
    out: list[str] = []
    pos = 0
    n = len(word)
    while pos < n:
        matched = False
        for length in range(min(table.max_key_len, n - pos), 0, -1):
            chunk = word[pos : pos + length]
            if chunk in rules:
                out.append(rules[chunk])
                pos += length
                matched = True
                break
        if not matched:
            out.append(word[pos])
            pos += 1
    return "".join(out)


def _data_lines(source: Union[str, bytes, IO]):
    """Yield (line_no, stripped_line) for non-blank, non-comment lines."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    for line_no, raw in enumerate(io.StringIO(text), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield line_no, line
