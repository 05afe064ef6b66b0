"""Dictionary lookup of roman words, including vowel-omitted (ad-hoc) forms.

Two indexes are kept over the same entries: an exact index keyed by the
roman word, and a skeleton index keyed by the word with its non-initial
vowels removed.  The skeleton index is what lets ``gdr`` or ``gedra`` find
the entry typed in full as ``gedara``: informal romanization drops vowels,
and all such variants collapse onto one skeleton key.

An exact hit shadows skeleton hits entirely; a miss on both is reported as
``None`` so the caller can fall back to rule-based transliteration.
"""

from __future__ import annotations

import bisect
import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Optional, Union

from .errors import DuplicatePair, MalformedEntry
from .rules import _data_lines
from .text_core import _is_word_char, normalize

_VOWELS = frozenset("aeiou")


class Source(Enum):
    """Where a candidate came from."""

    EXACT = "exact"
    SKELETON = "skeleton"
    PREFIX = "prefix"
    RULES = "rules"


@dataclass(frozen=True)
class Candidate:
    text: str
    count: int
    source: Source


@dataclass(frozen=True)
class LexiconEntry:
    roman: str
    native: str
    count: int = 1


class ColumnOrder(Enum):
    ROMAN_FIRST = "roman_first"
    NATIVE_FIRST = "native_first"


def skeleton(roman: str) -> str:
    """Drop all non-initial vowels: ``gedara`` -> ``gdr``, ``amma`` -> ``amm``.

    The character at index 0 is always kept, so vowel-initial words stay
    distinguishable.  Words without non-initial vowels are fixed points.
    """
    if not roman:
        return roman
    return roman[0] + "".join(ch for ch in roman[1:] if ch not in _VOWELS)


class Lexicon:
    """Immutable two-index dictionary built by :func:`build_lexicon`."""

    def __init__(
        self,
        exact_index: dict[str, list[tuple[str, int]]],
        skeleton_index: dict[str, list[tuple[str, int]]],
    ):
        self._exact = exact_index
        self._skeleton = skeleton_index
        self._sorted_keys = sorted(exact_index)

    def __len__(self) -> int:
        return sum(len(v) for v in self._exact.values())

    def lookup(self, word: str) -> Optional[list[Candidate]]:
        """Exact hit, else skeleton hit, else ``None`` (miss).

        Returned candidate lists are never empty and are ordered by
        descending count (ties keep entry order).
        """
        hit = self._exact.get(word)
        if hit is not None:
            return [Candidate(n, c, Source.EXACT) for n, c in hit]
        hit = self._skeleton.get(skeleton(word))
        if hit is not None:
            return [Candidate(n, c, Source.SKELETON) for n, c in hit]
        return None

    def prefix_candidates(self, prefix: str, limit: int) -> list[Candidate]:
        """Candidates for every exact key extending ``prefix``, best first.

        Used for live typing on an incomplete word.  Candidates from all
        matching keys are pooled, deduplicated by native string (keeping the
        max count), ordered by descending count, and capped at ``limit``.
        """
        if not prefix or limit < 1:
            return []
        pooled: dict[str, int] = {}
        order: list[str] = []
        start = bisect.bisect_left(self._sorted_keys, prefix)
        for key in self._sorted_keys[start:]:
            if not key.startswith(prefix):
                break
            for native, count in self._exact[key]:
                if native in pooled:
                    pooled[native] = max(pooled[native], count)
                else:
                    pooled[native] = count
                    order.append(native)
        ranked = sorted(order, key=lambda n: -pooled[n])
        return [Candidate(n, pooled[n], Source.PREFIX) for n in ranked[:limit]]


def build_lexicon(entries: Iterable[LexiconEntry]) -> Lexicon:
    """Build both indexes from an entry stream.

    Duplicate (roman, native) pairs are rejected.  Within the skeleton index
    the same native word reachable from several roman spellings is merged,
    keeping the maximum count.
    """
    exact: dict[str, list[tuple[str, int]]] = {}
    skel: dict[str, dict[str, int]] = {}
    skel_order: dict[str, list[str]] = {}
    seen: set[tuple[str, str]] = set()
    for entry in entries:
        pair = (entry.roman, entry.native)
        if pair in seen:
            raise DuplicatePair(entry.roman, entry.native)
        seen.add(pair)
        exact.setdefault(entry.roman, []).append((entry.native, entry.count))
        key = skeleton(entry.roman)
        bucket = skel.setdefault(key, {})
        if entry.native in bucket:
            bucket[entry.native] = max(bucket[entry.native], entry.count)
        else:
            bucket[entry.native] = entry.count
            skel_order.setdefault(key, []).append(entry.native)

    exact_index = {
        roman: sorted(items, key=lambda item: -item[1]) for roman, items in exact.items()
    }
    skeleton_index = {
        key: sorted(
            ((native, skel[key][native]) for native in order),
            key=lambda item: -item[1],
        )
        for key, order in skel_order.items()
    }
    return Lexicon(exact_index, skeleton_index)


def parse_entries(
    source: Union[str, bytes, IO],
    columns: ColumnOrder = ColumnOrder.ROMAN_FIRST,
) -> list[LexiconEntry]:
    """Parse lexicon-TSV: ``roman<TAB>native[<TAB>count]``.

    ``NATIVE_FIRST`` swaps the first two columns (the order used by
    Dakshina-style lexicon dumps).  A missing count column defaults to 1.
    """
    entries: list[LexiconEntry] = []
    for line_no, line in _data_lines(source):
        cols = line.split("\t")
        if len(cols) not in (2, 3):
            raise MalformedEntry(line_no, f"expected 2 or 3 columns, got {len(cols)}")
        if columns is ColumnOrder.ROMAN_FIRST:
            raw_roman, raw_native = cols[0], cols[1]
        else:
            raw_native, raw_roman = cols[0], cols[1]
        roman = normalize(raw_roman)
        # Native side is NFC-normalized but never lowercased.
        native = unicodedata.normalize("NFC", raw_native).strip()
        if not roman or not native:
            raise MalformedEntry(line_no, "empty roman or native field")
        if not all(_is_word_char(ch) for ch in roman):
            raise MalformedEntry(line_no, f"roman word {roman!r} contains non-word characters")
        if " " in native:
            raise MalformedEntry(line_no, "native field must be a single word")
        count = 1
        if len(cols) == 3:
            try:
                count = int(cols[2])
            except ValueError:
                raise MalformedEntry(line_no, f"bad count {cols[2]!r}") from None
            if count < 0:
                raise MalformedEntry(line_no, f"negative count {count}")
        entries.append(LexiconEntry(roman, native, count))
    return entries


def load_lexicon(
    source: Union[str, bytes, IO],
    columns: ColumnOrder = ColumnOrder.ROMAN_FIRST,
) -> Lexicon:
    return build_lexicon(parse_entries(source, columns))
