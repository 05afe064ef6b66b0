"""WER / CER / BLEU evaluation over reference/hypothesis pairs.

Conventions, since they change the numbers:

* WER and CER are micro-averaged over a test set: total edit distance
  divided by total reference length, not the mean of per-sentence rates.
* WER counts word tokens (punctuation and digits are passthrough and
  excluded); CER counts codepoints of the normalized sentence, spaces
  included.
* BLEU is corpus-level with n-gram orders 1..4, uniform weights, no
  smoothing, and brevity penalty exp(1 - ref_len/hyp_len) when the
  hypothesis side is shorter.  An order with hypothesis n-grams but zero
  matches makes the whole score 0; orders with no hypothesis n-grams at all
  (every hypothesis shorter than n) drop out of the geometric mean.

Text reports repeat these conventions in a footer so numbers are never
quoted without their definition.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass
from enum import Enum
from typing import IO, Sequence, Union

from .errors import CountMismatch, EmptyCorpus, EmptyFile, EmptyReference, MalformedLine
from .lexicon import ColumnOrder
from .rules import _data_lines
from .text_core import normalize, word_tokens


@dataclass(frozen=True)
class EvalPair:
    source: str
    reference: str


@dataclass(frozen=True)
class EvalRow:
    system: str
    test_set: str
    wer: float
    cer: float
    bleu: float
    pair_count: int


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[EvalRow, ...]


class ReportFormat(Enum):
    TEXT = "text"
    JSON = "json"


def edit_distance(reference: Sequence, hypothesis: Sequence) -> int:
    """Levenshtein distance (unit-cost insert/delete/substitute)."""
    if len(reference) < len(hypothesis):
        reference, hypothesis = hypothesis, reference
    previous = list(range(len(hypothesis) + 1))
    for i, ref_item in enumerate(reference, start=1):
        current = [i]
        for j, hyp_item in enumerate(hypothesis, start=1):
            if ref_item == hyp_item:
                current.append(previous[j - 1])
            else:
                current.append(1 + min(previous[j - 1], previous[j], current[-1]))
        previous = current
    return previous[-1]


def wer(reference: str, hypothesis: str) -> float:
    """Word-level edit distance over reference word count.  May exceed 1."""
    ref_tokens = word_tokens(reference)
    if not ref_tokens:
        raise EmptyReference(f"reference {reference!r} has no word tokens")
    return edit_distance(ref_tokens, word_tokens(hypothesis)) / len(ref_tokens)


def cer(reference: str, hypothesis: str) -> float:
    """Codepoint-level edit distance over reference length (normalized forms)."""
    ref_norm = normalize(reference)
    if not ref_norm:
        raise EmptyReference(f"reference {reference!r} is empty after normalization")
    return edit_distance(ref_norm, normalize(hypothesis)) / len(ref_norm)


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(pairs: Sequence[tuple[str, str]], max_order: int = 4) -> float:
    """Corpus-level BLEU over (reference, hypothesis) sentence pairs."""
    if not pairs:
        raise EmptyCorpus("no pairs to score")
    matched = [0] * max_order
    total = [0] * max_order
    ref_len = 0
    hyp_len = 0
    for reference, hypothesis in pairs:
        ref_tokens = word_tokens(reference)
        hyp_tokens = word_tokens(hypothesis)
        ref_len += len(ref_tokens)
        hyp_len += len(hyp_tokens)
        for n in range(1, max_order + 1):
            hyp_ngrams = _ngrams(hyp_tokens, n)
            if not hyp_ngrams:
                continue
            ref_ngrams = _ngrams(ref_tokens, n)
            total[n - 1] += sum(hyp_ngrams.values())
            matched[n - 1] += sum(
                min(count, ref_ngrams[gram]) for gram, count in hyp_ngrams.items()
            )
    log_precisions = []
    for n in range(max_order):
        if total[n] == 0:
            continue
        if matched[n] == 0:
            return 0.0
        log_precisions.append(math.log(matched[n] / total[n]))
    if not log_precisions:
        return 0.0
    geometric_mean = math.exp(math.fsum(log_precisions) / len(log_precisions))
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return brevity * geometric_mean


def load_pairs(
    source: Union[str, bytes, IO],
    columns: ColumnOrder = ColumnOrder.ROMAN_FIRST,
) -> list[EvalPair]:
    """Parse pairs-TSV: two or three columns (third = count, ignored)."""
    pairs: list[EvalPair] = []
    for line_no, line in _data_lines(source):
        cols = line.split("\t")
        if len(cols) not in (2, 3):
            raise MalformedLine(line_no, f"expected 2 or 3 columns, got {len(cols)}")
        first, second = normalize(cols[0]), normalize(cols[1])
        roman, native = (first, second) if columns is ColumnOrder.ROMAN_FIRST else (second, first)
        if not roman or not native:
            raise MalformedLine(line_no, "empty source or reference after normalization")
        pairs.append(EvalPair(source=roman, reference=native))
    if not pairs:
        raise EmptyFile("no pairs in file")
    return pairs


def load_hypotheses(source: Union[str, bytes, IO]) -> list[str]:
    """One hypothesis sentence per line, aligned with the pairs file."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    if not text:
        return []
    if text.endswith("\n"):
        text = text[:-1]
    return [line.rstrip("\r") for line in text.split("\n")]


def evaluate(
    system_name: str,
    hypotheses: Sequence[str],
    pairs: Sequence[EvalPair],
    test_set: str,
) -> EvalRow:
    """Micro-averaged WER/CER plus corpus BLEU for one system on one set."""
    if len(hypotheses) != len(pairs):
        raise CountMismatch(len(hypotheses), len(pairs))
    if not pairs:
        raise EmptyCorpus("no pairs to evaluate")
    word_dist = word_total = 0
    char_dist = char_total = 0
    for hypothesis, pair in zip(hypotheses, pairs):
        ref_tokens = word_tokens(pair.reference)
        ref_norm = normalize(pair.reference)
        if not ref_tokens or not ref_norm:
            raise EmptyReference(f"reference {pair.reference!r} is empty")
        word_dist += edit_distance(ref_tokens, word_tokens(hypothesis))
        word_total += len(ref_tokens)
        char_dist += edit_distance(ref_norm, normalize(hypothesis))
        char_total += len(ref_norm)
    return EvalRow(
        system=system_name,
        test_set=test_set,
        wer=word_dist / word_total,
        cer=char_dist / char_total,
        bleu=bleu([(pair.reference, hyp) for hyp, pair in zip(hypotheses, pairs)]),
        pair_count=len(pairs),
    )


_TEXT_FOOTER = (
    "# WER/CER: micro-averaged (total edit distance / total reference length).\n"
    "# BLEU: corpus-level, orders 1-4, uniform weights, no smoothing.\n"
)


def render_report(report: EvalReport, fmt: ReportFormat = ReportFormat.TEXT) -> str:
    """Render rows as an aligned text table or a JSON array."""
    if fmt is ReportFormat.JSON:
        return json.dumps([asdict(row) for row in report.rows], ensure_ascii=False, indent=2)
    header = ("Team", "Model", "Test", "WER", "CER", "BLEU")
    table_rows = []
    for row in report.rows:
        team, sep, model = row.system.partition(" / ")
        table_rows.append(
            (team, model if sep else "", row.test_set,
             f"{row.wer:.4f}", f"{row.cer:.4f}", f"{row.bleu:.4f}")
        )
    widths = [
        max(len(header[i]), *(len(r[i]) for r in table_rows)) if table_rows else len(header[i])
        for i in range(len(header))
    ]
    lines = ["  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip()]
    for row in table_rows:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(len(header))).rstrip())
    if not table_rows:
        return lines[0] + "\n"
    return "\n".join(lines) + "\n" + _TEXT_FOOTER


def report_from_json(payload: str) -> EvalReport:
    """Inverse of JSON rendering: parse rows back into an :class:`EvalReport`."""
    rows = tuple(EvalRow(**row) for row in json.loads(payload))
    return EvalReport(rows=rows)
