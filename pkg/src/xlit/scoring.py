"""Sentence scoring for candidate disambiguation.

The built-in scorer is a backoff n-gram model over native-script word
tokens.  A token is scored by its relative frequency given the longest
counted context; when the (context, token) k-gram was never seen, the score
falls back to the next shorter context multiplied by a fixed backoff factor
(no discounting, so these are ranking scores, not true probabilities).  The
base case is the unigram relative frequency, with one reserved UNK symbol
holding a pseudo-count of 1 so every score stays finite.

Counts are kept for every k-gram window (k = 1..order) over the padded
token sequence, including windows ending in a begin marker: those are the
denominators for sentence-initial contexts, and they guarantee that every
counted k-gram has its (k-1)-gram prefix counted too.

Heavier scorers (e.g. a masked-LM reranker) plug in over HTTP via
:class:`ExternalScorer`, which shares the :class:`SequenceScorer` interface
and can be wrapped with :class:`FallbackScorer` so a dead endpoint degrades
to the built-in model instead of failing the request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Protocol, Sequence, Union

import requests

from .errors import EmptyCorpus, MalformedLine, MalformedResponse, ScorerUnavailable
from . import text_core

BEGIN = "<s>"
END = "</s>"
UNK = "<unk>"

DEFAULT_ORDER = 3
DEFAULT_BACKOFF = 0.4

_MODEL_MAGIC = "XLM"
_MODEL_VERSION = 1


@dataclass(frozen=True)
class SentenceScore:
    """Log10 score of a sentence plus its per-term decomposition.

    ``per_token`` holds one term per input token followed by one term for
    the end-of-sentence marker, so it always has ``len(tokens) + 1`` entries
    and ``logprob`` is exactly their sum.
    """

    logprob: float
    per_token: list[float]


class SequenceScorer(Protocol):
    """Anything that can batch-score token sequences for disambiguation.

    ``context_size`` is how many already-chosen tokens of left context the
    scorer wants prepended to each sequence (``None`` = as many as exist).
    Scores are only compared within one batch; higher is better.
    """

    context_size: Optional[int]

    def score_batch(self, sequences: list[list[str]]) -> list[float]: ...


class NgramModel:
    """Backoff n-gram model over word tokens.

    Immutable after training/loading; safe for concurrent scoring.
    """

    def __init__(
        self,
        order: int,
        counts: dict[tuple[str, ...], int],
        backoff: float = DEFAULT_BACKOFF,
    ):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        self.backoff = backoff
        self.counts = counts
        self.vocab = {g[0] for g in counts if len(g) == 1} - {BEGIN, END}
        # Unigram mass over everything that can be scored: real words, the
        # end marker, and one pseudo-count reserved for UNK.
        self._unigram_total = (
            sum(c for g, c in counts.items() if len(g) == 1 and g[0] != BEGIN) + 1
        )

    @property
    def context_size(self) -> int:
        return self.order - 1

    def _map(self, token: str) -> str:
        return token if token in self.vocab else UNK

    def _term(self, context: tuple[str, ...], token: str) -> float:
        """Log10 backoff term for one token given its (mapped) context."""
        factor = 1.0
        ctx = context
        while ctx:
            count = self.counts.get(ctx + (token,))
            if count:
                denominator = self.counts.get(ctx)
                if denominator:
                    return math.log10(factor * count / denominator)
            ctx = ctx[1:]
            factor *= self.backoff
        if token != UNK and (token,) in self.counts:
            return math.log10(factor * self.counts[(token,)] / self._unigram_total)
        return math.log10(factor / self._unigram_total)

    def score(self, tokens: Sequence[str]) -> SentenceScore:
        """Score a full sentence, including the end-of-sentence term.

        Out-of-vocabulary tokens are mapped to UNK, so the result is finite
        for any input.
        """
        mapped = [self._map(t) for t in tokens]
        padded = [BEGIN] * (self.order - 1) + mapped + [END]
        per_token: list[float] = []
        for i in range(self.order - 1, len(padded)):
            context = tuple(padded[i - self.order + 1 : i])
            per_token.append(self._term(context, padded[i]))
        return SentenceScore(logprob=sum(per_token), per_token=per_token)

    def sequence_logprob(self, tokens: Sequence[str]) -> float:
        """Score a token sequence from sentence start, without the end term.

        This is the disambiguation entry point: candidate chunks are not
        sentence-final, so no end-of-sentence term is added.
        """
        mapped = [self._map(t) for t in tokens]
        padded = [BEGIN] * (self.order - 1) + mapped
        total = 0.0
        for i in range(self.order - 1, len(padded)):
            context = tuple(padded[i - self.order + 1 : i])
            total += self._term(context, padded[i])
        return total

    def score_batch(self, sequences: list[list[str]]) -> list[float]:
        return [self.sequence_logprob(seq) for seq in sequences]

    def save(self, destination: Union[str, IO]) -> None:
        """Write the versioned text model format (UTF-8, LF, sorted lines)."""
        lines = [f"{_MODEL_MAGIC} {_MODEL_VERSION} {self.order} {self.backoff!r}\n"]
        for gram in sorted(self.counts, key=lambda g: (len(g), g)):
            lines.append(f"{len(gram)}\t{' '.join(gram)}\t{self.counts[gram]}\n")
        text = "".join(lines)
        if isinstance(destination, str):
            with open(destination, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            destination.write(text)

    @classmethod
    def load(cls, source: Union[str, IO]) -> "NgramModel":
        if isinstance(source, str):
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            data = source.read()
            text = data.decode("utf-8") if isinstance(data, bytes) else data
        lines = text.splitlines()
        if not lines:
            raise MalformedLine(1, "empty model file")
        header = lines[0].split(" ")
        if len(header) != 4 or header[0] != _MODEL_MAGIC or header[1] != str(_MODEL_VERSION):
            raise MalformedLine(1, f"bad model header {lines[0]!r}")
        order = int(header[2])
        backoff = float(header[3])
        counts: dict[tuple[str, ...], int] = {}
        for line_no, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise MalformedLine(line_no, f"expected 3 columns, got {len(cols)}")
            gram = tuple(cols[1].split(" "))
            if len(gram) != int(cols[0]):
                raise MalformedLine(line_no, f"k={cols[0]} but {len(gram)} tokens")
            counts[gram] = int(cols[2])
        return cls(order=order, counts=counts, backoff=backoff)


def train_ngram(
    corpus: Iterable[str],
    order: int = DEFAULT_ORDER,
    backoff: float = DEFAULT_BACKOFF,
) -> NgramModel:
    """Count all k-grams (k = 1..order) over a corpus of raw sentences.

    Sentences are normalized and tokenized like any other input; sentences
    with no word tokens are skipped.  Each token sequence is padded with
    ``order - 1`` begin markers and one end marker.  Deterministic for a
    given corpus and order.  Raises :class:`EmptyCorpus` if nothing usable
    was seen.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    counts: dict[tuple[str, ...], int] = {}
    trained = False
    for sentence in corpus:
        tokens = text_core.word_tokens(sentence)
        if not tokens:
            continue
        trained = True
        padded = [BEGIN] * (order - 1) + tokens + [END]
        for i in range(len(padded)):
            for k in range(1, min(order, len(padded) - i) + 1):
                gram = tuple(padded[i : i + k])
                counts[gram] = counts.get(gram, 0) + 1
    if not trained:
        raise EmptyCorpus("no sentences with word tokens in training corpus")
    return NgramModel(order=order, counts=counts, backoff=backoff)


def score_batch_external(
    endpoint: str,
    sentences: list[str],
    timeout_ms: int = 1000,
) -> list[float]:
    """POST a batch to an external scorer and return one score per sentence.

    Wire contract: request ``{"sentences": [...]}``, response
    ``{"scores": [...]}`` with the same length, all values finite.  Scores
    are order-preserving and only comparable within a single batch.
    """
    if not sentences:
        raise ValueError("empty batch")
    try:
        response = requests.post(
            endpoint,
            json={"sentences": sentences},
            timeout=timeout_ms / 1000.0,
        )
        response.raise_for_status()
        payload = response.json()
    except (requests.RequestException, ValueError) as exc:
        raise ScorerUnavailable(f"scorer at {endpoint}: {exc}") from exc
    scores = payload.get("scores") if isinstance(payload, dict) else None
    if not isinstance(scores, list) or len(scores) != len(sentences):
        raise MalformedResponse(
            f"expected {len(sentences)} scores, got "
            f"{len(scores) if isinstance(scores, list) else type(scores).__name__}"
        )
    values: list[float] = []
    for s in scores:
        if not isinstance(s, (int, float)) or isinstance(s, bool) or not math.isfinite(s):
            raise MalformedResponse(f"non-finite or non-numeric score {s!r}")
        values.append(float(s))
    return values


class ExternalScorer:
    """HTTP scorer client implementing the :class:`SequenceScorer` interface."""

    def __init__(
        self,
        endpoint: str,
        timeout_ms: int = 1000,
        context_size: Optional[int] = None,
    ):
        self.endpoint = endpoint
        self.timeout_ms = timeout_ms
        self.context_size = context_size

    def score_batch(self, sequences: list[list[str]]) -> list[float]:
        return score_batch_external(
            self.endpoint,
            [" ".join(seq) for seq in sequences],
            timeout_ms=self.timeout_ms,
        )


class FallbackScorer:
    """Try a primary scorer, fall back to a secondary on scorer failure."""

    def __init__(self, primary: SequenceScorer, fallback: SequenceScorer):
        self.primary = primary
        self.fallback = fallback

    @property
    def context_size(self) -> Optional[int]:
        return self.primary.context_size

    def score_batch(self, sequences: list[list[str]]) -> list[float]:
        try:
            return self.primary.score_batch(sequences)
        except (ScorerUnavailable, MalformedResponse):
            return self.fallback.score_batch(sequences)
