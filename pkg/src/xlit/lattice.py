"""Candidate lattice over a sentence and bounded argmax selection.

Each word token owns a slot holding its ranked native candidates;
passthrough tokens own a slot pinned to their surface.  Selection works
chunk by chunk: the lattice is partitioned greedily left to right so the
product of candidate counts inside a chunk never exceeds a cap (a single
over-wide slot forms its own chunk), then every combination inside a chunk
is enumerated and scored, with the winning tokens of earlier chunks feeding
later chunks as left context.  There is no lookahead across a chunk
boundary: the cap trades global optimality for a bounded number of scorer
calls.  When the whole lattice fits under the cap this is exact brute-force
argmax.

Ties are broken toward the lexicographically smallest candidate-index
vector, which prefers higher-frequency candidates and keeps selection
deterministic regardless of score evaluation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional

from .errors import ScorerUnavailable
from .scoring import SequenceScorer
from .text_core import TokenKind


@dataclass(frozen=True)
class Slot:
    """One lattice position: a word's candidates or a pinned passthrough."""

    position: int
    kind: TokenKind
    candidates: tuple[str, ...]

    def width(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class Chunk:
    """A contiguous slot range enumerated in one pass.

    ``combinations`` is the product of candidate counts in [start, stop).
    """

    start: int
    stop: int
    combinations: int


def filter_candidates(slot: Slot, top_k: int) -> Slot:
    """Keep the first ``top_k`` candidates of a word slot.

    Candidate order already encodes descending frequency, so a prefix is the
    filtering mechanism.  Passthrough slots are pinned and never filtered.
    """
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    if slot.kind is TokenKind.PASSTHROUGH or len(slot.candidates) <= top_k:
        return slot
    return replace(slot, candidates=slot.candidates[:top_k])


def chunk_lattice(slots: list[Slot], max_combinations: int) -> list[Chunk]:
    """Greedy left-to-right partition under the combination cap.

    A chunk grows while the running product of widths stays within
    ``max_combinations``; a single slot wider than the cap still gets its
    own chunk (filtering is expected to have reduced it already).
    """
    if max_combinations < 1:
        raise ValueError(f"max_combinations must be >= 1, got {max_combinations}")
    chunks: list[Chunk] = []
    start = 0
    product = 1
    for i, slot in enumerate(slots):
        width = slot.width()
        if i > start and product * width > max_combinations:
            chunks.append(Chunk(start, i, product))
            start = i
            product = width
        else:
            product *= width
    if start < len(slots):
        chunks.append(Chunk(start, len(slots), product))
    return chunks


def select(
    slots: list[Slot],
    scorer: Optional[SequenceScorer],
    max_combinations: int,
) -> dict[int, int]:
    """Choose one candidate per slot, maximizing the chunk-wise score.

    Returns a map from slot position to chosen candidate index (passthrough
    slots map to 0).  Chunks with a single combination are taken without
    consulting the scorer; a multi-combination chunk with no scorer at all
    raises :class:`ScorerUnavailable`.
    """
    assignment: dict[int, int] = {}
    context: list[str] = []
    for chunk in chunk_lattice(slots, max_combinations):
        chunk_slots = slots[chunk.start : chunk.stop]
        word_slots = [s for s in chunk_slots if s.kind is TokenKind.WORD]
        if chunk.combinations == 1:
            for slot in chunk_slots:
                assignment[slot.position] = 0
            context.extend(s.candidates[0] for s in word_slots)
            continue
        if scorer is None:
            raise ScorerUnavailable("ambiguous lattice but no scorer configured")
        size = scorer.context_size
        if size is None:
            prefix = list(context)
        else:
            prefix = context[-size:] if size > 0 else []
        index_vectors = list(itertools.product(*(range(s.width()) for s in word_slots)))
        sequences = [
            prefix + [s.candidates[i] for s, i in zip(word_slots, vector)]
            for vector in index_vectors
        ]
        scores = scorer.score_batch(sequences)
        best = 0
        for i in range(1, len(index_vectors)):
            if scores[i] > scores[best]:
                best = i
        winner = index_vectors[best]
        for slot in chunk_slots:
            assignment[slot.position] = 0
        for slot, index in zip(word_slots, winner):
            assignment[slot.position] = index
        context.extend(s.candidates[i] for s, i in zip(word_slots, winner))
    return assignment
