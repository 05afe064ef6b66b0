"""End-to-end sentence transliteration.

normalize -> tokenize -> per-word candidates (lexicon first, rule fallback)
-> disambiguate over the candidate lattice -> detokenize.  Passthrough
tokens (punctuation, digits, whitespace) ride through untouched and are
reinserted in position.

Prefix mode serves live typing: when the input ends mid-word, that word's
candidates are widened to the union of exact, skeleton and prefix matches
so the typist sees likely completions before finishing the word.

A :class:`Pipeline` holds immutable resources; concurrent calls are safe.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from . import lattice as lattice_mod
from .errors import ConfigMissing, MalformedLine
from .lexicon import Candidate, ColumnOrder, Lexicon, Source, load_lexicon
from .rules import RuleTable, load_rules, transliterate_word
from .scoring import ExternalScorer, FallbackScorer, NgramModel, SequenceScorer
from .text_core import TokenKind, detokenize, normalize, tokenize, _is_word_char

DEFAULT_TOP_K = 5
DEFAULT_MAX_COMBINATIONS = 256


@dataclass
class PipelineConfig:
    """Paths and knobs, loadable from a ``key = value`` text file."""

    rules_path: Optional[str] = None
    lexicon_path: Optional[str] = None
    lm_path: Optional[str] = None
    lexicon_columns: ColumnOrder = ColumnOrder.ROMAN_FIRST
    top_k: int = DEFAULT_TOP_K
    max_combinations: int = DEFAULT_MAX_COMBINATIONS
    scorer_url: Optional[str] = None
    scorer_timeout_ms: int = 1000

    @classmethod
    def load(cls, path: str) -> "PipelineConfig":
        """Parse a config file of ``key = value`` lines ('#' comments)."""
        values: dict[str, tuple[int, str]] = {}
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise MalformedLine(line_no, f"expected 'key = value', got {line!r}")
                key, _, value = line.partition("=")
                values[key.strip()] = (line_no, value.strip())
        config = cls()
        str_keys = {
            "rules": "rules_path",
            "lexicon": "lexicon_path",
            "lm": "lm_path",
            "scorer_url": "scorer_url",
        }
        int_keys = {
            "top_k": "top_k",
            "max_combinations": "max_combinations",
            "scorer_timeout_ms": "scorer_timeout_ms",
        }
        for key, (line_no, value) in values.items():
            if key in str_keys:
                setattr(config, str_keys[key], value)
            elif key in int_keys:
                try:
                    setattr(config, int_keys[key], int(value))
                except ValueError:
                    raise MalformedLine(line_no, f"{key} expects an integer, got {value!r}") from None
            elif key == "lexicon_columns":
                try:
                    config.lexicon_columns = ColumnOrder(value)
                except ValueError:
                    raise MalformedLine(line_no, f"unknown column order {value!r}") from None
            else:
                raise MalformedLine(line_no, f"unknown config key {key!r}")
        return config


@dataclass(frozen=True)
class SlotResult:
    """One resolved token in a transliteration result."""

    surface: str
    kind: TokenKind
    candidates: tuple[Candidate, ...]
    chosen_index: int
    incomplete: bool = False


@dataclass(frozen=True)
class TransliterationResult:
    input: str
    output: str
    slots: tuple[SlotResult, ...]
    latency_ms: float


class _NullScorer:
    """Constant scorer used when no model is configured.

    Every combination ties, so the tie-break picks candidate index 0
    everywhere: the highest-frequency candidate wins.
    """

    context_size: Optional[int] = 0

    def score_batch(self, sequences: list[list[str]]) -> list[float]:
        return [0.0] * len(sequences)


class Pipeline:
    """Immutable transliteration resources plus the two entry points."""

    def __init__(
        self,
        rules: Optional[RuleTable] = None,
        lexicon: Optional[Lexicon] = None,
        model: Optional[NgramModel] = None,
        external_scorer: Optional[ExternalScorer] = None,
        top_k: int = DEFAULT_TOP_K,
        max_combinations: int = DEFAULT_MAX_COMBINATIONS,
    ):
        self.rules = rules if rules is not None else RuleTable()
        self.lexicon = lexicon
        self.model = model
        self.external_scorer = external_scorer
        self.top_k = top_k
        self.max_combinations = max_combinations
        self.scorer: SequenceScorer
        if external_scorer is not None and model is not None:
            self.scorer = FallbackScorer(external_scorer, model)
        elif external_scorer is not None:
            self.scorer = FallbackScorer(external_scorer, _NullScorer())
        elif model is not None:
            self.scorer = model
        else:
            self.scorer = _NullScorer()

    @classmethod
    def from_config(cls, config: PipelineConfig) -> "Pipeline":
        """Load all referenced resources; at least one of rules/lexicon must be set."""
        if config.rules_path is None and config.lexicon_path is None:
            raise ConfigMissing("rules or lexicon")
        rules = None
        if config.rules_path is not None:
            with open(config.rules_path, "rb") as fh:
                rules = load_rules(fh)
        lexicon = None
        if config.lexicon_path is not None:
            with open(config.lexicon_path, "rb") as fh:
                lexicon = load_lexicon(fh, config.lexicon_columns)
        model = NgramModel.load(config.lm_path) if config.lm_path is not None else None
        external = (
            ExternalScorer(config.scorer_url, timeout_ms=config.scorer_timeout_ms)
            if config.scorer_url
            else None
        )
        return cls(
            rules=rules,
            lexicon=lexicon,
            model=model,
            external_scorer=external,
            top_k=config.top_k,
            max_combinations=config.max_combinations,
        )

    def _word_candidates(self, word: str) -> list[Candidate]:
        if self.lexicon is not None:
            hit = self.lexicon.lookup(word)
            if hit is not None:
                return hit
        return [Candidate(transliterate_word(word, self.rules), 0, Source.RULES)]

    def _prefix_word_candidates(self, word: str, top_k: int) -> list[Candidate]:
        """Union of exact, skeleton and prefix matches for an unfinished word.

        Duplicated native strings merge keeping the strongest source and the
        maximum count; the merged set is re-ranked by descending count.
        """
        if self.lexicon is None:
            return [Candidate(transliterate_word(word, self.rules), 0, Source.RULES)]
        merged: dict[str, Candidate] = {}
        order: list[str] = []
        exact = self.lexicon.lookup(word) or []
        for candidate in exact + self.lexicon.prefix_candidates(word, top_k):
            existing = merged.get(candidate.text)
            if existing is None:
                merged[candidate.text] = candidate
                order.append(candidate.text)
            elif candidate.count > existing.count:
                merged[candidate.text] = Candidate(
                    candidate.text, candidate.count, existing.source
                )
        if not merged:
            return [Candidate(transliterate_word(word, self.rules), 0, Source.RULES)]
        ranked = sorted(order, key=lambda text: -merged[text].count)
        return [merged[text] for text in ranked]

    def transliterate_sentence(self, raw: str, top_k: Optional[int] = None) -> TransliterationResult:
        return self._run(raw, prefix_mode=False, top_k=top_k)

    def transliterate_prefix(self, raw: str, top_k: Optional[int] = None) -> TransliterationResult:
        """Like :meth:`transliterate_sentence`, but if ``raw`` ends mid-word
        the final word is treated as incomplete and offered completions."""
        return self._run(raw, prefix_mode=True, top_k=top_k)

    def _run(self, raw: str, prefix_mode: bool, top_k: Optional[int]) -> TransliterationResult:
        started = time.perf_counter()
        k = top_k if top_k is not None else self.top_k
        text = normalize(raw)
        tokens = tokenize(text)

        # Completeness of the final word is decided on the raw input: a
        # trailing space means the word is finished, and normalize() would
        # strip that signal away.
        incomplete_position = -1
        if (
            prefix_mode
            and raw
            and _is_word_char(raw[-1])
            and tokens
            and tokens[-1].kind is TokenKind.WORD
        ):
            incomplete_position = tokens[-1].position

        per_slot: list[list[Candidate]] = []
        slots: list[lattice_mod.Slot] = []
        for token in tokens:
            if token.kind is TokenKind.WORD:
                if token.position == incomplete_position:
                    candidates = self._prefix_word_candidates(token.surface, k)
                else:
                    candidates = self._word_candidates(token.surface)
            else:
                candidates = [Candidate(token.surface, 0, Source.EXACT)]
            per_slot.append(candidates)
            slot = lattice_mod.Slot(
                position=token.position,
                kind=token.kind,
                candidates=tuple(c.text for c in candidates),
            )
            slots.append(lattice_mod.filter_candidates(slot, k))

        assignment = lattice_mod.select(slots, self.scorer, self.max_combinations)
        outputs = {
            token.position: slots[i].candidates[assignment[token.position]]
            for i, token in enumerate(tokens)
            if token.kind is TokenKind.WORD
        }
        output = detokenize(tokens, outputs)

        result_slots = tuple(
            SlotResult(
                surface=token.surface,
                kind=token.kind,
                candidates=tuple(per_slot[i][: k if token.kind is TokenKind.WORD else None]),
                chosen_index=assignment[token.position],
                incomplete=token.position == incomplete_position,
            )
            for i, token in enumerate(tokens)
        )
        latency_ms = (time.perf_counter() - started) * 1000.0
        return TransliterationResult(
            input=text, output=output, slots=result_slots, latency_ms=latency_ms
        )

    @property
    def has_rules(self) -> bool:
        return len(self.rules) > 0

    @property
    def has_lexicon(self) -> bool:
        return self.lexicon is not None

    @property
    def has_model(self) -> bool:
        return self.model is not None
