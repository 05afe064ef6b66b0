"""Shared fixtures: the synthetic rule table, a tiny lexicon, demo data paths."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

from xlit.lexicon import LexiconEntry, build_lexicon
from xlit.rules import RuleTable

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def synthetic_rules() -> RuleTable:
    """The four-rule table used by the longest-match worked examples."""
    return RuleTable(rules={"sh": "X", "s": "Y", "h": "Z", "a": "A"}, max_key_len=2)


@pytest.fixture
def tiny_lexicon():
    """Three entries exercising exact, skeleton, prefix and ranking paths."""
    return build_lexicon(
        [
            LexiconEntry("mama", "na", 10),
            LexiconEntry("mamath", "nb", 4),
            LexiconEntry("gedara", "ga", 6),
        ]
    )


@pytest.fixture(scope="session")
def demo_paths() -> dict[str, Path]:
    return {
        "rules": DATA_DIR / "rules.si.tsv",
        "lexicon": DATA_DIR / "lexicon.si.tsv",
        "corpus": DATA_DIR / "corpus.si.txt",
    }
