"""Exception types shared across the package.

Loader errors carry the 1-based line number of the offending input line so
CLI messages can point at the exact spot in a data file.
"""


class XlitError(Exception):
    """Base class for all package-specific errors."""


class MalformedLine(XlitError):
    """A data-file line does not have the expected shape."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class MalformedEntry(MalformedLine):
    """A lexicon entry violates the entry invariants."""


class EmptyKey(MalformedLine):
    """A rule line has an empty key."""

    def __init__(self, line_no: int):
        super().__init__(line_no, "empty rule key")


class DuplicateKey(XlitError):
    """The same rule key appears twice in one table."""

    def __init__(self, key: str, line_no: int):
        super().__init__(f"duplicate rule key {key!r} at line {line_no}")
        self.key = key
        self.line_no = line_no


class DuplicatePair(XlitError):
    """The same (roman, native) pair appears twice in one lexicon."""

    def __init__(self, roman: str, native: str):
        super().__init__(f"duplicate lexicon pair ({roman!r}, {native!r})")
        self.roman = roman
        self.native = native


class MissingOutput(XlitError):
    """Detokenization was not given an output for a word position."""

    def __init__(self, position: int):
        super().__init__(f"no output for word token at position {position}")
        self.position = position


class EmptyCorpus(XlitError):
    """A training corpus or evaluation corpus yielded no usable sentences."""


class EmptyFile(XlitError):
    """A data file contained no entries."""


class EmptyReference(XlitError):
    """A metric reference sentence is empty."""


class CountMismatch(XlitError):
    """Hypothesis count does not match reference pair count."""

    def __init__(self, hypotheses: int, pairs: int):
        super().__init__(f"{hypotheses} hypotheses for {pairs} reference pairs")
        self.hypotheses = hypotheses
        self.pairs = pairs


class ScorerUnavailable(XlitError):
    """No scorer can be reached (or none is configured) when one is needed."""


class MalformedResponse(XlitError):
    """An external scorer returned an unusable response."""


class ConfigMissing(XlitError):
    """A required pipeline resource is absent from the configuration."""

    def __init__(self, resource: str):
        super().__init__(f"missing required resource: {resource}")
        self.resource = resource
