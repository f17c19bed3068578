"""Tokenization, normalization and rule-based sentence splitting."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

# letters/digits (any script) plus hyphen; underscore is a word char in `re`
# so it is excluded explicitly
_TOKEN_RE = re.compile(r"(?:[^\W_]|-)+")

DEFAULT_ABBREVIATIONS = (
    "e.g", "i.e", "fig", "figs", "et al", "vs", "approx", "cf", "resp",
    "ref", "refs", "eq", "vol", "dr",
)

# a terminator run, optional closing brackets/quotes, then whitespace
_BOUNDARY_RE = re.compile(r"[.?!]+[\"')\]]*(\s+)")


def normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text).lower()


def tokenize(text: str, stopwords: Optional[Iterable[str]] = None) -> list[str]:
    """Lowercase ``text`` and split it into letter/digit/hyphen runs.

    Pieces made only of hyphens are dropped along with empty ones. If
    ``stopwords`` is given, matching tokens are removed afterwards.
    """
    tokens = [t for t in _TOKEN_RE.findall(normalize(text)) if t.strip("-")]
    if stopwords:
        stop = stopwords if isinstance(stopwords, (set, frozenset)) else set(stopwords)
        tokens = [t for t in tokens if t not in stop]
    return tokens


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a one-word-per-line UTF-8 stopword file."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = normalize(line.strip())
        if word:
            words.add(word)
    return frozenset(words)


@dataclass(frozen=True)
class Sentence:
    """A candidate sentence with its span inside the source snippet."""

    raw: str
    source_snippet: int = 0
    start: int = 0
    end: int = 0
    tokens: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.tokens:
            object.__setattr__(self, "tokens", tuple(tokenize(self.raw)))


def _ends_with_abbreviation(prefix: str, abbreviations: Sequence[str]) -> bool:
    low = prefix.lower()
    for abbr in abbreviations:
        if low.endswith(abbr):
            before = low[: len(low) - len(abbr)]
            if not before or not before[-1].isalnum():
                return True
    return False


def split_sentences(
    snippet: str,
    source: int = 0,
    abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS,
) -> list[Sentence]:
    """Split a snippet on '.', '?' or '!' followed by whitespace and an
    uppercase letter or digit.

    A period closing one of ``abbreviations`` (matched case-insensitively,
    on a word boundary) never ends a sentence. Leading and trailing
    whitespace of each span is treated as separator.
    """
    abbreviations = tuple(a.lower() for a in abbreviations)
    cuts = []
    for m in _BOUNDARY_RE.finditer(snippet):
        nxt = m.end()
        if nxt >= len(snippet):
            continue
        ch = snippet[nxt]
        if not (ch.isupper() or ch.isdigit()):
            continue
        term_start = m.start()
        if snippet[term_start] == "." and _ends_with_abbreviation(
            snippet[:term_start], abbreviations
        ):
            continue
        cuts.append(m.start(1))

    sentences = []
    begin = 0
    for cut in cuts + [len(snippet)]:
        piece = snippet[begin:cut]
        stripped = piece.strip()
        if stripped:
            lead = len(piece) - len(piece.lstrip())
            start = begin + lead
            sentences.append(
                Sentence(raw=stripped, source_snippet=source, start=start, end=start + len(stripped))
            )
        begin = cut
    return sentences
