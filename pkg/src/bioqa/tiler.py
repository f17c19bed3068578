"""Join selected sentences into the answer text."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .selection import Selection
from .textproc import Sentence


@dataclass(frozen=True)
class AnswerText:
    text: str
    word_count: int
    truncated: bool


def tile(
    selection: Selection, pool: Sequence[Sentence], word_budget: Optional[int] = None
) -> AnswerText:
    """Concatenate chosen sentences in selection order with single spaces.

    With a budget, whole sentences are added while the running
    whitespace-word count stays within it. The first sentence is always
    kept, even when it alone is over budget.
    """
    if not selection.chosen:
        raise ValueError("empty selection")
    if word_budget is not None and word_budget < 1:
        raise ValueError(f"word budget must be positive, got {word_budget}")
    for i in selection.chosen:
        if not 0 <= i < len(pool):
            raise IndexError(f"selection index {i} outside pool of {len(pool)}")

    parts: list[str] = []
    words = 0
    truncated = False
    for i in selection.chosen:
        raw = pool[i].raw
        n = len(raw.split())
        if parts and word_budget is not None and words + n > word_budget:
            truncated = True
            break
        parts.append(raw)
        words += n
    text = " ".join(parts)
    return AnswerText(text=text, word_count=len(text.split()), truncated=truncated)
