"""ROUGE-L and soft/hard exact-answer accuracy."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corpus import ExactAnswer
from .textproc import tokenize

CSV_FIELDS = ("qid", "type", "feature", "selector", "k", "rouge_p", "rouge_r", "rouge_f1", "soft", "hard")


@dataclass(frozen=True)
class RougeL:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class AccuracyPair:
    soft: float
    hard: float
    n_questions: int


@dataclass(frozen=True)
class QuestionScore:
    qid: str
    qtype: str
    feature: str
    selector: str
    k: int
    rouge: RougeL
    # None for summary questions, which have no exact answer
    soft_hit: Optional[bool] = None
    hard_hit: Optional[bool] = None

    @property
    def config_id(self) -> str:
        return config_id(self.feature, self.selector)


def config_id(feature: str, selector: str) -> str:
    return f"{feature}/{selector}"


def lcs_length(x: Sequence[str], y: Sequence[str]) -> int:
    if len(x) < len(y):
        x, y = y, x
    if not y:
        return 0
    prev = [0] * (len(y) + 1)
    for xi in x:
        cur = [0]
        for j, yj in enumerate(y, 1):
            if xi == yj:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l_tokens(reference: Sequence[str], prediction: Sequence[str]) -> RougeL:
    lcs = lcs_length(reference, prediction)
    recall = lcs / len(reference) if reference else 0.0
    precision = lcs / len(prediction) if prediction else 0.0
    if precision + recall == 0:
        return RougeL(precision, recall, 0.0)
    return RougeL(precision, recall, 2 * precision * recall / (precision + recall))


def rouge_l(reference: str | Sequence[str], prediction: str) -> RougeL:
    """ROUGE-L (beta = 1) of ``prediction`` against one or more references.

    With several references the triple with the highest F1 wins (first one
    on ties).
    """
    refs = [reference] if isinstance(reference, str) else list(reference)
    if not refs:
        raise ValueError("no reference text")
    pred = tokenize(prediction)
    best = None
    for ref in refs:
        score = rouge_l_tokens(tokenize(ref), pred)
        if best is None or score.f1 > best.f1:
            best = score
    return best


def _contains(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    n = len(needle)
    if n == 0:
        return False
    first = needle[0]
    for i in range(len(haystack) - n + 1):
        if haystack[i] == first and list(haystack[i : i + n]) == list(needle):
            return True
    return False


def exact_match(prediction: str, exact: ExactAnswer) -> tuple[bool, bool]:
    """(soft, hard): some / every synonym group occurs in the prediction.

    A synonym occurs when its token sequence appears contiguously in the
    prediction's tokens, so "no" does not match inside "nonspecific".
    """
    if not exact.groups:
        raise ValueError("exact-answer matching does not apply to summary questions")
    pred = tokenize(prediction)
    matched = [any(_contains(pred, tokenize(syn)) for syn in group) for group in exact.groups]
    return any(matched), all(matched)


def aggregate_accuracy(rows: Sequence[QuestionScore]) -> AccuracyPair:
    if not rows:
        raise ValueError("no rows to aggregate")
    keys = {(r.qtype, r.feature, r.selector, r.k) for r in rows}
    if len(keys) > 1:
        raise ValueError(f"rows mix question types or configurations: {sorted(keys)}")
    if any(r.soft_hit is None for r in rows):
        raise ValueError("rows without exact-answer hits (summary questions)")
    n = len(rows)
    return AccuracyPair(
        soft=sum(r.soft_hit for r in rows) / n,
        hard=sum(r.hard_hit for r in rows) / n,
        n_questions=n,
    )


def _flag(v: Optional[bool]) -> str:
    return "" if v is None else str(int(v))


def _unflag(s: str) -> Optional[bool]:
    return None if s == "" else bool(int(s))


def write_rows_csv(rows: Iterable[QuestionScore], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in rows:
            w.writerow([
                r.qid, r.qtype, r.feature, r.selector, r.k,
                repr(r.rouge.precision), repr(r.rouge.recall), repr(r.rouge.f1),
                _flag(r.soft_hit), _flag(r.hard_hit),
            ])


def read_rows_csv(path: str | Path) -> list[QuestionScore]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_FIELDS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [
            QuestionScore(
                qid=rec["qid"],
                qtype=rec["type"],
                feature=rec["feature"],
                selector=rec["selector"],
                k=int(rec["k"]),
                rouge=RougeL(float(rec["rouge_p"]), float(rec["rouge_r"]), float(rec["rouge_f1"])),
                soft_hit=_unflag(rec["soft"]),
                hard_hit=_unflag(rec["hard"]),
            )
            for rec in reader
        ]
