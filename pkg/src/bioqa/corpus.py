"""BioASQ JSON ingestion, candidate pools and the 7:2:1 split."""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from .textproc import DEFAULT_ABBREVIATIONS, Sentence, split_sentences

log = logging.getLogger(__name__)

QUESTION_TYPES = ("summary", "yesno", "factoid", "list")


class CorpusError(Exception):
    pass


class InvalidEntry(CorpusError):
    pass


@dataclass(frozen=True)
class ExactAnswer:
    """Synonym groups; an item is found if any string in its group is."""

    groups: tuple[tuple[str, ...], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.groups)


@dataclass(frozen=True)
class Question:
    id: str
    qtype: str
    body: str
    snippets: tuple[str, ...]
    ideal_answers: tuple[str, ...]
    exact: ExactAnswer = field(default_factory=ExactAnswer)


@dataclass(frozen=True)
class DatasetSplit:
    train: tuple[Question, ...]
    dev: tuple[Question, ...]
    test: tuple[Question, ...]
    seed: int

    def partition(self, name: str) -> tuple[Question, ...]:
        if name not in ("train", "dev", "test"):
            raise ValueError(f"unknown partition {name!r}")
        return getattr(self, name)

    def sizes(self) -> tuple[int, int, int]:
        return len(self.train), len(self.dev), len(self.test)

    def type_counts(self) -> dict[str, dict[str, int]]:
        out = {}
        for name in ("train", "dev", "test"):
            counts = {t: 0 for t in QUESTION_TYPES}
            for q in self.partition(name):
                counts[q.qtype] += 1
            out[name] = counts
        return out


def _strings(value: Any) -> list[str]:
    """Flatten a string / list / nested list into non-empty strings."""
    if value is None:
        return []
    if isinstance(value, str):
        return [value.strip()] if value.strip() else []
    if isinstance(value, (list, tuple)):
        out = []
        for v in value:
            out.extend(_strings(v))
        return out
    raise InvalidEntry(f"expected string or list, got {type(value).__name__}")


def normalize_exact(qtype: str, raw: Any) -> ExactAnswer:
    """Bring the several BioASQ exact_answer shapes into synonym groups."""
    if qtype == "summary":
        return ExactAnswer()
    if qtype == "yesno":
        values = _strings(raw)
        if len(values) != 1 or values[0].lower() not in ("yes", "no"):
            raise InvalidEntry(f"yes/no exact answer must be 'yes' or 'no', got {raw!r}")
        return ExactAnswer(((values[0].lower(),),))
    if qtype == "factoid":
        values = _strings(raw)
        if not values:
            raise InvalidEntry("factoid exact answer is empty")
        return ExactAnswer((tuple(dict.fromkeys(values)),))
    if qtype == "list":
        if isinstance(raw, str):
            raw = [raw]
        if not isinstance(raw, (list, tuple)):
            raise InvalidEntry("list exact answer must be a list")
        groups = []
        for item in raw:
            syns = tuple(dict.fromkeys(_strings(item)))
            if syns:
                groups.append(syns)
        if not groups:
            raise InvalidEntry("list exact answer is empty")
        return ExactAnswer(tuple(groups))
    raise InvalidEntry(f"unknown question type {qtype!r}")


def parse_question(entry: dict) -> Question:
    """Build a Question from one BioASQ entry, raising InvalidEntry."""
    if not isinstance(entry, dict):
        raise InvalidEntry("entry is not an object")
    for key in ("id", "type", "body", "ideal_answer"):
        if key not in entry:
            raise InvalidEntry(f"missing field {key!r}")
    qtype = str(entry["type"]).lower()
    if qtype not in QUESTION_TYPES:
        raise InvalidEntry(f"unknown question type {qtype!r}")
    body = str(entry["body"]).strip()
    if not body:
        raise InvalidEntry("empty body")
    ideal = tuple(_strings(entry["ideal_answer"]))
    if not ideal:
        raise InvalidEntry("no ideal answer")
    if qtype != "summary" and "exact_answer" not in entry:
        raise InvalidEntry(f"{qtype} question without exact_answer")
    exact = normalize_exact(qtype, entry.get("exact_answer"))

    snippets = []
    for snip in entry.get("snippets") or []:
        if isinstance(snip, str):
            snippets.append(snip)
        elif isinstance(snip, dict) and isinstance(snip.get("text"), str):
            snippets.append(snip["text"])
        else:
            raise InvalidEntry("snippet is neither a string nor an object with 'text'")
    return Question(
        id=str(entry["id"]),
        qtype=qtype,
        body=body,
        snippets=tuple(snippets),
        ideal_answers=ideal,
        exact=exact,
    )


def load_dataset(path: str | Path, diagnostics: Optional[list] = None) -> list[Question]:
    """Load a BioASQ training file.

    Invalid entries are logged and skipped; their ``(position, message)``
    pairs are appended to ``diagnostics`` when a list is passed.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CorpusError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("questions"), list):
        raise CorpusError(f"{path}: top-level key 'questions' missing or not a list")

    questions = []
    for pos, entry in enumerate(data["questions"]):
        try:
            questions.append(parse_question(entry))
        except InvalidEntry as exc:
            ident = entry.get("id", "?") if isinstance(entry, dict) else "?"
            log.warning("skipping entry %d (id=%s): %s", pos, ident, exc)
            if diagnostics is not None:
                diagnostics.append((pos, str(exc)))
    if not questions:
        raise CorpusError("zero valid questions")
    return questions


def question_to_dict(q: Question) -> dict:
    entry = {
        "id": q.id,
        "type": q.qtype,
        "body": q.body,
        "snippets": [{"text": s} for s in q.snippets],
        "ideal_answer": list(q.ideal_answers),
    }
    if q.qtype == "yesno":
        entry["exact_answer"] = q.exact.groups[0][0]
    elif q.qtype == "factoid":
        entry["exact_answer"] = [list(q.exact.groups[0])]
    elif q.qtype == "list":
        entry["exact_answer"] = [list(g) for g in q.exact.groups]
    return entry


def dump_dataset(questions: Iterable[Question], path: str | Path) -> None:
    payload = {"questions": [question_to_dict(q) for q in questions]}
    Path(path).write_text(json.dumps(payload, indent=1, ensure_ascii=False), encoding="utf-8")


def split_sizes(n: int) -> tuple[int, int, int]:
    train = n * 7 // 10
    dev = n * 2 // 10
    return train, dev, n - train - dev


def split_dataset(questions: Sequence[Question], seed: int) -> DatasetSplit:
    """Seeded uniform shuffle, then floor(0.7n) / floor(0.2n) / remainder."""
    if len(questions) < 10:
        raise CorpusError(f"need at least 10 questions to split, got {len(questions)}")
    order = list(questions)
    random.Random(seed).shuffle(order)
    n_train, n_dev, _ = split_sizes(len(order))
    return DatasetSplit(
        train=tuple(order[:n_train]),
        dev=tuple(order[n_train : n_train + n_dev]),
        test=tuple(order[n_train + n_dev :]),
        seed=seed,
    )


def split_manifest(split: DatasetSplit) -> dict:
    return {
        "seed": split.seed,
        "train": [q.id for q in split.train],
        "dev": [q.id for q in split.dev],
        "test": [q.id for q in split.test],
    }


def write_split_manifest(split: DatasetSplit, path: str | Path) -> None:
    Path(path).write_text(json.dumps(split_manifest(split), indent=1) + "\n", encoding="utf-8")


def candidate_pool(
    q: Question, abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS
) -> list[Sentence]:
    """All snippet sentences in order, exact duplicate texts dropped."""
    seen = set()
    pool = []
    for i, snippet in enumerate(q.snippets):
        for sent in split_sentences(snippet, source=i, abbreviations=abbreviations):
            if sent.raw in seen:
                continue
            seen.add(sent.raw)
            pool.append(sent)
    if not pool:
        raise CorpusError(f"empty pool for question {q.id}")
    return pool
