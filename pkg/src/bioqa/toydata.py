"""Seeded synthetic corpus in BioASQ JSON layout, for demos and tests."""

from __future__ import annotations

import random
from pathlib import Path

from .corpus import Question, dump_dataset, ExactAnswer

_STEMS = (
    "mitofusin parkin telomerase kinase receptor vaccine colitis gastritis "
    "methyltransferase cytosine inhibitor peptide mitochondria autophagy "
    "lymphoid hyperplasia enzyme tumour promoter protein antibody"
).split()
_FILLER = (
    "the a of in and with was were is are has been study patients results "
    "reported observed shown using data trial cells levels analysis"
).split()
_TYPES = ("summary", "yesno", "factoid", "list")


def _sentence(rng: random.Random, topic: list[str], n_words: int) -> str:
    words = [rng.choice(topic) if rng.random() < 0.4 else rng.choice(_FILLER) for _ in range(n_words)]
    return words[0].capitalize() + " " + " ".join(words[1:]) + "."


def make_question(rng: random.Random, qid: str, qtype: str) -> Question:
    topic = rng.sample(_STEMS, 4) + [f"{rng.choice(_STEMS)}-{rng.randint(1, 9)}"]
    snippets = []
    for _ in range(rng.randint(1, 4)):
        sents = [_sentence(rng, topic, rng.randint(6, 14)) for _ in range(rng.randint(1, 4))]
        snippets.append(" ".join(sents))
    body = f"What is known about {topic[0]} and {topic[1]} in {topic[4]}?"
    all_sents = " ".join(snippets).split(". ")
    ideal = " ".join(rng.sample(all_sents, min(2, len(all_sents)))).rstrip(".") + "."
    if qtype == "summary":
        exact = ExactAnswer()
    elif qtype == "yesno":
        exact = ExactAnswer(((rng.choice(("yes", "no")),),))
    elif qtype == "factoid":
        exact = ExactAnswer((tuple(rng.sample(topic, 2)),))
    else:
        exact = ExactAnswer(tuple((t,) for t in rng.sample(topic, 3)))
    return Question(qid, qtype, body, tuple(snippets), (ideal,), exact)


def make_corpus(n: int, seed: int = 0) -> list[Question]:
    rng = random.Random(seed)
    return [make_question(rng, f"q{i:05d}", _TYPES[i % 4]) for i in range(n)]


def write_corpus(path: str | Path, n: int, seed: int = 0) -> None:
    dump_dataset(make_corpus(n, seed), path)
