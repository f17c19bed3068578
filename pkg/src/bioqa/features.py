"""Question/candidate similarity extractors.

Every extractor takes two token sequences. Set-based ones (Jaccard, Dice)
ignore multiplicity; the cosine ones use raw term counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Protocol, Sequence

from .textproc import Sentence, tokenize

BASE_KINDS = ("jaccard", "dice", "dice_bigram", "tf_cosine", "tfidf_cosine", "combined")
ROOT = "root_augmented"

_CLI_NAMES = {
    "jaccard": "jaccard",
    "dice": "dice",
    "dice-bigram": "dice_bigram",
    "tf": "tf_cosine",
    "tfidf": "tfidf_cosine",
    "combined": "combined",
}
_CLI_BY_KIND = {v: k for k, v in _CLI_NAMES.items()}

DEFAULT_ROOT_WEIGHT = 0.1


@dataclass(frozen=True)
class FeatureKind:
    name: str
    base: Optional["FeatureKind"] = None
    weight: float = 0.0

    def __post_init__(self):
        if self.name == ROOT:
            if self.base is None or self.base.name == ROOT:
                raise ValueError("root_augmented wraps exactly one non-root base feature")
            if not 0.0 <= self.weight <= 1.0:
                raise ValueError(f"root weight must be in [0, 1], got {self.weight}")
        elif self.name not in BASE_KINDS:
            raise ValueError(f"unknown feature kind {self.name!r}")
        elif self.base is not None:
            raise ValueError(f"{self.name} takes no base feature")

    @property
    def needs_idf(self) -> bool:
        if self.name == ROOT:
            return self.base.needs_idf
        return self.name == "tfidf_cosine"

    @property
    def needs_parser(self) -> bool:
        return self.name == ROOT

    def __str__(self) -> str:
        if self.name == ROOT:
            return f"root:{self.base}:{self.weight:g}"
        return _CLI_BY_KIND[self.name]


def parse_feature(text: str) -> FeatureKind:
    """Parse ``jaccard|dice|dice-bigram|tf|tfidf|combined|root:<base>[:<weight>]``."""
    text = text.strip().lower()
    if text.startswith("root:"):
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"bad root feature spec {text!r}")
        weight = float(parts[2]) if len(parts) == 3 else DEFAULT_ROOT_WEIGHT
        return FeatureKind(ROOT, base=parse_feature(parts[1]), weight=weight)
    if text in _CLI_NAMES:
        return FeatureKind(_CLI_NAMES[text])
    if text in BASE_KINDS:
        return FeatureKind(text)
    raise ValueError(f"unknown feature {text!r}")


@dataclass(frozen=True)
class IdfTable:
    doc_count: int
    df: dict = field(default_factory=dict)

    def __post_init__(self):
        for tok, n in self.df.items():
            if not 0 <= n <= self.doc_count:
                raise ValueError(f"df({tok!r})={n} outside [0, {self.doc_count}]")

    @classmethod
    def from_documents(cls, docs: Iterable[Sequence[str]]) -> "IdfTable":
        df = Counter()
        n = 0
        for doc in docs:
            n += 1
            df.update(set(doc))
        return cls(doc_count=n, df=dict(df))

    def idf(self, token: str) -> float:
        return math.log((self.doc_count + 1) / (self.df.get(token, 0) + 1)) + 1.0


def jaccard(a: Sequence[str], b: Sequence[str]) -> float:
    sa, sb = set(a), set(b)
    union = len(sa | sb)
    if not union:
        return 0.0
    return len(sa & sb) / union


def dice(a: Sequence[str], b: Sequence[str]) -> float:
    sa, sb = set(a), set(b)
    total = len(sa) + len(sb)
    if not total:
        return 0.0
    return 2 * len(sa & sb) / total


def _char_bigrams(tokens: Sequence[str]) -> Counter:
    grams = Counter()
    for tok in tokens:
        grams.update(tok[i : i + 2] for i in range(len(tok) - 1))
    return grams


def dice_bigram(a: Sequence[str], b: Sequence[str]) -> float:
    """String Dice over character bigrams taken inside each token:
    2 * shared / (bigrams(a) + bigrams(b)), counted with multiplicity."""
    ga, gb = _char_bigrams(a), _char_bigrams(b)
    total = sum(ga.values()) + sum(gb.values())
    if not total:
        return 0.0
    shared = sum((ga & gb).values())
    return 2 * shared / total


def _cosine(va: dict, vb: dict) -> float:
    na = math.fsum(x * x for x in va.values())
    nb = math.fsum(x * x for x in vb.values())
    if na == 0 or nb == 0:
        return 0.0
    if len(va) > len(vb):
        va, vb = vb, va
    dot = math.fsum(x * vb[t] for t, x in va.items() if t in vb)
    return min(1.0, dot / math.sqrt(na * nb))


def tf_cosine(a: Sequence[str], b: Sequence[str]) -> float:
    return _cosine(Counter(a), Counter(b))


WordSimilarity = Callable[[str, str], float]


def tfidf_cosine(
    a: Sequence[str],
    b: Sequence[str],
    idf: IdfTable,
    word_similarity: Optional[WordSimilarity] = None,
) -> float:
    """Cosine between tf*idf vectors.

    ``word_similarity`` plugs in a symmetric word-to-word similarity
    matrix S (soft cosine a'Sb / sqrt(a'Sa * b'Sb)); None means S = I.
    """
    va = {t: c * idf.idf(t) for t, c in Counter(a).items()}
    vb = {t: c * idf.idf(t) for t, c in Counter(b).items()}
    if word_similarity is None:
        return _cosine(va, vb)

    def form(x, y):
        return math.fsum(
            wx * wy * (1.0 if s == t else word_similarity(s, t))
            for s, wx in x.items()
            for t, wy in y.items()
        )

    na, nb = form(va, va), form(vb, vb)
    if na <= 0 or nb <= 0:
        return 0.0
    return max(0.0, min(1.0, form(va, vb) / math.sqrt(na * nb)))


class ParseProvider(Protocol):
    def root_token(self, tokens: Sequence[str]) -> Optional[str]: ...


_FUNCTION_WORDS = frozenset(
    """a an the of in on at to for from by with and or but not no is are was
    were be been being do does did has have had can could may might will would
    shall should must which what who whom whose when where why how whether
    this that these those it its there their they them than as into about
    any all some such other""".split()
)
_VERB_SUFFIXES = ("ated", "ized", "ised", "ed", "ates", "izes", "ises", "ify", "ifies")
_VERB_WORDS = frozenset(
    """is are was were has have had does do did binds bind causes cause
    targets target inhibits inhibit induces induce increases increase
    reduces reduce regulates regulate mediates mediate encodes encode
    affects affect""".split()
)


class HeuristicParser:
    """Parser-free stand-in for a dependency root.

    Picks the first content token that looks like a verb (suffix lexicon),
    otherwise the first auxiliary/copula, otherwise the middle content token.
    """

    def root_token(self, tokens: Sequence[str]) -> Optional[str]:
        content = [t for t in tokens if t not in _FUNCTION_WORDS]
        for tok in content:
            if len(tok) > 4 and tok.endswith(_VERB_SUFFIXES) and not tok[0].isdigit():
                return tok
        for tok in tokens:
            if tok in _VERB_WORDS:
                return tok
        if content:
            return content[(len(content) - 1) // 2]
        return None


def _base_score(name: str, a, b, idf: Optional[IdfTable]) -> float:
    if name == "jaccard":
        return jaccard(a, b)
    if name == "dice":
        return dice(a, b)
    if name == "dice_bigram":
        return dice_bigram(a, b)
    if name == "tf_cosine":
        return tf_cosine(a, b)
    if name == "tfidf_cosine":
        return tfidf_cosine(a, b, idf)
    if name == "combined":
        return jaccard(a, b) + dice(a, b) + tf_cosine(a, b)
    raise ValueError(name)


def _check_requirements(kind: FeatureKind, idf, parser) -> None:
    if kind.needs_idf and idf is None:
        raise ValueError(f"feature {kind} needs an IdfTable")
    if kind.needs_parser and parser is None:
        raise ValueError(f"feature {kind} needs a ParseProvider")


def similarity(
    kind: FeatureKind,
    a: Sequence[str],
    b: Sequence[str],
    idf: Optional[IdfTable] = None,
    parser: Optional[ParseProvider] = None,
) -> float:
    """Score one token-sequence pair under ``kind``."""
    _check_requirements(kind, idf, parser)
    if kind.name != ROOT:
        return _base_score(kind.name, a, b, idf)
    score = _base_score(kind.base.name, a, b, idf)
    ra, rb = parser.root_token(a), parser.root_token(b)
    if ra is not None and rb is not None and ra == rb:
        score += kind.weight
    return score


@dataclass(frozen=True)
class ScoredCandidate:
    sentence: Sentence
    score: float
    feature: FeatureKind


def score_pool(
    question,
    pool: Sequence[Sentence],
    kind: FeatureKind,
    idf: Optional[IdfTable] = None,
    parser: Optional[ParseProvider] = None,
    stopwords: Optional[frozenset] = None,
) -> list[ScoredCandidate]:
    """Score every pool sentence against the question body, in pool order."""
    _check_requirements(kind, idf, parser)
    q_tokens = tokenize(question.body, stopwords)
    out = []
    for sent in pool:
        tokens = [t for t in sent.tokens if t not in stopwords] if stopwords else sent.tokens
        out.append(ScoredCandidate(sent, similarity(kind, q_tokens, tokens, idf, parser), kind))
    return out
