"""Greedy top-k and MMR sentence selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .features import FeatureKind, IdfTable, ParseProvider, ScoredCandidate, similarity
from .textproc import Sentence


@dataclass(frozen=True)
class SelectionConfig:
    k: int
    method: str = "greedy"
    lam: float = 0.5
    redundancy_feature: Optional[FeatureKind] = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.method not in ("greedy", "mmr"):
            raise ValueError(f"unknown selection method {self.method!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.lam}")

    @property
    def label(self) -> str:
        if self.method == "greedy":
            return "greedy"
        label = f"mmr:{self.lam:g}"
        if self.redundancy_feature is not None:
            label += f":{self.redundancy_feature}"
        return label


@dataclass(frozen=True)
class Selection:
    chosen: tuple[int, ...]
    trace: tuple[tuple[int, float], ...]

    def prefix(self, k: int) -> "Selection":
        return Selection(self.chosen[:k], self.trace[:k])


def greedy_select(scored: Sequence[ScoredCandidate], k: int) -> Selection:
    """Top-k by score, descending; ties go to the lower pool index."""
    if not scored:
        raise ValueError("cannot select from an empty pool")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    order = sorted(range(len(scored)), key=lambda i: (-scored[i].score, i))[:k]
    return Selection(tuple(order), tuple((i, scored[i].score) for i in order))


def mmr_select(
    scored: Sequence[ScoredCandidate],
    pool: Sequence[Sentence],
    cfg: SelectionConfig,
    idf: Optional[IdfTable] = None,
    parser: Optional[ParseProvider] = None,
    stopwords: Optional[frozenset] = None,
) -> Selection:
    """Maximal marginal relevance.

    Each step takes the unselected i maximising
    lam * rel(i) - (1 - lam) * max_{j chosen} sim(i, j). The first step has
    no chosen set, so it is the plain relevance argmax. Trace values are the
    marginal scores at the time of picking.
    """
    if not scored:
        raise ValueError("cannot select from an empty pool")
    if len(scored) != len(pool):
        raise ValueError("scored and pool must be parallel sequences")
    if not 0.0 <= cfg.lam <= 1.0:
        raise ValueError(f"lambda must be in [0, 1], got {cfg.lam}")

    kind = cfg.redundancy_feature or scored[0].feature
    lam = cfg.lam
    rel = [c.score for c in scored]
    if stopwords:
        tokens = [[t for t in s.tokens if t not in stopwords] for s in pool]
    else:
        tokens = [s.tokens for s in pool]

    n = len(scored)
    # running max similarity of each candidate to the chosen set
    penalty = [0.0] * n
    remaining = list(range(n))
    chosen: list[int] = []
    trace = []
    for step in range(min(cfg.k, n)):
        best, best_val, best_key = -1, 0.0, 0.0
        for i in remaining:
            if step == 0:
                val = lam * rel[i]
                key = rel[i]
            else:
                val = lam * rel[i] - (1.0 - lam) * penalty[i]
                key = val
            if best < 0 or key > best_key:
                best, best_val, best_key = i, val, key
        chosen.append(best)
        trace.append((best, best_val))
        remaining.remove(best)
        if lam < 1.0:
            for i in remaining:
                penalty[i] = max(penalty[i], similarity(kind, tokens[i], tokens[best], idf, parser))
    return Selection(tuple(chosen), tuple(trace))


def select(
    scored: Sequence[ScoredCandidate],
    pool: Sequence[Sentence],
    cfg: SelectionConfig,
    idf: Optional[IdfTable] = None,
    parser: Optional[ParseProvider] = None,
    stopwords: Optional[frozenset] = None,
) -> Selection:
    if cfg.method == "greedy":
        return greedy_select(scored, cfg.k)
    return mmr_select(scored, pool, cfg, idf, parser, stopwords)
