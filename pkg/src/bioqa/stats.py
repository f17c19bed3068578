"""Paired comparisons: mean difference and the Wilcoxon signed-rank test."""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .metrics import QuestionScore

EXACT_MAX_N = 20


class DegenerateSample(ValueError):
    """All paired differences are zero, so the test is undefined."""


@dataclass(frozen=True)
class PairedSample:
    a: tuple[float, ...]
    b: tuple[float, ...]
    ids: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError(f"length mismatch: {len(self.a)} vs {len(self.b)}")
        if len(self.a) < 2:
            raise ValueError("paired sample needs at least 2 pairs")
        if self.ids is not None and len(self.ids) != len(self.a):
            raise ValueError("ids must align with the scores")

    @classmethod
    def of(cls, a: Iterable[float], b: Iterable[float]) -> "PairedSample":
        return cls(tuple(float(x) for x in a), tuple(float(x) for x in b))

    @classmethod
    def aligned(cls, a: dict, b: dict) -> "PairedSample":
        """Pair two ``{id: score}`` maps; the id sets must match."""
        if set(a) != set(b):
            missing = sorted(set(a) ^ set(b))
            raise ValueError(f"question sets differ, e.g. {missing[:5]}")
        ids = tuple(sorted(a))
        return cls(tuple(float(a[i]) for i in ids), tuple(float(b[i]) for i in ids), ids)


@dataclass(frozen=True)
class WilcoxonResult:
    w_statistic: float
    p_value: float
    n_effective: int
    mean_diff: float
    method: str


def mean_diff(sample: PairedSample) -> float:
    """mean(b) - mean(a)."""
    n = len(sample.a)
    return math.fsum(sample.b) / n - math.fsum(sample.a) / n


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with ties sharing their mean rank."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2 + 1
        for t in range(i, j + 1):
            ranks[order[t]] = r
        i = j + 1
    return ranks


def _exact_lower_tail(doubled: Sequence[int], w2: int) -> float:
    """P(W+ <= w) under random signs, with ranks scaled by 2 to stay integral."""
    counts = {0: 1}
    for r in doubled:
        nxt = Counter(counts)
        for s, c in counts.items():
            nxt[s + r] += c
        counts = nxt
    hits = sum(c for s, c in counts.items() if s <= w2)
    return hits / 2 ** len(doubled)


def wilcoxon_signed_rank(sample: PairedSample, exact_max_n: int = EXACT_MAX_N) -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test on d = b - a.

    Zero differences are dropped. W = min(W+, W-). Up to ``exact_max_n``
    nonzero differences the p-value comes from the exact permutation
    distribution of the (possibly tied) ranks; above that a normal
    approximation with continuity and tie corrections is used.
    """
    diffs = [y - x for x, y in zip(sample.a, sample.b)]
    nz = [d for d in diffs if d != 0]
    if not nz:
        raise DegenerateSample("degenerate sample: all differences are zero")
    n = len(nz)
    ranks = average_ranks([abs(d) for d in nz])
    w_plus = sum(r for r, d in zip(ranks, nz) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, nz) if d < 0)
    w = float(min(w_plus, w_minus))
    md = mean_diff(sample)

    if n <= exact_max_n:
        doubled = [int(round(2 * r)) for r in ranks]
        p = min(1.0, 2.0 * _exact_lower_tail(doubled, int(round(2 * w))))
        return WilcoxonResult(w, p, n, md, "exact")

    mu = n * (n + 1) / 4
    ties = Counter(abs(d) for d in nz)
    var = n * (n + 1) * (2 * n + 1) / 24 - sum(t**3 - t for t in ties.values()) / 48
    if var <= 0:
        return WilcoxonResult(w, 1.0, n, md, "normal_approx")
    # w <= mu always, so the continuity correction moves it up
    z = min(0.0, w - mu + 0.5) / math.sqrt(var)
    p = min(1.0, math.erfc(abs(z) / math.sqrt(2)))
    return WilcoxonResult(w, p, n, md, "normal_approx")


@dataclass(frozen=True)
class ComparisonRow:
    k: int
    base_mean: float
    challenger_mean: float
    mean_diff: float
    p_value: float
    n: int
    n_effective: int
    method: str


TABLE_FIELDS = ("k", "base_mean", "challenger_mean", "mean_diff", "p")


def _metric(row: QuestionScore, metric: str) -> float:
    if metric in ("rouge_p", "precision"):
        return row.rouge.precision
    if metric in ("rouge_r", "recall"):
        return row.rouge.recall
    if metric in ("rouge_f1", "f1"):
        return row.rouge.f1
    if metric in ("soft", "hard"):
        hit = row.soft_hit if metric == "soft" else row.hard_hit
        if hit is None:
            raise ValueError(f"row {row.qid} has no exact-answer {metric} hit")
        return float(hit)
    raise ValueError(f"unknown metric {metric!r}")


def significance_table(
    rows: Sequence[QuestionScore],
    baseline: str,
    challenger: str,
    k_values: Optional[Sequence[int]] = None,
    metric: str = "rouge_r",
    qtype: Optional[str] = None,
    degenerate: str = "error",
) -> list[ComparisonRow]:
    """One row per k comparing two configurations (``feature/selector``).

    ``degenerate="one"`` reports p = 1.0 for identical score vectors
    instead of raising DegenerateSample.
    """
    if degenerate not in ("error", "one"):
        raise ValueError(f"degenerate must be 'error' or 'one', got {degenerate!r}")
    by_cfg: dict = {}
    for r in rows:
        if qtype is not None and r.qtype != qtype:
            continue
        by_cfg.setdefault((r.config_id, r.k), {})[r.qid] = _metric(r, metric)

    if k_values is None:
        k_values = sorted({k for cfg, k in by_cfg if cfg in (baseline, challenger)})
    out = []
    for k in k_values:
        base = by_cfg.get((baseline, k))
        chal = by_cfg.get((challenger, k))
        if not base or not chal:
            raise ValueError(f"no rows for k={k} under {baseline!r} and {challenger!r}")
        sample = PairedSample.aligned(base, chal)
        n = len(sample.a)
        base_mean = math.fsum(sample.a) / n
        chal_mean = math.fsum(sample.b) / n
        try:
            res = wilcoxon_signed_rank(sample)
            p, n_eff, method = res.p_value, res.n_effective, res.method
        except DegenerateSample:
            if degenerate == "error":
                raise
            p, n_eff, method = 1.0, 0, "degenerate"
        out.append(ComparisonRow(k, base_mean, chal_mean, chal_mean - base_mean, p, n, n_eff, method))
    return out


def write_table_csv(table: Sequence[ComparisonRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TABLE_FIELDS + ("n", "n_effective", "method"))
        for r in table:
            w.writerow([r.k, repr(r.base_mean), repr(r.challenger_mean), repr(r.mean_diff),
                        repr(r.p_value), r.n, r.n_effective, r.method])


def format_table(table: Sequence[ComparisonRow], baseline: str = "base", challenger: str = "challenger") -> str:
    """Aligned plain-text rendering with three decimals."""
    head = ["k", baseline, challenger, "mean_diff", "p"]
    body = [[str(r.k), f"{r.base_mean:.3f}", f"{r.challenger_mean:.3f}",
             f"{r.mean_diff:.3f}", f"{r.p_value:.3f}"] for r in table]
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(row, widths)) for row in [head] + body]
    return "\n".join(lines) + "\n"
