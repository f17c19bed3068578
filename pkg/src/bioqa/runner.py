"""Sweep (feature x selector x k) over a partition and write report files."""

from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

from .corpus import CorpusError, Question, candidate_pool, load_dataset, split_dataset
from .features import HeuristicParser, IdfTable, parse_feature, score_pool
from .metrics import QuestionScore, exact_match, rouge_l, write_rows_csv
from .selection import SelectionConfig, select
from .stats import format_table, significance_table, write_table_csv
from .textproc import load_stopwords
from .tiler import tile

log = logging.getLogger(__name__)

EXACT_TYPES = ("yesno", "factoid", "list")


class ConfigError(ValueError):
    pass


def parse_k_range(text: str) -> tuple[int, int]:
    """``5`` or ``1..10`` (also ``1-10``) into an inclusive (lo, hi)."""
    text = str(text).strip()
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return int(lo), int(hi)
    return int(text), int(text)


@dataclass(frozen=True)
class RunConfig:
    data: str
    out: str
    seed: int = 13
    partition: str = "dev"
    features: tuple[str, ...] = ("jaccard",)
    selectors: tuple[str, ...] = ("greedy",)
    lam: float = 0.5
    k_min: int = 1
    k_max: int = 10
    word_budget: Optional[int] = None
    stopwords: Optional[str] = None
    significance_metric: str = "rouge_r"
    significance_qtype: str = "summary"
    workers: int = 1

    def __post_init__(self):
        if not self.features:
            raise ConfigError("feature set is empty")
        if not self.selectors:
            raise ConfigError("selector set is empty")
        if self.partition not in ("dev", "test"):
            raise ConfigError(f"partition must be dev or test, got {self.partition!r}")
        if not 1 <= self.k_min <= self.k_max <= 50:
            raise ConfigError(f"k range {self.k_min}..{self.k_max} not within [1, 50]")
        if self.word_budget is not None and self.word_budget < 1:
            raise ConfigError("word budget must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        try:
            kinds = [str(parse_feature(f)) for f in self.features]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if len(set(kinds)) != len(kinds) or len(set(self.selectors)) != len(self.selectors):
            raise ConfigError("duplicate feature or selector")
        for s in self.selectors:
            if s not in ("greedy", "mmr"):
                raise ConfigError(f"unknown selector {s!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigError(f"lambda must be in [0, 1], got {self.lam}")

    @property
    def k_values(self) -> list[int]:
        return list(range(self.k_min, self.k_max + 1))

    def selection_configs(self) -> list[SelectionConfig]:
        return [SelectionConfig(self.k_max, method=s, lam=self.lam) for s in self.selectors]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["features"] = list(self.features)
        d["selectors"] = list(self.selectors)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        for key in ("features", "selectors"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)


@dataclass
class ExperimentReport:
    config: RunConfig
    rows: list[QuestionScore]
    skipped: list[str] = field(default_factory=list)
    split_sizes: tuple[int, int, int] = (0, 0, 0)
    partition_counts: dict = field(default_factory=dict)
    significance: dict = field(default_factory=dict)

    def rouge_by_k(self) -> list[dict]:
        return rouge_by_k(self.rows)

    def accuracy_by_k(self, qtype: str) -> list[dict]:
        return accuracy_by_k(self.rows, qtype)


def _mean(xs) -> float:
    xs = list(xs)
    return math.fsum(xs) / len(xs)


def _group(rows, qtype=None):
    groups: dict = {}
    for r in rows:
        if qtype is not None and r.qtype != qtype:
            continue
        groups.setdefault((r.qtype, r.feature, r.selector, r.k), []).append(r)
    return groups


def rouge_by_k(rows: Sequence[QuestionScore]) -> list[dict]:
    """Mean ROUGE-L P/R/F1 per (qtype, feature, selector, k)."""
    out = []
    for (qtype, feat, sel, k), grp in sorted(_group(rows).items()):
        out.append({
            "type": qtype, "feature": feat, "selector": sel, "k": k, "n": len(grp),
            "rouge_p": _mean(r.rouge.precision for r in grp),
            "rouge_r": _mean(r.rouge.recall for r in grp),
            "rouge_f1": _mean(r.rouge.f1 for r in grp),
        })
    return out


def accuracy_by_k(rows: Sequence[QuestionScore], qtype: str) -> list[dict]:
    out = []
    for (_, feat, sel, k), grp in sorted(_group(rows, qtype).items()):
        n = len(grp)
        out.append({
            "feature": feat, "selector": sel, "k": k, "n": n,
            "soft": sum(r.soft_hit for r in grp) / n,
            "hard": sum(r.hard_hit for r in grp) / n,
        })
    return out


# per-process state for worker pools
_CTX: dict = {}


def _init_context(features, sel_cfgs, k_values, idf, stopwords, word_budget):
    _CTX.update(
        features=features, sel_cfgs=sel_cfgs, k_values=k_values, idf=idf,
        stopwords=stopwords, word_budget=word_budget, parser=HeuristicParser(),
    )


def _evaluate_question(q: Question):
    """All rows for one question, or None when its pool is empty."""
    c = _CTX
    try:
        pool = candidate_pool(q)
    except CorpusError:
        return None
    rows = []
    for kind in c["features"]:
        scored = score_pool(q, pool, kind, c["idf"], c["parser"], c["stopwords"])
        for cfg in c["sel_cfgs"]:
            full = select(scored, pool, cfg, c["idf"], c["parser"], c["stopwords"])
            for k in c["k_values"]:
                answer = tile(full.prefix(k), pool, c["word_budget"])
                rouge = rouge_l(q.ideal_answers, answer.text)
                soft = hard = None
                if q.qtype in EXACT_TYPES:
                    soft, hard = exact_match(answer.text, q.exact)
                rows.append(QuestionScore(q.id, q.qtype, str(kind), cfg.label, k, rouge, soft, hard))
    return rows


def comparison_pairs(cfg: RunConfig) -> list[tuple[str, str]]:
    """Greedy vs MMR per feature; first feature vs each other per selector."""
    feats = [str(parse_feature(f)) for f in cfg.features]
    labels = [s.label for s in cfg.selection_configs()]
    pairs = []
    if "greedy" in labels and len(labels) > 1:
        mmr = [l for l in labels if l != "greedy"][0]
        pairs += [(f"{f}/greedy", f"{f}/{mmr}") for f in feats]
    for sel in labels:
        pairs += [(f"{feats[0]}/{sel}", f"{f}/{sel}") for f in feats[1:]]
    return pairs


def run_experiment(cfg: RunConfig) -> ExperimentReport:
    """Score, select, tile and evaluate every question of the chosen partition."""
    questions = load_dataset(cfg.data)
    split = split_dataset(questions, cfg.seed)
    part = sorted(split.partition(cfg.partition), key=lambda q: q.id)
    if not part:
        raise ConfigError(f"partition {cfg.partition!r} is empty")

    stopwords = load_stopwords(cfg.stopwords) if cfg.stopwords else None
    features = [parse_feature(f) for f in cfg.features]
    idf = None
    if any(f.needs_idf for f in features):
        docs = []
        for q in split.train:
            try:
                pool = candidate_pool(q)
            except CorpusError:
                continue
            for s in pool:
                docs.append([t for t in s.tokens if t not in stopwords] if stopwords else s.tokens)
        idf = IdfTable.from_documents(docs)

    ctx = (features, cfg.selection_configs(), cfg.k_values, idf, stopwords, cfg.word_budget)
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers, initializer=_init_context, initargs=ctx) as pool_ex:
            results = list(pool_ex.map(_evaluate_question, part, chunksize=4))
    else:
        _init_context(*ctx)
        results = [_evaluate_question(q) for q in part]

    rows: list[QuestionScore] = []
    skipped = []
    counts: dict = {}
    for q, res in zip(part, results):
        if res is None:
            log.warning("question %s has an empty candidate pool; skipped", q.id)
            skipped.append(q.id)
            continue
        counts[q.qtype] = counts.get(q.qtype, 0) + 1
        rows.extend(res)

    report = ExperimentReport(cfg, rows, skipped, split.sizes(), counts)
    sig_rows = [r for r in rows if r.qtype == cfg.significance_qtype]
    if len({r.qid for r in sig_rows}) >= 2:
        for base, chal in comparison_pairs(cfg):
            report.significance[(base, chal)] = significance_table(
                sig_rows, base, chal, cfg.k_values,
                metric=cfg.significance_metric, degenerate="one",
            )
    else:
        log.warning("fewer than 2 %s questions; no significance tables", cfg.significance_qtype)
    return report


def _pair_name(base: str, chal: str) -> str:
    def clean(s):
        return s.replace("/", "-").replace(":", "_")
    return f"{clean(base)}__vs__{clean(chal)}"


def _write_dicts(records: list[dict], columns: Sequence[str], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for rec in records:
            w.writerow([repr(rec[c]) if isinstance(rec[c], float) else rec[c] for c in columns])


def emit_report(report: ExperimentReport, out_dir: str | Path) -> list[Path]:
    """Write the report directory and return the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    path = out / "per_question.csv"
    write_rows_csv(report.rows, path)
    written.append(path)

    path = out / "rouge_by_k.csv"
    _write_dicts(report.rouge_by_k(), ("type", "feature", "selector", "k", "n", "rouge_p", "rouge_r", "rouge_f1"), path)
    written.append(path)

    for qtype in EXACT_TYPES:
        if report.partition_counts.get(qtype):
            path = out / f"accuracy_{qtype}.csv"
            _write_dicts(report.accuracy_by_k(qtype), ("feature", "selector", "k", "n", "soft", "hard"), path)
            written.append(path)

    for (base, chal), table in sorted(report.significance.items()):
        name = _pair_name(base, chal)
        path = out / f"significance_{name}.csv"
        write_table_csv(table, path)
        written.append(path)
        path = out / f"significance_{name}.txt"
        path.write_text(format_table(table, base, chal), encoding="utf-8")
        written.append(path)

    meta = {
        "config": report.config.to_dict(),
        "seed": report.config.seed,
        "partition": report.config.partition,
        "split_sizes": dict(zip(("train", "dev", "test"), report.split_sizes)),
        "partition_counts": dict(sorted(report.partition_counts.items())),
        "skipped": report.skipped,
        "significance": [
            {"baseline": b, "challenger": c, "metric": report.config.significance_metric,
             "qtype": report.config.significance_qtype, "file": f"significance_{_pair_name(b, c)}.csv"}
            for b, c in sorted(report.significance)
        ],
    }
    path = out / "run.json"
    path.write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    written.append(path)
    return written


def load_run_config(path: str | Path) -> RunConfig:
    """Rebuild the RunConfig echoed in a report's run.json."""
    meta = json.loads(Path(path).read_text(encoding="utf-8"))
    return RunConfig.from_dict(meta["config"])


def read_config_file(path: str | Path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out
