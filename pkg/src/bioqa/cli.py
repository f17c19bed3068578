"""Command line: ``bioqa run`` and ``bioqa compare``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus import CorpusError
from .metrics import read_rows_csv
from .runner import ConfigError, RunConfig, emit_report, parse_k_range, read_config_file, run_experiment
from .stats import DegenerateSample, format_table, significance_table, write_table_csv


def _split_list(text: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in text.split(",") if p.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bioqa", description="Extractive biomedical QA experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    # defaults are None so that config-file values survive unless overridden
    run = sub.add_parser("run", help="run a feature x selector x k sweep")
    run.add_argument("--config", help="key=value config file; flags override it")
    run.add_argument("--data")
    run.add_argument("--seed", type=int)
    run.add_argument("--partition", choices=("dev", "test"))
    run.add_argument("--features", help="comma list: jaccard,dice,dice-bigram,tf,tfidf,combined,root:<base>:<w>")
    run.add_argument("--selector", help="greedy, mmr, or greedy,mmr")
    run.add_argument("--lambda", dest="lam", type=float)
    run.add_argument("--k", help="k or a..b")
    run.add_argument("--word-budget", type=int)
    run.add_argument("--stopwords")
    run.add_argument("--metric", help="score compared in significance tables (default rouge_r)")
    run.add_argument("--workers", type=int)
    run.add_argument("--out")

    cmp_ = sub.add_parser("compare", help="significance table from a per_question.csv")
    cmp_.add_argument("--rows", required=True)
    cmp_.add_argument("--baseline", required=True, help="config id, e.g. jaccard/greedy")
    cmp_.add_argument("--challenger", required=True)
    cmp_.add_argument("--k", help="k or a..b (default: every k present)")
    cmp_.add_argument("--metric", default="rouge_r")
    cmp_.add_argument("--qtype", default="summary", help="question type, or 'all'")
    cmp_.add_argument("--degenerate", choices=("error", "one"), default="error")
    cmp_.add_argument("--out", help="also write the table as CSV here")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config:
        values.update(read_config_file(args.config))
    flags = {
        "data": args.data, "seed": args.seed, "partition": args.partition,
        "features": args.features, "selectors": args.selector, "lam": args.lam,
        "k": args.k, "word_budget": args.word_budget, "stopwords": args.stopwords,
        "significance_metric": args.metric, "workers": args.workers, "out": args.out,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    # config files use the flag spellings
    for alias, key in (("selector", "selectors"), ("lambda", "lam"), ("metric", "significance_metric")):
        if alias in values:
            values.setdefault(key, values.pop(alias))

    for key in ("data", "out"):
        if not values.get(key):
            raise ConfigError(f"--{key} is required")
    kw: dict = {"data": str(values["data"]), "out": str(values["out"])}
    if "k" in values:
        kw["k_min"], kw["k_max"] = parse_k_range(values["k"])
    for key in ("features", "selectors"):
        if key in values:
            v = values[key]
            kw[key] = _split_list(v) if isinstance(v, str) else tuple(v)
    for key, conv in (("seed", int), ("lam", float), ("word_budget", int), ("workers", int)):
        if key in values:
            kw[key] = conv(values[key])
    for key in ("partition", "stopwords", "significance_metric"):
        if key in values:
            kw[key] = str(values[key])
    unknown = set(values) - set(kw) - {"k"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**kw)


def cmd_run(args) -> int:
    cfg = config_from_args(args)
    report = run_experiment(cfg)
    manifest = emit_report(report, cfg.out)
    print(f"{len(report.rows)} rows, {len(report.skipped)} skipped questions")
    for path in manifest:
        print(path)
    return 0


def cmd_compare(args) -> int:
    rows = read_rows_csv(args.rows)
    k_values = None
    if args.k:
        lo, hi = parse_k_range(args.k)
        k_values = list(range(lo, hi + 1))
    qtype = None if args.qtype == "all" else args.qtype
    table = significance_table(
        rows, args.baseline, args.challenger, k_values,
        metric=args.metric, qtype=qtype, degenerate=args.degenerate,
    )
    sys.stdout.write(format_table(table, args.baseline, args.challenger))
    if args.out:
        write_table_csv(table, args.out)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "run":
            return cmd_run(args)
        return cmd_compare(args)
    except (ConfigError, CorpusError, DegenerateSample, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
