"""Summary-question tables: greedy vs MMR by k, feature comparison by k,
and Wilcoxon comparisons for k = 4..7.

    python scripts/summary_tables.py --data BioASQ-trainingDataset6b.json --out runs/summary
"""

import argparse

from bioqa.runner import RunConfig, emit_report, rouge_by_k, run_experiment
from bioqa.stats import format_table, significance_table


def print_selection(rows):
    table = [r for r in rouge_by_k(rows) if r["type"] == "summary" and r["feature"] == "jaccard"]
    print("ROUGE-L on summary questions, Jaccard feature")
    print(f"{'k':>3}  {'selector':<10}{'P':>7}{'R':>7}{'F1':>7}")
    for r in sorted(table, key=lambda r: (r["k"], r["selector"])):
        print(f"{r['k']:>3}  {r['selector']:<10}{r['rouge_p']:7.3f}{r['rouge_r']:7.3f}{r['rouge_f1']:7.3f}")


def print_features(rows, features, selector):
    table = {(r["feature"], r["k"]): r["rouge_f1"] for r in rouge_by_k(rows)
             if r["type"] == "summary" and r["selector"] == selector}
    ks = sorted({k for _, k in table})
    print(f"\nROUGE-L F1 by feature ({selector})")
    print(f"{'k':>3}" + "".join(f"{f:>10}" for f in features))
    for k in ks:
        print(f"{k:>3}" + "".join(f"{table[(f, k)]:10.3f}" for f in features))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--data", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--partition", default="dev")
    ap.add_argument("--lam", type=float, default=0.5)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    features = ("jaccard", "dice", "tfidf", "combined")
    cfg = RunConfig(data=args.data, out=args.out, seed=args.seed, partition=args.partition,
                    features=features, selectors=("greedy", "mmr"), lam=args.lam,
                    k_min=1, k_max=10, workers=args.workers)
    report = run_experiment(cfg)
    emit_report(report, args.out)
    mmr = f"mmr:{args.lam:g}"
    print_selection(report.rows)
    print_features(report.rows, features, mmr)
    summary = [r for r in report.rows if r.qtype == "summary"]
    print("\nWilcoxon, recall, greedy vs MMR")
    print(format_table(significance_table(summary, "jaccard/greedy", f"jaccard/{mmr}", range(2, 11),
                                          degenerate="one"), "greedy", "mmr"))
    for other in features[1:]:
        print(f"Wilcoxon, recall, {other} vs jaccard ({mmr})")
        print(format_table(significance_table(summary, f"{other}/{mmr}", f"jaccard/{mmr}", range(4, 8),
                                              degenerate="one"), other, "jaccard"))
