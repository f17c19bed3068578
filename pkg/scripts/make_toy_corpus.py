"""Write a seeded synthetic corpus in BioASQ JSON layout.

    python scripts/make_toy_corpus.py toy.json --n 400 --seed 0
"""

import argparse

from bioqa.toydata import write_corpus

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("path")
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    write_corpus(args.path, args.n, args.seed)
    print(f"wrote {args.n} questions to {args.path}")
