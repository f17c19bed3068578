"""Independent reference implementations used only by the tests."""

import itertools
from functools import lru_cache

from scipy.stats import rankdata


def lcs_recursive(x, y):
    """Top-down memoized LCS; shares no code with the bottom-up DP."""
    x, y = tuple(x), tuple(y)

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(x) or j == len(y):
            return 0
        if x[i] == y[j]:
            return 1 + go(i + 1, j + 1)
        return max(go(i + 1, j), go(i, j + 1))

    return go(0, 0)


def lcs_enumerate(x, y):
    """Literal brute force: longest subsequence of x that is also one of y."""

    def is_subseq(s, t):
        it = iter(t)
        return all(c in it for c in s)

    for size in range(min(len(x), len(y)), 0, -1):
        for idx in itertools.combinations(range(len(x)), size):
            if is_subseq([x[i] for i in idx], y):
                return size
    return 0


def rouge_from_lcs(ref, pred, lcs):
    r = lcs / len(ref) if ref else 0.0
    p = lcs / len(pred) if pred else 0.0
    f = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return p, r, f


def wilcoxon_enumerate(a, b):
    """Two-sided p by listing all 2^n sign assignments of the ranked |d|."""
    d = [y - x for x, y in zip(a, b) if y - x != 0]
    ranks = rankdata([abs(v) for v in d])
    w_pos = sum(r for r, v in zip(ranks, d) if v > 0)
    w_neg = sum(r for r, v in zip(ranks, d) if v < 0)
    w_obs = min(w_pos, w_neg)
    total = sum(ranks)
    hits = 0
    for signs in itertools.product((0, 1), repeat=len(d)):
        wp = sum(r for r, s in zip(ranks, signs) if s)
        if min(wp, total - wp) <= w_obs + 1e-9:
            hits += 1
    return w_obs, hits / 2 ** len(d)


def mmr_replay(rel, sim, k, lam):
    """Step-by-step MMR from the definition, given a full similarity matrix."""
    n = len(rel)
    chosen, trace = [], []
    for step in range(min(k, n)):
        best = None
        for i in range(n):
            if i in chosen:
                continue
            if step == 0:
                key = rel[i]
                val = lam * rel[i]
            else:
                val = lam * rel[i] - (1 - lam) * max(sim[i][j] for j in chosen)
                key = val
            if best is None or key > best[0]:
                best = (key, i, val)
        chosen.append(best[1])
        trace.append((best[1], best[2]))
    return chosen, trace


def mmr_exhaustive(rel, sim, k, lam):
    """Among all ordered k-picks, the unique one where every pick is the
    step's argmax (lowest index on ties)."""
    n = len(rel)
    found = []
    for order in itertools.permutations(range(n), min(k, n)):
        ok = True
        for step, pick in enumerate(order):
            prev = order[:step]
            rest = [i for i in range(n) if i not in prev]

            def marginal(i):
                if not prev:
                    return rel[i]
                return lam * rel[i] - (1 - lam) * max(sim[i][j] for j in prev)

            top = max(marginal(i) for i in rest)
            first = min(i for i in rest if marginal(i) == top)
            if pick != first:
                ok = False
                break
        if ok:
            found.append(list(order))
    assert len(found) == 1, found
    return found[0]
