import math

import pytest
from hypothesis import given, settings, strategies as st

from bioqa.corpus import Question
from bioqa.features import (
    FeatureKind,
    HeuristicParser,
    IdfTable,
    dice,
    dice_bigram,
    jaccard,
    parse_feature,
    score_pool,
    similarity,
    tf_cosine,
    tfidf_cosine,
)
from bioqa.textproc import Sentence

tokens = st.lists(st.sampled_from(list("abcdefgh")), max_size=12)


def test_jaccard_examples():
    assert jaccard("abc", "bcd") == 0.5
    assert jaccard("abc", "cab") == 1.0
    assert jaccard("ab", "cd") == 0.0
    assert jaccard([], []) == 0.0
    assert jaccard(["a", "a", "b"], ["a"]) == 0.5


def test_dice_examples():
    assert dice("abc", "bcd") == pytest.approx(2 / 3)
    assert dice("abc", "abc") == 1.0
    assert dice([], []) == 0.0


def test_tf_cosine_examples():
    assert tf_cosine(list("aab"), list("abb")) == pytest.approx(0.8)
    assert tf_cosine(list("abca"), list("abca")) == pytest.approx(1.0)
    assert tf_cosine(list("ab"), list("cd")) == 0.0
    assert tf_cosine([], list("a")) == 0.0


def test_tfidf_examples():
    idf = IdfTable.from_documents([["a", "b"], ["a"], ["c"]])
    assert idf.doc_count == 3 and idf.df == {"a": 2, "b": 1, "c": 1}
    assert idf.idf("a") == pytest.approx(math.log(4 / 3) + 1)
    assert idf.idf("unseen") == pytest.approx(math.log(4) + 1)
    assert tfidf_cosine(list("abc"), list("abc"), idf) == pytest.approx(1.0)
    assert tfidf_cosine(list("ab"), list("cd"), idf) == 0.0
    uniform = IdfTable(5, {"a": 2, "b": 2, "c": 2})
    assert tfidf_cosine(list("ab"), list("ac"), uniform) == pytest.approx(tf_cosine(list("ab"), list("ac")), abs=1e-12)


def test_idf_table_bounds():
    with pytest.raises(ValueError):
        IdfTable(2, {"a": 3})


def test_tfidf_word_similarity_hook():
    idf = IdfTable(4, {"a": 1, "b": 1})
    identity = lambda s, t: 0.0  # noqa: E731 - off-diagonal zero is plain cosine
    assert tfidf_cosine(["a"], ["b"], idf, identity) == 0.0
    synonyms = lambda s, t: 1.0  # noqa: E731
    assert tfidf_cosine(["a"], ["b"], idf, synonyms) == pytest.approx(1.0)
    half = lambda s, t: 0.5  # noqa: E731
    assert 0.0 < tfidf_cosine(["a"], ["b"], idf, half) < 1.0


def test_dice_bigram():
    # "night" vs "nacht": bigrams ni ig gh ht / na ac ch ht -> 1 shared
    assert dice_bigram(["night"], ["nacht"]) == pytest.approx(2 * 1 / 8)
    assert dice_bigram(["abc"], ["abc"]) == 1.0
    assert dice_bigram(["a"], ["b"]) == 0.0


@given(tokens, tokens)
def test_symmetry_and_bounds(a, b):
    idf = IdfTable.from_documents([a, b, list("abc")])
    for f in (jaccard, dice, tf_cosine, dice_bigram):
        assert f(a, b) == f(b, a)
        assert 0.0 <= f(a, b) <= 1.0
    assert tfidf_cosine(a, b, idf) == pytest.approx(tfidf_cosine(b, a, idf), abs=1e-12)
    assert 0.0 <= tfidf_cosine(a, b, idf) <= 1.0
    comb = similarity(FeatureKind("combined"), a, b)
    assert 0.0 <= comb <= 3.0


@settings(max_examples=300)
@given(tokens, tokens)
def test_dice_jaccard_identity(a, b):
    j = jaccard(a, b)
    assert dice(a, b) == pytest.approx(2 * j / (1 + j), abs=1e-12)


@given(tokens, tokens, st.integers(1, 5))
def test_tf_cosine_scale_invariance(a, b, k):
    assert tf_cosine(a * k, b * k) == pytest.approx(tf_cosine(a, b), abs=1e-12)


@pytest.mark.parametrize(
    "text, name",
    [
        ("jaccard", "jaccard"), ("dice", "dice"), ("dice-bigram", "dice_bigram"),
        ("tf", "tf_cosine"), ("tfidf", "tfidf_cosine"), ("combined", "combined"),
    ],
)
def test_parse_feature(text, name):
    kind = parse_feature(text)
    assert kind.name == name
    assert parse_feature(str(kind)) == kind


def test_parse_root_feature():
    kind = parse_feature("root:jaccard:0.25")
    assert kind == FeatureKind("root_augmented", FeatureKind("jaccard"), 0.25)
    assert str(kind) == "root:jaccard:0.25"
    assert parse_feature("root:tfidf").weight == 0.1
    assert parse_feature("root:tfidf").needs_idf


@pytest.mark.parametrize("bad", ["cosine", "root:root:jaccard:0.1", "root:", "root:jaccard:2"])
def test_parse_feature_rejects(bad):
    with pytest.raises(ValueError):
        parse_feature(bad)


class FixedRoot:
    def __init__(self, root):
        self.root = root

    def root_token(self, tokens):
        return self.root if self.root in tokens else None


def _q(body):
    return Question("q", "summary", body, ("x",), ("y",))


def test_score_pool_combined_identity():
    body = "Trials have demonstrated colitis."
    out = score_pool(_q(body), [Sentence(body)], FeatureKind("combined"))
    assert out[0].score == pytest.approx(3.0)


def test_score_pool_root_bonus():
    q = _q("Which trials demonstrated colitis?")
    pool = [Sentence("Trials demonstrated gastritis."), Sentence("Colitis was seen.")]
    kind = parse_feature("root:jaccard:0.1")
    out = score_pool(q, pool, kind, parser=FixedRoot("demonstrated"))
    base = score_pool(q, pool, FeatureKind("jaccard"))
    assert out[0].score == pytest.approx(base[0].score + 0.1)
    assert out[1].score == pytest.approx(base[1].score)


def test_score_pool_shape_and_purity():
    q = _q("mfn2 parkin receptor")
    pool = [Sentence(f"mfn2 sentence {i} parkin.") for i in range(5)]
    a = score_pool(q, pool, FeatureKind("tf_cosine"))
    b = score_pool(q, pool, FeatureKind("tf_cosine"))
    assert [c.sentence for c in a] == pool
    assert a == b


def test_score_pool_requirements():
    q = _q("x")
    with pytest.raises(ValueError, match="IdfTable"):
        score_pool(q, [Sentence("x.")], FeatureKind("tfidf_cosine"))
    with pytest.raises(ValueError, match="ParseProvider"):
        score_pool(q, [Sentence("x.")], parse_feature("root:jaccard"))


def test_score_pool_stopwords():
    q = _q("the receptor")
    pool = [Sentence("The kinase.")]
    assert score_pool(q, pool, FeatureKind("jaccard"))[0].score == pytest.approx(1 / 3)
    assert score_pool(q, pool, FeatureKind("jaccard"), stopwords=frozenset({"the"}))[0].score == 0.0


def test_heuristic_parser():
    p = HeuristicParser()
    assert p.root_token("endoscopy trials have demonstrated a higher prevalence".split()) == "demonstrated"
    assert p.root_token("is mitofusin 2 a receptor for parkin".split()) == "is"
    assert p.root_token([]) is None
    assert p.root_token(["the", "of"]) is None


@given(st.lists(st.sampled_from(["the", "binds", "parkin", "activated", "x", "is", "of"]), max_size=10))
def test_heuristic_root_is_member(toks):
    root = HeuristicParser().root_token(toks)
    assert root is None or root in toks
