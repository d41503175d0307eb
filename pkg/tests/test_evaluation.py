import json
import random

import numpy as np
import pytest

from semsim.corpus import Corpus, Document
from semsim.errors import LengthMismatch, MatrixTooSmall
from semsim.evaluation import (
    EvalReport,
    compare_methods,
    evaluate_method,
    ordering_note,
    summary_table,
    summary_tsv,
    top1_accuracy,
    write_pairs,
)
from semsim.pipeline import MethodConfig, MissingEmbeddings, Pipeline
from semsim.similarity import METHODS, SimilarityMatrix, exclude_self, pairwise_matrix

from oracles import brute_most_similar, dense_cosine


def make_corpus(items):
    return Corpus(tuple(Document(i, lab, " ".join(t), tuple(t)) for i, (lab, t) in enumerate(items)))


def test_disjoint_groups_give_full_accuracy():
    corpus = make_corpus([
        ("x", ["apple", "pear"]),
        ("y", ["car", "bus"]),
        ("x", ["apple", "plum"]),
        ("y", ["bus", "train"]),
    ])
    report, raw = evaluate_method(corpus, "tfidf-cosine")
    # brute force: every cross-label pair shares no token, so scores are 0
    s = raw.scores
    for i in range(4):
        for j in range(4):
            if corpus[i].label != corpus[j].label:
                assert s[i, j] == 0.0
    assert report.accuracy == 100.0 and report.n_correct == 4


def test_all_same_label():
    rng = np.random.default_rng(0)
    m = exclude_self(SimilarityMatrix(rng.random((6, 6)), "w2v-cosine"))
    assert top1_accuracy(m, ["a"] * 6).accuracy == 100.0


def test_two_docs_different_labels():
    m = exclude_self(SimilarityMatrix(np.array([[1, 0.7], [0.7, 1]]), "tfidf-cosine"))
    r = top1_accuracy(m, ["a", "b"])
    assert r.accuracy == 0.0 and r.n_correct == 0


def test_errors():
    m = exclude_self(SimilarityMatrix(np.eye(3), "tfidf-cosine"))
    with pytest.raises(LengthMismatch):
        top1_accuracy(m, ["a", "b"])
    with pytest.raises(MatrixTooSmall):
        top1_accuracy(exclude_self(SimilarityMatrix(np.eye(1), "tfidf-cosine")), ["a"])


def test_unexcluded_matrix_is_excluded_first():
    m = SimilarityMatrix(np.array([[1, 0.2, 0.1], [0.2, 1, 0.3], [0.1, 0.3, 1]]), "tfidf-cosine")
    r = top1_accuracy(m, ["a", "a", "b"], include_pairs=True)
    assert [p[1] for p in r.pairs] == [1, 2, 1]


def test_report_invariants_and_pairs():
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = int(rng.integers(2, 15))
        s = rng.random((n, n))
        m = exclude_self(SimilarityMatrix((s + s.T) / 2, "w2v-cosine"))
        labels = [str(x) for x in rng.integers(0, 3, n)]
        r = top1_accuracy(m, labels, include_pairs=True)
        assert 0 <= r.accuracy <= 100 and r.n_correct <= r.n_docs
        assert sum(nc[0] for nc in r.per_class.values()) == n
        assert sum(nc[1] for nc in r.per_class.values()) == r.n_correct
        assert r.accuracy == 100.0 * sum(p[3] for p in r.pairs) / n
        for i, j, score, ok in r.pairs:
            assert (j, score) == brute_most_similar(m.scores[i].tolist(), i)
            assert ok == (labels[i] == labels[j])


def test_toy_compare_methods(toy_corpus, toy_table):
    reports = compare_methods(toy_corpus, toy_table)
    assert [r.method for r in reports] == list(METHODS)
    assert {r.n_docs for r in reports} == {20}
    assert reports[0].accuracy == 100.0  # vocabulary-disjoint classes


def test_toy_w2v_accuracy_matches_oracle(toy_corpus, toy_table):
    """Recompute averaged-vector cosine neighbors with plain Python."""
    dim = toy_table.dim
    vecs = []
    for d in toy_corpus:
        total = [0.0] * dim
        for t in d.tokens:
            if t in toy_table.index:
                total = [a + b for a, b in zip(total, toy_table.matrix[toy_table.index[t]])]
        vecs.append([x / len(d.tokens) for x in total] if d.tokens else total)
    labels = toy_corpus.labels
    correct = 0
    for i in range(len(vecs)):
        row = [dense_cosine(vecs[i], v) for v in vecs]
        j, _ = brute_most_similar(row, i)
        correct += labels[i] == labels[j]
    report = compare_methods(toy_corpus, toy_table, methods=["w2v-cosine"])[0]
    assert report.n_correct == correct


def _tie_free(matrix):
    for i in range(matrix.n):
        row = np.delete(matrix.scores[i], i)
        if np.sum(row == row.max()) > 1:
            return False
    return True


def test_permutation_invariance():
    from semsim.embeddings import EmbeddingTable

    rng = random.Random(11)
    words = [f"w{i}" for i in range(40)]
    nprng = np.random.default_rng(11)
    table = EmbeddingTable(5, {w: i for i, w in enumerate(words)}, nprng.normal(size=(40, 5)))
    checked = {m: 0 for m in METHODS}
    for _ in range(20):
        corpus = make_corpus([
            (rng.choice("abc"), [rng.choice(words) for _ in range(rng.randrange(1, 12))])
            for _ in range(25)
        ])
        docs = list(corpus.docs)
        rng.shuffle(docs)
        shuffled = Corpus(tuple(docs))
        for method in METHODS:
            base, raw = evaluate_method(corpus, method, table)
            if not _tie_free(exclude_self(raw)):
                continue
            checked[method] += 1
            assert evaluate_method(shuffled, method, table)[0].accuracy == base.accuracy
    assert all(checked.values()), checked


def test_missing_embeddings(toy_corpus):
    with pytest.raises(MissingEmbeddings):
        compare_methods(toy_corpus, None)
    assert compare_methods(toy_corpus, None, methods=["tfidf-cosine"])[0].accuracy == 100.0


def test_summary_outputs_deterministic(toy_corpus, toy_table):
    a = compare_methods(toy_corpus, toy_table, config_echo={"seed": 1})
    b = compare_methods(toy_corpus, toy_table, config_echo={"seed": 1})
    assert summary_table(a) == summary_table(b)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]
    lines = summary_tsv(a).splitlines()
    assert lines[0].split("\t") == ["method", "accuracy", "n_correct", "n_docs", "zero_vector_docs"]
    assert len(lines) == 4
    assert "100.00" in summary_table(a)


def test_ordering_note():
    def rep(method, acc):
        return EvalReport(method, 100, int(acc), acc, {})

    ok = [rep("tfidf-cosine", 76.8), rep("w2v-cosine", 75.9), rep("w2v-softcosine", 76.05)]
    assert ordering_note(ok).endswith(" holds")
    bad = [rep("tfidf-cosine", 70), rep("w2v-cosine", 75.9), rep("w2v-softcosine", 76.05)]
    assert ordering_note(bad).endswith("does not hold")
    assert ordering_note(ok[:1]) is None


def test_report_json_and_text(toy_corpus, toy_table, tmp_path):
    r, _ = evaluate_method(toy_corpus, "w2v-cosine", toy_table, include_pairs=True,
                           config_echo={"seed": 3})
    d = json.loads(r.to_json())
    assert d["config_echo"]["seed"] == 3
    assert d["config_echo"]["method"]["topk"] == 100
    assert d["per_class"]["Sports"]["n"] == 10
    assert len(d["pairs"]) == 20
    assert d["zero_vector_docs"] == r.zero_vector_docs
    assert "top-1 accuracy" in r.to_text()
    write_pairs(r, toy_corpus.labels, tmp_path / "p.tsv")
    assert len((tmp_path / "p.tsv").read_text().splitlines()) == 20


def test_zero_vector_counts():
    corpus = make_corpus([("a", ["cat"]), ("a", []), ("b", ["zzz"])])
    from semsim.embeddings import EmbeddingTable

    table = EmbeddingTable(2, {"cat": 0}, np.array([[1.0, 0.0]]))
    assert Pipeline("w2v-cosine", corpus.token_lists, table=table).zero_vector_docs() == 2
    assert Pipeline("tfidf-cosine", corpus.token_lists).zero_vector_docs() == 1


def test_pipeline_soft_weighting_and_query(toy_corpus, toy_table):
    counts = Pipeline("w2v-softcosine", toy_corpus.token_lists, table=toy_table)
    weighted = Pipeline("w2v-softcosine", toy_corpus.token_lists,
                        MethodConfig(soft_weighting="tfidf"), toy_table)
    terms = counts.model.vocab.terms
    first = {terms[i]: w for i, w in counts.vectors[0].items()}
    assert first == {t: float(toy_corpus[0].tokens.count(t)) for t in set(toy_corpus[0].tokens)}
    assert weighted.vectors[0] != counts.vectors[0]
    scores = counts.query_scores(list(toy_corpus[0].tokens))
    np.testing.assert_allclose(scores, counts.matrix().scores[0], atol=1e-12)


def test_fit_on_larger_pool(toy_corpus):
    extra = toy_corpus.token_lists + [["unseen", "words"]]
    pipe = Pipeline("tfidf-cosine", toy_corpus.token_lists, fit_docs=extra)
    assert "unseen" in pipe.model.vocab and pipe.model.vocab.n_docs == 21
