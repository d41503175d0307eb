import numpy as np

from semsim.evaluation import EvalReport
from semsim.plotting import plot_accuracy, plot_neighbor_protocol
from semsim.similarity import SimilarityMatrix


def _png(path):
    return path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_neighbor_protocol_figure(tmp_path):
    rng = np.random.default_rng(0)
    a = rng.random((7, 7))
    m = SimilarityMatrix((a + a.T) / 2, "tfidf-cosine")
    out = plot_neighbor_protocol(m, tmp_path / "n.png", n_show=5, doc_labels=list("aabbcaa"))
    assert _png(out)


def test_neighbor_protocol_self_excluded_and_tiny(tmp_path):
    m = SimilarityMatrix(np.array([[0.0, 0.3], [0.3, 0.0]]), "w2v-cosine", self_excluded=True)
    assert _png(plot_neighbor_protocol(m, tmp_path / "n.png", n_show=9))


def test_accuracy_figure(tmp_path):
    reports = [
        EvalReport("tfidf-cosine", 10, 8, 80.0, {"a": (5, 4), "b": (5, 4)}),
        EvalReport("w2v-cosine", 10, 6, 60.0, {"a": (5, 5), "b": (5, 1)}),
    ]
    assert _png(plot_accuracy(reports, tmp_path / "acc.png"))
