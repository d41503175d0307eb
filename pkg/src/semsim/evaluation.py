"""Top-1 nearest-neighbor label agreement, per method and side by side."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .corpus import Corpus
from .embeddings import EmbeddingTable
from .errors import LengthMismatch, MatrixTooSmall
from .pipeline import MethodConfig, Pipeline
from .similarity import (
    METHODS,
    TFIDF_COSINE,
    W2V_COSINE,
    W2V_SOFTCOSINE,
    SimilarityMatrix,
    exclude_self,
    most_similar,
)

METHOD_TITLES = {
    TFIDF_COSINE: "Cosine similarity, tf-idf vectors",
    W2V_COSINE: "Cosine similarity, averaged word vectors",
    W2V_SOFTCOSINE: "Soft cosine similarity, word vectors",
}


@dataclass
class EvalReport:
    method: str
    n_docs: int
    n_correct: int
    accuracy: float
    per_class: dict[str, tuple[int, int]]
    zero_vector_docs: int = 0
    config_echo: dict = field(default_factory=dict)
    pairs: list[tuple[int, int, float, bool]] | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["per_class"] = {k: {"n": n, "n_correct": c} for k, (n, c) in self.per_class.items()}
        if self.pairs is not None:
            d["pairs"] = [list(p) for p in self.pairs]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [
            f"method            {self.method}",
            f"documents         {self.n_docs}",
            f"correct           {self.n_correct}",
            f"top-1 accuracy    {self.accuracy:.2f}%",
            f"zero-vector docs  {self.zero_vector_docs}",
            "",
            f"{'class':<16}{'n':>8}{'correct':>10}{'accuracy':>11}",
        ]
        for label, (n, c) in self.per_class.items():
            lines.append(f"{label:<16}{n:>8}{c:>10}{100.0 * c / n:>10.2f}%")
        return "\n".join(lines) + "\n"


def top1_accuracy(
    matrix: SimilarityMatrix,
    labels: Sequence[str],
    zero_vector_docs: int = 0,
    config_echo: dict | None = None,
    include_pairs: bool = False,
) -> EvalReport:
    """Share of documents whose most similar other document has the same label."""
    n = matrix.n
    if len(labels) != n:
        raise LengthMismatch(f"{len(labels)} labels for a {n}x{n} matrix")
    if n < 2:
        raise MatrixTooSmall(f"need at least 2 documents, got {n}")
    if not matrix.self_excluded:
        matrix = exclude_self(matrix)
    per_class: dict[str, list[int]] = {}
    pairs = []
    n_correct = 0
    for i in range(n):
        j, score = most_similar(matrix, i)
        ok = labels[j] == labels[i]
        n_correct += ok
        tally = per_class.setdefault(labels[i], [0, 0])
        tally[0] += 1
        tally[1] += ok
        pairs.append((i, j, score, ok))
    return EvalReport(
        method=matrix.method,
        n_docs=n,
        n_correct=n_correct,
        accuracy=100.0 * n_correct / n,
        per_class={k: tuple(v) for k, v in sorted(per_class.items())},
        zero_vector_docs=zero_vector_docs,
        config_echo=dict(config_echo or {}),
        pairs=pairs if include_pairs else None,
    )


def evaluate_method(
    corpus: Corpus,
    method: str,
    table: EmbeddingTable | None = None,
    config: MethodConfig = MethodConfig(),
    fit_docs=None,
    config_echo: dict | None = None,
    include_pairs: bool = False,
) -> tuple[EvalReport, SimilarityMatrix]:
    pipe = Pipeline(method, corpus.token_lists, config, table, fit_docs)
    raw = pipe.matrix()
    echo = {"method": config.to_dict(), **(config_echo or {})}
    report = top1_accuracy(
        exclude_self(raw), corpus.labels, pipe.zero_vector_docs(), echo, include_pairs
    )
    return report, raw


def compare_methods(
    corpus: Corpus,
    table: EmbeddingTable | None,
    config: MethodConfig = MethodConfig(),
    methods: Sequence[str] = METHODS,
    fit_docs=None,
    config_echo: dict | None = None,
    include_pairs: bool = False,
) -> list[EvalReport]:
    """Run every requested method on the same document pool."""
    return [
        evaluate_method(corpus, m, table, config, fit_docs, config_echo, include_pairs)[0]
        for m in methods
    ]


def summary_table(reports: Sequence[EvalReport]) -> str:
    """Aligned text table, one row per method."""
    width = max(len(METHOD_TITLES.get(r.method, r.method)) for r in reports)
    width = max(width, len("Method"))
    head = f"{'Method':<{width}}  {'Top-1 Accuracy (%)':>18}  {'Correct':>8}  {'Docs':>6}"
    rule = "-" * len(head)
    rows = [
        f"{METHOD_TITLES.get(r.method, r.method):<{width}}  {r.accuracy:>18.2f}  "
        f"{r.n_correct:>8}  {r.n_docs:>6}"
        for r in reports
    ]
    out = [rule, head, rule, *rows, rule]
    note = ordering_note(reports)
    if note:
        out.append(note)
    return "\n".join(out) + "\n"


def summary_tsv(reports: Sequence[EvalReport]) -> str:
    lines = ["method\taccuracy\tn_correct\tn_docs\tzero_vector_docs"]
    for r in reports:
        lines.append(f"{r.method}\t{r.accuracy:.2f}\t{r.n_correct}\t{r.n_docs}\t{r.zero_vector_docs}")
    return "\n".join(lines) + "\n"


def ordering_note(reports: Sequence[EvalReport]) -> str | None:
    """Informational: whether tf-idf >= soft cosine >= averaged-vector cosine."""
    acc = {r.method: r.accuracy for r in reports}
    if not all(m in acc for m in METHODS):
        return None
    holds = acc[TFIDF_COSINE] >= acc[W2V_SOFTCOSINE] >= acc[W2V_COSINE]
    verdict = "holds" if holds else "does not hold"
    return f"note: ordering tfidf-cosine >= w2v-softcosine >= w2v-cosine {verdict}"


def write_pairs(report: EvalReport, labels: Sequence[str], path: str | Path) -> None:
    """TSV with one line per document: doc, neighbor, score, labels, correct."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, j, score, ok in report.pairs:
            fh.write(f"{i}\t{j}\t{score:.6g}\t{labels[i]}\t{labels[j]}\t{int(ok)}\n")
