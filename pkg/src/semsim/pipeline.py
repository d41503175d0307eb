"""The three document-similarity methods, end to end from token lists."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from . import tfidf
from .embeddings import EmbeddingTable, doc_vector, doc_vectors
from .errors import SemsimError
from .similarity import (
    METHODS,
    TFIDF_COSINE,
    W2V_COSINE,
    W2V_SOFTCOSINE,
    SimilarityMatrix,
    build_term_similarity,
    cosine,
    pairwise_matrix,
    soft_cosine,
    sparse_cosine,
)


@dataclass(frozen=True)
class MethodConfig:
    smoothing: bool = True
    normalize: bool = True
    min_df: int = 1
    max_df: float = 1.0
    skip_oov: bool = False
    exponent: float = 2.0
    threshold: float = 0.0
    topk: int = 100
    # "counts" (bag of words) or "tfidf" weights for soft cosine
    soft_weighting: str = "counts"

    def to_dict(self) -> dict:
        return asdict(self)


class MissingEmbeddings(SemsimError):
    pass


class Pipeline:
    """Fitted state for one method over one document pool.

    ``fit_docs`` defaults to ``docs``; pass a larger pool to fit the tf-idf
    vocabulary on more text than is evaluated.
    """

    def __init__(
        self,
        method: str,
        docs: Sequence[Sequence[str]],
        config: MethodConfig = MethodConfig(),
        table: EmbeddingTable | None = None,
        fit_docs: Sequence[Sequence[str]] | None = None,
    ):
        if method not in METHODS:
            raise SemsimError(f"unknown method {method!r}; expected one of {METHODS}")
        if method != TFIDF_COSINE and table is None:
            raise MissingEmbeddings(f"method {method} needs an embedding table")
        if config.soft_weighting not in ("counts", "tfidf"):
            raise SemsimError(f"soft_weighting must be 'counts' or 'tfidf', got {config.soft_weighting!r}")
        self.method = method
        self.config = config
        self.table = table
        self.docs = [list(d) for d in docs]
        self.model = None
        self.term_matrix = None
        if method != W2V_COSINE:
            self.model = tfidf.fit(
                fit_docs if fit_docs is not None else self.docs,
                smoothing=config.smoothing,
                normalize=config.normalize,
                min_df=config.min_df,
                max_df=config.max_df,
            )
        if method == W2V_SOFTCOSINE:
            self.term_matrix = build_term_similarity(
                self.model.vocab, table, config.exponent, config.threshold, config.topk
            )
        if method == W2V_COSINE:
            self.vectors = doc_vectors(self.docs, table, config.skip_oov)
        else:
            self.vectors = [self.vectorize(d) for d in self.docs]

    def vectorize(self, tokens: Sequence[str]):
        if self.method == TFIDF_COSINE:
            return self.model.transform(tokens)
        if self.method == W2V_COSINE:
            return doc_vector(tokens, self.table, self.config.skip_oov)
        if self.config.soft_weighting == "tfidf":
            return self.model.transform(tokens)
        return self.model.vocab.doc2bow(tokens)

    def similarity(self, a, b) -> float:
        if self.method == TFIDF_COSINE:
            return sparse_cosine(a, b)
        if self.method == W2V_COSINE:
            return cosine(a, b)
        return soft_cosine(a, b, self.term_matrix)

    def matrix(self) -> SimilarityMatrix:
        return pairwise_matrix(self.vectors, self.method, self.term_matrix)

    def zero_vector_docs(self) -> int:
        if self.method == W2V_COSINE:
            return int(np.sum(~np.any(self.vectors != 0, axis=1)))
        return sum(1 for v in self.vectors if len(v) == 0)

    def query_scores(self, tokens: Sequence[str]) -> np.ndarray:
        """Similarity of a new document against every pooled document."""
        q = self.vectorize(tokens)
        return np.array([self.similarity(q, v) for v in self.vectors])
