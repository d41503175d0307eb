"""Vocabulary, sparse vectors, and tf-idf weighting.

Per-term weight is ``tf(t, d) * idf(t)`` with either

* smoothed idf: ``ln((1 + N) / (1 + df)) + 1`` (default), or
* raw idf: ``ln(N / df)``.

Vectors are L2-normalized unless ``normalize=False``.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatch, EmptyCorpus


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Sorted ``(term_id, weight)`` pairs with no stored zeros."""

    ids: np.ndarray
    weights: np.ndarray
    dim: int

    def __post_init__(self):
        ids = np.asarray(self.ids, dtype=np.int64)
        w = np.asarray(self.weights, dtype=np.float64)
        if ids.shape != w.shape or ids.ndim != 1:
            raise ValueError("ids and weights must be 1-d and the same length")
        if ids.size:
            if np.any(np.diff(ids) <= 0):
                raise ValueError("term ids must be strictly increasing")
            if ids[0] < 0 or ids[-1] >= self.dim:
                raise ValueError(f"term id out of range for dim {self.dim}")
            if np.any(w == 0):
                raise ValueError("zero weights must not be stored")
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_dict(cls, entries: dict[int, float], dim: int) -> "SparseVector":
        items = sorted((i, w) for i, w in entries.items() if w != 0)
        return cls(
            np.array([i for i, _ in items], dtype=np.int64),
            np.array([w for _, w in items], dtype=np.float64),
            dim,
        )

    def __len__(self):
        return int(self.ids.size)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.ids, other.ids)
            and np.array_equal(self.weights, other.weights)
        )

    def items(self) -> list[tuple[int, float]]:
        return list(zip(self.ids.tolist(), self.weights.tolist()))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.ids] = self.weights
        return out

    def norm(self) -> float:
        return math.sqrt(float(np.dot(self.weights, self.weights)))


def stack(vectors: Sequence[SparseVector]) -> sp.csr_matrix:
    """Rows of a CSR matrix, one per vector."""
    if not vectors:
        raise ValueError("no vectors to stack")
    dim = vectors[0].dim
    if any(v.dim != dim for v in vectors):
        raise DimensionMismatch("vectors have differing dimensions")
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(v) for v in vectors])
    indices = np.concatenate([v.ids for v in vectors]) if indptr[-1] else np.zeros(0, np.int64)
    data = np.concatenate([v.weights for v in vectors]) if indptr[-1] else np.zeros(0)
    return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), dim))


class Vocabulary:
    """Term <-> id mapping with document frequencies.

    Ids are assigned in sorted term order so the mapping does not depend on
    document order.
    """

    def __init__(self, terms: Sequence[str], df: Sequence[int], n_docs: int):
        if len(terms) != len(df):
            raise ValueError("terms and df differ in length")
        self.terms = list(terms)
        self.df = np.asarray(df, dtype=np.int64)
        self.n_docs = int(n_docs)
        self.index = {t: i for i, t in enumerate(self.terms)}

    @classmethod
    def build(cls, docs: Iterable[Sequence[str]], min_df: int = 1, max_df: float = 1.0):
        df: Counter = Counter()
        n = 0
        for tokens in docs:
            n += 1
            df.update(set(tokens))
        if n == 0:
            raise EmptyCorpus("cannot build a vocabulary from zero documents")
        max_count = max_df * n
        terms = sorted(t for t, c in df.items() if c >= min_df and c <= max_count)
        return cls(terms, [df[t] for t in terms], n)

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term):
        return term in self.index

    def doc2bow(self, tokens: Iterable[str]) -> SparseVector:
        """Raw term counts; out-of-vocabulary tokens are ignored."""
        counts = Counter(self.index[t] for t in tokens if t in self.index)
        return SparseVector.from_dict(dict(counts), len(self))


class TfIdfModel:
    def __init__(self, vocab: Vocabulary, smoothing: bool = True, normalize: bool = True):
        self.vocab = vocab
        self.smoothing = smoothing
        self.normalize = normalize
        n, df = vocab.n_docs, vocab.df.astype(np.float64)
        if smoothing:
            self.idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
        else:
            self.idf = np.log(n / df)

    @property
    def dim(self) -> int:
        return len(self.vocab)

    def transform(self, tokens: Iterable[str]) -> SparseVector:
        bow = self.vocab.doc2bow(tokens)
        w = bow.weights * self.idf[bow.ids]
        keep = w != 0  # raw idf is 0 for terms present in every document
        ids, w = bow.ids[keep], w[keep]
        if self.normalize and w.size:
            w = w / math.sqrt(float(np.dot(w, w)))
        return SparseVector(ids, w, self.dim)

    def transform_corpus(self, docs: Iterable[Sequence[str]]) -> list[SparseVector]:
        return [self.transform(tokens) for tokens in docs]

    def to_dict(self) -> dict:
        return {
            "vocabulary": self.vocab.terms,
            "df": self.vocab.df.tolist(),
            "n_docs": self.vocab.n_docs,
            "smoothing": self.smoothing,
            "normalize": self.normalize,
        }

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, ensure_ascii=False)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "TfIdfModel":
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
        vocab = Vocabulary(d["vocabulary"], d["df"], d["n_docs"])
        return cls(vocab, smoothing=d["smoothing"], normalize=d["normalize"])


def fit(
    docs: Sequence[Sequence[str]],
    smoothing: bool = True,
    normalize: bool = True,
    min_df: int = 1,
    max_df: float = 1.0,
) -> TfIdfModel:
    return TfIdfModel(Vocabulary.build(docs, min_df, max_df), smoothing, normalize)


def transform(model: TfIdfModel, tokens: Iterable[str]) -> SparseVector:
    return model.transform(tokens)


def transform_corpus(model: TfIdfModel, docs: Iterable[Sequence[str]]) -> list[SparseVector]:
    return model.transform_corpus(docs)


def write_vectors(vectors: Sequence[SparseVector], path: str | Path) -> None:
    """One line per document: ``doc_id term_id:weight ...`` (6 significant digits)."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc_id, v in enumerate(vectors):
            cells = " ".join(f"{i}:{w:.6g}" for i, w in v.items())
            fh.write(f"{doc_id} {cells}".rstrip() + "\n")
