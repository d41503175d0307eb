"""Cosine and soft cosine measures, term-similarity matrices, and all-pairs
document similarity with self-exclusion."""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .embeddings import EmbeddingTable
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    MatrixTooSmall,
    MissingTermMatrix,
    SemsimError,
)
from .tfidf import SparseVector, Vocabulary, stack

TFIDF_COSINE = "tfidf-cosine"
W2V_COSINE = "w2v-cosine"
W2V_SOFTCOSINE = "w2v-softcosine"
METHODS = (TFIDF_COSINE, W2V_COSINE, W2V_SOFTCOSINE)

# Radicands at or below this are treated as a degenerate (zero) document.
SOFT_RADICAND_EPS = 1e-12


def _clamp(x: float) -> float:
    return min(1.0, max(-1.0, x))


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """dot(a, b) / (|a| |b|), or 0.0 when either vector is zero."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare vectors of shape {a.shape} and {b.shape}")
    na = math.sqrt(float(np.dot(a, a)))
    nb = math.sqrt(float(np.dot(b, b)))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return _clamp(float(np.dot(a, b)) / (na * nb))


def sparse_cosine(a: SparseVector, b: SparseVector) -> float:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot compare sparse vectors of dim {a.dim} and {b.dim}")
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return 0.0
    _, ia, ib = np.intersect1d(a.ids, b.ids, assume_unique=True, return_indices=True)
    dot = float(np.dot(a.weights[ia], b.weights[ib]))
    return _clamp(dot / (na * nb))


@dataclass(frozen=True, eq=False)
class TermSimilarityMatrix:
    """Sparse symmetric ``s_ij`` over a vocabulary, unit diagonal."""

    matrix: sp.csr_matrix
    exponent: float = 2.0
    threshold: float = 0.0
    topk: int = 100

    @property
    def vocab_dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "TermSimilarityMatrix":
        return cls(sp.identity(dim, format="csr"), exponent=1.0, threshold=1.0, topk=0)

    def get(self, i: int, j: int) -> float:
        return float(self.matrix[i, j])

    def write(self, path: str | Path) -> None:
        """One ``i j s_ij`` line per stored entry, after a parameter header."""
        m = self.matrix.tocoo()
        order = np.lexsort((m.col, m.row))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(
                f"# V={self.vocab_dim} exponent={self.exponent:g} "
                f"threshold={self.threshold:g} topk={self.topk}\n"
            )
            for k in order:
                fh.write(f"{m.row[k]} {m.col[k]} {m.data[k]:.6g}\n")


def _embedding_rows(vocab: Vocabulary, table: EmbeddingTable) -> np.ndarray:
    """Unit-normalized embedding per vocabulary term; zero rows for OOV terms."""
    emb = np.zeros((len(vocab), table.dim))
    for i, term in enumerate(vocab.terms):
        k = table.index.get(term)
        if k is not None:
            emb[i] = table.matrix[k]
    norms = np.linalg.norm(emb, axis=1)
    nz = norms > 0
    emb[nz] /= norms[nz, None]
    return emb


def _topk_mask(vals: np.ndarray, k: int) -> np.ndarray:
    """Per row, mark the k largest positive values; ties go to the lowest column."""
    positive = vals > 0
    if k >= vals.shape[1]:
        return positive
    if k <= 0:
        return np.zeros_like(positive)
    kth = -np.partition(-vals, k - 1, axis=1)[:, k - 1]
    above = vals > kth[:, None]
    at = (vals == kth[:, None]) & positive
    room = k - above.sum(axis=1)
    at &= np.cumsum(at, axis=1) <= room[:, None]
    return (above | at) & positive


def build_term_similarity(
    vocab: Vocabulary,
    table: EmbeddingTable,
    exponent: float = 2.0,
    threshold: float = 0.0,
    topk: int = 100,
    block: int = 512,
) -> TermSimilarityMatrix:
    """Term similarities from embedding cosines.

    For i != j, ``s_ij = max(0, cos(e_i, e_j)) ** exponent`` when the cosine
    exceeds ``threshold``. Each row keeps its ``topk`` largest entries; an entry
    survives symmetrization if either of its rows kept it, so a row can end up
    with more than ``topk`` entries.
    """
    V = len(vocab)
    emb = _embedding_rows(vocab, table)
    rows, cols, data = [], [], []
    for start in range(0, V, block):
        stop = min(start + block, V)
        raw = np.clip(emb[start:stop] @ emb.T, -1.0, 1.0)
        raw[np.arange(stop - start), np.arange(start, stop)] = -np.inf
        vals = np.where(raw > threshold, np.maximum(raw, 0.0) ** exponent, 0.0)
        r, c = np.nonzero(_topk_mask(vals, topk))
        rows.append(r + start)
        cols.append(c)
        data.append(vals[r, c])
    kept = sp.csr_matrix(
        (np.concatenate(data) if data else [], (np.concatenate(rows) if rows else [],
                                               np.concatenate(cols) if cols else [])),
        shape=(V, V),
    )
    # (i, j) and (j, i) can differ in the last bit; take the larger for exact symmetry
    sym = kept.maximum(kept.T) + sp.identity(V, format="csr")
    sym = sym.tocsr()
    sym.sort_indices()
    return TermSimilarityMatrix(sym, exponent=exponent, threshold=threshold, topk=topk)


def soft_cosine(a: SparseVector, b: SparseVector, S: TermSimilarityMatrix) -> float:
    if not (a.dim == b.dim == S.vocab_dim):
        raise DimensionMismatch(
            f"soft cosine needs equal dims, got {a.dim}, {b.dim} and matrix {S.vocab_dim}"
        )
    m = S.matrix

    def form(x, y):
        return float(x.weights @ (m[x.ids][:, y.ids] @ y.weights))

    ra, rb = form(a, a), form(b, b)
    if ra <= SOFT_RADICAND_EPS or rb <= SOFT_RADICAND_EPS:
        return 0.0
    return _clamp(form(a, b) / (math.sqrt(ra) * math.sqrt(rb)))


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    scores: np.ndarray
    method: str
    self_excluded: bool = False

    @property
    def n(self) -> int:
        return self.scores.shape[0]

    def exclude_self(self) -> "SimilarityMatrix":
        return exclude_self(self)

    def most_similar(self, i: int) -> tuple[int, float]:
        return most_similar(self, i)


def _normalize_gram(gram: np.ndarray, radicands: np.ndarray, eps: float) -> np.ndarray:
    ok = radicands > eps
    roots = np.where(ok, np.sqrt(np.where(ok, radicands, 1.0)), 1.0)
    scores = gram / np.outer(roots, roots)
    scores[~ok, :] = 0.0
    scores[:, ~ok] = 0.0
    return np.clip(scores, -1.0, 1.0)


def pairwise_matrix(
    vectors: Sequence[SparseVector] | np.ndarray,
    measure: str,
    S: TermSimilarityMatrix | None = None,
) -> SimilarityMatrix:
    """All-pairs similarity. The upper triangle is mirrored for exact symmetry."""
    if measure not in METHODS:
        raise SemsimError(f"unknown method {measure!r}; expected one of {METHODS}")
    n = len(vectors)
    if n < 2:
        raise MatrixTooSmall(f"need at least 2 documents, got {n}")
    if measure == W2V_COSINE:
        X = np.asarray(vectors, dtype=np.float64)
        if X.ndim != 2:
            raise DimensionMismatch("dense vectors must share one dimension")
        gram = X @ X.T
        radicands = np.einsum("ij,ij->i", X, X)
        scores = _normalize_gram(gram, radicands, 0.0)
    else:
        X = stack(vectors)
        if measure == TFIDF_COSINE:
            gram = (X @ X.T).toarray()
            radicands = np.asarray(X.multiply(X).sum(axis=1)).ravel()
            scores = _normalize_gram(gram, radicands, 0.0)
        else:
            if S is None:
                raise MissingTermMatrix("soft cosine needs a term similarity matrix")
            if S.vocab_dim != X.shape[1]:
                raise DimensionMismatch(
                    f"vectors have dim {X.shape[1]}, term matrix has {S.vocab_dim}"
                )
            gram = (X @ S.matrix @ X.T).toarray()
            scores = _normalize_gram(gram, np.diag(gram).copy(), SOFT_RADICAND_EPS)
    upper = np.triu(scores)
    scores = upper + np.triu(scores, 1).T
    return SimilarityMatrix(scores, measure, self_excluded=False)


def exclude_self(matrix: SimilarityMatrix) -> SimilarityMatrix:
    scores = matrix.scores.copy()
    if scores.ndim != 2 or scores.shape[0] != scores.shape[1]:
        raise DimensionMismatch(f"similarity matrix must be square, got {scores.shape}")
    np.fill_diagonal(scores, 0.0)
    return replace(matrix, scores=scores, self_excluded=True)


def ranked_neighbors(matrix: SimilarityMatrix, i: int, k: int | None = None) -> list[tuple[int, float]]:
    """Other documents ordered by descending score, ties by ascending index."""
    n = matrix.n
    if n < 2:
        raise MatrixTooSmall(f"need at least 2 documents, got {n}")
    if not 0 <= i < n:
        raise IndexOutOfRange(f"document index {i} outside 0..{n - 1}")
    row = matrix.scores[i]
    others = np.delete(np.arange(n), i)
    order = others[np.argsort(-row[others], kind="stable")]
    if k is not None:
        order = order[:k]
    return [(int(j), float(row[j])) for j in order]


def most_similar(matrix: SimilarityMatrix, i: int) -> tuple[int, float]:
    """Best match for document ``i`` among the others (never itself)."""
    n = matrix.n
    if n < 2:
        raise MatrixTooSmall(f"need at least 2 documents, got {n}")
    if not 0 <= i < n:
        raise IndexOutOfRange(f"document index {i} outside 0..{n - 1}")
    row = matrix.scores[i].copy()
    row[i] = -np.inf
    j = int(np.argmax(row))
    return j, float(row[j])


# SIMM1 layout: b"SIMM1" | u32 n | u8 method | n*n float64, all little-endian, row-major.
_MAGIC = b"SIMM1"
_METHOD_CODES = {m: k for k, m in enumerate(METHODS)}


def write_simm(matrix: SimilarityMatrix, path: str | Path) -> None:
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<IB", matrix.n, _METHOD_CODES[matrix.method]))
        fh.write(np.ascontiguousarray(matrix.scores, dtype="<f8").tobytes())


def read_simm(path: str | Path) -> SimilarityMatrix:
    with open(path, "rb") as fh:
        blob = fh.read()
    head = len(_MAGIC) + 5
    if blob[: len(_MAGIC)] != _MAGIC or len(blob) < head:
        raise SemsimError(f"{path}: not a SIMM1 file")
    n, code = struct.unpack("<IB", blob[len(_MAGIC):head])
    if code >= len(METHODS):
        raise SemsimError(f"{path}: unknown method code {code}")
    if len(blob) != head + 8 * n * n:
        raise SemsimError(f"{path}: expected {n}x{n} scores, file size is {len(blob)}")
    scores = np.frombuffer(blob, dtype="<f8", offset=head).reshape(n, n).astype(np.float64)
    excluded = bool(np.all(np.diag(scores) == 0.0))
    return SimilarityMatrix(scores, METHODS[code], self_excluded=excluded)


def write_tsv(matrix: SimilarityMatrix, path: str | Path) -> None:
    np.savetxt(path, matrix.scores, fmt="%.6g", delimiter="\t")
