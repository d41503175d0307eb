"""Pre-trained word vectors in word2vec text format, and averaged document vectors."""

from __future__ import annotations

import gzip
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BadHeader, DimensionMismatch, NonFiniteValue

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EmbeddingTable:
    dim: int
    index: dict[str, int]
    matrix: np.ndarray  # (len(index), dim), row k holds the vector of the k-th key
    name: str = ""

    def __len__(self):
        return len(self.index)

    def __contains__(self, token):
        return token in self.index

    def lookup(self, token: str) -> np.ndarray:
        k = self.index.get(token)
        if k is None:
            return np.zeros(self.dim)
        return self.matrix[k].copy()


def _open_text(path: str | Path):
    if str(path).endswith((".gz", ".gzip")):
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")


def normalize_key(key: str, key_prefix: str | None = None) -> str:
    """Lowercase a table key, stripping ``key_prefix`` (e.g. ``/c/en/``) if present."""
    if key_prefix and key.startswith(key_prefix):
        key = key[len(key_prefix):]
    return key.lower()


def _parse_header(line: str, path) -> tuple[int, int]:
    parts = line.split()
    try:
        if len(parts) != 2:
            raise ValueError
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise BadHeader(f"{path}:1: expected '<vocab_size> <dim>', got {line.strip()!r}") from None
    if count < 0 or dim <= 0:
        raise BadHeader(f"{path}:1: invalid sizes {count} {dim}")
    return count, dim


def _iter_rows(fh, path, dim):
    """Yield (line number, key, component strings) for each data row."""
    for lineno, line in enumerate(fh, 2):
        parts = line.rstrip("\n").rstrip().split(" ")
        if parts == [""]:
            continue
        if len(parts) != dim + 1:
            raise DimensionMismatch(
                f"{path}:{lineno}: expected {dim} components, got {len(parts) - 1}"
            )
        yield lineno, parts[0], parts[1:]


def load_word2vec_text(
    path: str | Path, limit: int | None = None, key_prefix: str | None = None
) -> EmbeddingTable:
    """Load ``<count> <dim>`` followed by ``<token> <v1> ... <v_dim>`` lines.

    Keys are lowercased (after stripping ``key_prefix``); on duplicates the
    first occurrence wins. At most ``limit`` vectors are kept.
    """
    with _open_text(path) as fh:
        count, dim = _parse_header(fh.readline(), path)
        cap = count if limit is None else min(count, limit)
        index: dict[str, int] = {}
        rows: list[np.ndarray] = []
        for lineno, key, comps in _iter_rows(fh, path, dim):
            if len(index) >= cap:
                break
            key = normalize_key(key, key_prefix)
            if key in index:
                continue
            try:
                vec = np.array(comps, dtype=np.float64)
            except ValueError:
                raise NonFiniteValue(f"{path}:{lineno}: non-numeric component") from None
            if not np.all(np.isfinite(vec)):
                raise NonFiniteValue(f"{path}:{lineno}: NaN or inf component")
            index[key] = len(rows)
            rows.append(vec)
    matrix = np.vstack(rows) if rows else np.zeros((0, dim))
    return EmbeddingTable(dim, index, matrix, Path(path).name)


def filter_word2vec_text(
    src: str | Path,
    dst: str | Path,
    vocabulary: Iterable[str],
    key_prefix: str | None = None,
) -> tuple[int, int]:
    """Copy only vectors whose normalized key is in ``vocabulary``.

    Keys are written normalized; component text is copied verbatim so that
    filtering an already filtered file reproduces it byte for byte.
    Returns ``(kept, dim)``.
    """
    wanted = set(vocabulary)
    kept: dict[str, str] = {}
    with _open_text(src) as fh:
        _, dim = _parse_header(fh.readline(), src)
        for _, key, comps in _iter_rows(fh, src, dim):
            key = normalize_key(key, key_prefix)
            if key in wanted and key not in kept:
                kept[key] = " ".join(comps)
    with open(dst, "w", encoding="utf-8") as out:
        out.write(f"{len(kept)} {dim}\n")
        for key, comps in kept.items():
            out.write(f"{key} {comps}\n")
    return len(kept), dim


def doc_vector(tokens: Sequence[str], table: EmbeddingTable, skip_oov: bool = False) -> np.ndarray:
    """Mean of the token vectors.

    OOV tokens contribute zero vectors and still count in the divisor unless
    ``skip_oov`` is set. An empty (or, with ``skip_oov``, all-OOV) document
    gives the zero vector.
    """
    rows = [table.index[t] for t in tokens if t in table.index]
    divisor = len(rows) if skip_oov else len(tokens)
    if divisor == 0:
        return np.zeros(table.dim)
    # sum in a fixed order so the result is reproducible bit for bit
    total = np.zeros(table.dim)
    for r in sorted(rows):
        total += table.matrix[r]
    return total / divisor


def doc_vectors(docs: Iterable[Sequence[str]], table: EmbeddingTable, skip_oov=False) -> np.ndarray:
    vecs = [doc_vector(tokens, table, skip_oov) for tokens in docs]
    return np.vstack(vecs) if vecs else np.zeros((0, table.dim))


def oov_rate(docs: Iterable[Sequence[str]], table: EmbeddingTable) -> float:
    """Fraction of token occurrences missing from the table."""
    total = missing = 0
    for tokens in docs:
        total += len(tokens)
        missing += sum(t not in table.index for t in tokens)
    return missing / total if total else 0.0
