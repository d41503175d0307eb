"""Labeled short-text corpora: AG News CSV ingest, sampling, JSON-lines cache."""

from __future__ import annotations

import csv
import json
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .errors import BadSampleSize, MalformedRow

AGNEWS_LABELS = {"1": "World", "2": "Sports", "3": "Business", "4": "Sci/Tech"}


@dataclass(frozen=True)
class Document:
    id: int
    label: str
    raw: str
    tokens: tuple[str, ...] = ()


@dataclass(frozen=True)
class Corpus:
    docs: tuple[Document, ...]
    # For sampled corpora: original id of each document, in selection order.
    source_ids: tuple[int, ...] | None = None
    metadata: Mapping = field(default_factory=dict)

    def __len__(self):
        return len(self.docs)

    def __iter__(self):
        return iter(self.docs)

    def __getitem__(self, i):
        return self.docs[i]

    @property
    def labels(self) -> list[str]:
        return [d.label for d in self.docs]

    @property
    def label_set(self) -> set[str]:
        return set(self.labels)

    @property
    def token_lists(self) -> list[list[str]]:
        return [list(d.tokens) for d in self.docs]

    def class_counts(self) -> dict[str, int]:
        return dict(sorted(Counter(self.labels).items()))


def _make_corpus(pairs: Sequence[tuple[str, str]], **kw) -> Corpus:
    return Corpus(tuple(Document(i, lab, raw) for i, (lab, raw) in enumerate(pairs)), **kw)


def load_agnews_csv(path: str | Path, label_map: Mapping[str, str] | None = None) -> Corpus:
    """Read the 3-column AG News layout: class index, title, description.

    Class indices missing from ``label_map`` are kept verbatim as the label.
    Blank lines are skipped.
    """
    label_map = AGNEWS_LABELS if label_map is None else label_map
    pairs = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise MalformedRow(path, reader.line_num, f"expected 3 columns, got {len(row)}")
            cls, title, desc = (c.strip() for c in row)
            label = label_map.get(cls, cls)
            if not label:
                raise MalformedRow(path, reader.line_num, "empty class label")
            pairs.append((label, f"{title} {desc}"))
    return _make_corpus(pairs, metadata={"source": str(path)})


def sample(corpus: Corpus, n: int, seed: int) -> Corpus:
    """Draw ``n`` documents without replacement.

    Uses ``random.Random(seed).sample`` (Mersenne Twister), so a given seed picks
    the same documents on every platform. Ids are renumbered 0..n-1 in selection
    order; the original ids are kept in ``source_ids``.
    """
    if n <= 0 or n > len(corpus):
        raise BadSampleSize(f"cannot sample {n} documents from a corpus of {len(corpus)}")
    picked = random.Random(seed).sample(range(len(corpus)), n)
    docs = tuple(replace(corpus.docs[j], id=i) for i, j in enumerate(picked))
    prior = corpus.source_ids
    source_ids = tuple(prior[j] for j in picked) if prior else tuple(picked)
    meta = dict(corpus.metadata, sample_n=n, sample_seed=seed, sample_prng="random.Random (MT19937)")
    return Corpus(docs, source_ids=source_ids, metadata=meta)


def preprocess_corpus(corpus: Corpus, preprocess: Callable[[str], list[str]]) -> Corpus:
    """Fill every document's tokens. Documents that end up empty are kept."""
    docs = tuple(replace(d, tokens=tuple(preprocess(d.raw))) for d in corpus.docs)
    return replace(corpus, docs=docs)


def write_jsonl(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for k, d in enumerate(corpus.docs):
            rec = {"id": d.id, "label": d.label, "raw": d.raw, "tokens": list(d.tokens)}
            if corpus.source_ids is not None:
                rec["source_id"] = corpus.source_ids[k]
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def read_jsonl(path: str | Path) -> Corpus:
    docs, source_ids = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                doc = Document(len(docs), rec["label"], rec["raw"], tuple(rec.get("tokens", ())))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise MalformedRow(path, lineno, f"bad corpus record: {exc}") from None
            if rec.get("id", doc.id) != doc.id:
                raise MalformedRow(path, lineno, f"id {rec['id']} out of order, expected {doc.id}")
            docs.append(doc)
            source_ids.append(rec.get("source_id"))
    sids = tuple(source_ids) if docs and None not in source_ids else None
    return Corpus(tuple(docs), source_ids=sids, metadata={"source": str(path)})
