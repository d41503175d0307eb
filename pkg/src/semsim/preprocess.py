"""Text normalization: tokenize, drop stopwords, lemmatize by lexicon lookup."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import groupby
from pathlib import Path
from typing import Iterable, Mapping

from .errors import BadLexicon


def _alpha_runs(text: str) -> list[str]:
    """Maximal runs of characters for which ``str.isalpha`` holds."""
    return ["".join(g) for alpha, g in groupby(text, str.isalpha) if alpha]


def _data_path(name: str) -> Path:
    return Path(str(resources.files("semsim") / "data" / name))


DEFAULT_STOPWORDS = _data_path("stopwords_en.txt")
DEFAULT_LEXICON = _data_path("lemmas_en.tsv")


@dataclass(frozen=True)
class PreprocessConfig:
    lowercase: bool = True
    min_token_length: int = 2
    stopword_path: Path | None = DEFAULT_STOPWORDS
    lexicon_path: Path | None = DEFAULT_LEXICON

    def __post_init__(self):
        if self.min_token_length < 1:
            raise ValueError("min_token_length must be >= 1")

    def to_dict(self) -> dict:
        return {
            "lowercase": self.lowercase,
            "min_token_length": self.min_token_length,
            "stopword_path": str(self.stopword_path) if self.stopword_path else None,
            "lexicon_path": str(self.lexicon_path) if self.lexicon_path else None,
        }


def load_stopwords(path: str | Path | None) -> frozenset[str]:
    """Read a stopword file: one word per line, ``#`` lines are comments."""
    if path is None:
        return frozenset()
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
    return frozenset(words)


def load_lexicon(path: str | Path | None) -> dict[str, str]:
    """Read a ``surface<TAB>lemma`` file.

    Raises :class:`BadLexicon` if a lemma is not a plain alphabetic token or
    is itself mapped to something else, since lemmatizing must be idempotent.
    """
    if path is None:
        return {}
    lexicon: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise BadLexicon(f"{path}:{lineno}: expected 'surface<TAB>lemma'")
            surface, lemma = parts[0].strip().lower(), parts[1].strip().lower()
            if not (lemma.isalpha() and surface.isalpha()):
                raise BadLexicon(f"{path}:{lineno}: non-alphabetic entry {line!r}")
            lexicon.setdefault(surface, lemma)
    for surface, lemma in lexicon.items():
        if lexicon.get(lemma, lemma) != lemma:
            raise BadLexicon(
                f"{path}: lemma {lemma!r} (of {surface!r}) maps to {lexicon[lemma]!r}"
            )
    return lexicon


def tokenize(raw: str, config: PreprocessConfig = PreprocessConfig()) -> list[str]:
    if config.lowercase:
        raw = raw.lower()
    return [t for t in _alpha_runs(raw) if len(t) >= config.min_token_length]


def remove_stopwords(tokens: Iterable[str], stops: frozenset[str] | set[str]) -> list[str]:
    return [t for t in tokens if t.lower() not in stops]


def lemmatize(token: str, lexicon: Mapping[str, str]) -> str:
    return lexicon.get(token, token)


def preprocess(
    raw: str,
    config: PreprocessConfig,
    stops: frozenset[str] | set[str],
    lexicon: Mapping[str, str],
) -> list[str]:
    """tokenize -> remove_stopwords -> lemmatize.

    Stopwords are removed before lemmatizing so that inflected stopwords
    ("are", "was") disappear instead of turning into "be".
    """
    return [lemmatize(t, lexicon) for t in remove_stopwords(tokenize(raw, config), stops)]


class Preprocessor:
    """Bundles a config with its loaded stopword list and lexicon."""

    def __init__(self, config: PreprocessConfig = PreprocessConfig()):
        self.config = config
        self.stops = load_stopwords(config.stopword_path)
        self.lexicon = load_lexicon(config.lexicon_path)

    def __call__(self, raw: str) -> list[str]:
        return preprocess(raw, self.config, self.stops, self.lexicon)
