from pathlib import Path

import pytest

from semsim.corpus import load_agnews_csv, preprocess_corpus
from semsim.embeddings import load_word2vec_text
from semsim.preprocess import Preprocessor

DATA = Path(__file__).resolve().parents[1] / "src" / "semsim" / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"
TOY_CSV = DATA / "toy_corpus.csv"
TOY_EMB = DATA / "toy_embeddings.txt"


@pytest.fixture(scope="session")
def toy_corpus():
    return preprocess_corpus(load_agnews_csv(TOY_CSV), Preprocessor())


@pytest.fixture(scope="session")
def toy_table():
    return load_word2vec_text(TOY_EMB)


@pytest.fixture
def write(tmp_path):
    def _write(name, text, mode="w"):
        path = tmp_path / name
        if mode == "wb":
            path.write_bytes(text)
        else:
            path.write_text(text, encoding="utf-8")
        return path

    return _write


# filled by test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
