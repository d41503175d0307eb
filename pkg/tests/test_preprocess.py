import pytest
from hypothesis import given, settings, strategies as st

from semsim.errors import BadLexicon
from semsim.preprocess import (
    PreprocessConfig,
    Preprocessor,
    lemmatize,
    load_lexicon,
    load_stopwords,
    preprocess,
    remove_stopwords,
    tokenize,
)

BARE = PreprocessConfig(stopword_path=None, lexicon_path=None)


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("Wall St. Bears Claw Back", ["wall", "st", "bears", "claw", "back"]),
        ("", []),
        ("2024 100% !!", []),
        ("re-elected, co2 a b", ["re", "elected", "co"]),
        ("naïve Café", ["naïve", "café"]),
    ],
)
def test_tokenize(raw, expected):
    assert tokenize(raw, BARE) == expected


def test_tokenize_min_length_and_case():
    assert tokenize("A b Cd", PreprocessConfig(min_token_length=1)) == ["a", "b", "cd"]
    assert tokenize("A b Cd", PreprocessConfig(lowercase=False)) == ["Cd"]


def test_min_token_length_must_be_positive():
    with pytest.raises(ValueError):
        PreprocessConfig(min_token_length=0)


@pytest.mark.parametrize(
    "tokens, stops, expected",
    [
        (["the", "cat", "sat"], {"the"}, ["cat", "sat"]),
        ([], {"the"}, []),
        (["cat", "dog"], set(), ["cat", "dog"]),
        (["The", "cat"], {"the"}, ["cat"]),
    ],
)
def test_remove_stopwords(tokens, stops, expected):
    assert remove_stopwords(tokens, stops) == expected


@pytest.mark.parametrize(
    "token, lexicon, expected",
    [
        ("bears", {"bears": "bear"}, "bear"),
        ("bear", {"bears": "bear"}, "bear"),
        ("wolves", {"wolves": "wolf"}, "wolf"),
    ],
)
def test_lemmatize(token, lexicon, expected):
    assert lemmatize(token, lexicon) == expected


def test_preprocess_composes_stages():
    lex = {"bears": "bear", "running": "run"}
    assert preprocess("The bears are running", BARE, {"the", "are"}, lex) == ["bear", "run"]
    assert preprocess("", BARE, {"the"}, lex) == []
    assert preprocess("THE THE THE", BARE, {"the"}, lex) == []


def test_stopwords_removed_before_lemmatizing():
    # "are" must vanish rather than become "be"
    assert preprocess("bears are", BARE, {"are"}, {"are": "be", "bears": "bear"}) == ["bear"]


def test_stopword_file_format(write):
    path = write("stops.txt", "# comment\nThe\n\n  and \n")
    assert load_stopwords(path) == {"the", "and"}


def test_lexicon_file_format(write):
    path = write("lex.tsv", "# header\nBears\tbear\nwolves\twolf\n")
    assert load_lexicon(path) == {"bears": "bear", "wolves": "wolf"}


@pytest.mark.parametrize(
    "text",
    ["bears\tbear\nbear\tbruin\n", "bears bear\n", "b3ars\tbear\n"],
)
def test_lexicon_rejects_bad_entries(write, text):
    with pytest.raises(BadLexicon):
        load_lexicon(write("lex.tsv", text))


def test_bundled_resources_are_consistent():
    prep = Preprocessor()
    assert len(prep.stops) == 179
    assert all(w == w.lower() for w in prep.stops)
    for surface, lemma in prep.lexicon.items():
        assert prep.lexicon.get(lemma, lemma) == lemma
        assert lemma not in prep.stops
        assert len(lemma) >= prep.config.min_token_length
        assert tokenize(lemma, prep.config) == [lemma]


words = st.text(alphabet="abcdefghijklmnopqrstuvwxyzABCDEFG0123456789 .,;!-'", max_size=60)


@settings(max_examples=300, deadline=None)
@given(words)
def test_preprocess_idempotent(text):
    prep = Preprocessor()
    once = prep(text)
    assert prep(" ".join(once)) == once


@settings(max_examples=300, deadline=None)
@given(words)
def test_output_is_lowercase_ascii_and_never_longer(text):
    prep = Preprocessor()
    out = prep(text)
    assert all(t.isascii() and t.isalpha() and t == t.lower() for t in out)
    assert len(out) <= len(tokenize(text, prep.config))


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=40))
def test_tokens_are_alphabetic(text):
    for t in tokenize(text, BARE):
        assert t and t.isalpha() and not any(c.isspace() for c in t)
