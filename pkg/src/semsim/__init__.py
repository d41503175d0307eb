"""Semantic similarity of short texts.

Three document-similarity methods over preprocessed token lists:

* ``tfidf-cosine``: cosine of tf-idf vectors
* ``w2v-cosine``: cosine of averaged word embeddings
* ``w2v-softcosine``: soft cosine of bag-of-words vectors, with term
  similarities taken from embedding cosines

and a top-1 nearest-neighbor accuracy harness to compare them.
"""

__version__ = "0.1.0"

from .corpus import Corpus, Document, load_agnews_csv, preprocess_corpus, sample
from .embeddings import EmbeddingTable, doc_vector, load_word2vec_text
from .evaluation import EvalReport, compare_methods, summary_table, top1_accuracy
from .pipeline import MethodConfig, Pipeline
from .preprocess import PreprocessConfig, Preprocessor, preprocess
from .similarity import (
    METHODS,
    SimilarityMatrix,
    TermSimilarityMatrix,
    build_term_similarity,
    cosine,
    exclude_self,
    most_similar,
    pairwise_matrix,
    soft_cosine,
    sparse_cosine,
)
from .tfidf import SparseVector, TfIdfModel, Vocabulary, fit

__all__ = [
    "Corpus", "Document", "load_agnews_csv", "preprocess_corpus", "sample",
    "EmbeddingTable", "doc_vector", "load_word2vec_text",
    "EvalReport", "compare_methods", "summary_table", "top1_accuracy",
    "MethodConfig", "Pipeline",
    "PreprocessConfig", "Preprocessor", "preprocess",
    "METHODS", "SimilarityMatrix", "TermSimilarityMatrix", "build_term_similarity",
    "cosine", "exclude_self", "most_similar", "pairwise_matrix", "soft_cosine", "sparse_cosine",
    "SparseVector", "TfIdfModel", "Vocabulary", "fit",
]
