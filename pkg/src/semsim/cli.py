"""Command-line front end.

    semsim ingest train.csv -o corpus.jsonl --sample 2000 --seed 7
    semsim filter-embeddings --corpus corpus.jsonl --embeddings numberbatch.txt.gz -o emb.txt
    semsim simmatrix --corpus corpus.jsonl --method tfidf-cosine -o tfidf.simm
    semsim evaluate --corpus corpus.jsonl --method all --embeddings emb.txt --output-dir out/
    semsim query --corpus corpus.jsonl --id 17 -k 5

Any long option can also be given as an environment variable ``SEMSIM_<NAME>``
(upper case, dashes as underscores, e.g. ``SEMSIM_TOPK=50``); command-line
flags take precedence. Exit status: 0 ok, 1 I/O failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import load_agnews_csv, preprocess_corpus, read_jsonl, sample, write_jsonl
from .embeddings import filter_word2vec_text, load_word2vec_text, oov_rate
from .errors import MatrixTooSmall, SemsimError
from .evaluation import (
    evaluate_method,
    summary_table,
    summary_tsv,
    top1_accuracy,
    write_pairs,
)
from .pipeline import MethodConfig, MissingEmbeddings, Pipeline
from .preprocess import DEFAULT_LEXICON, DEFAULT_STOPWORDS, PreprocessConfig, Preprocessor
from .similarity import (
    METHODS,
    TFIDF_COSINE,
    exclude_self,
    ranked_neighbors,
    read_simm,
    write_simm,
    write_tsv,
)

log = logging.getLogger("semsim")

ENV_PREFIX = "SEMSIM_"
_TRUE = {"1", "true", "yes", "on"}


def _env(dest, default, type=str):
    value = os.environ.get(ENV_PREFIX + dest.upper())
    if value is None:
        return default
    if type is bool:
        return value.strip().lower() in _TRUE
    return type(value)


def _add(p, *flags, type=str, default=None, **kw):
    dest = kw.pop("dest", flags[-1].lstrip("-").replace("-", "_"))
    p.add_argument(*flags, dest=dest, type=type, default=_env(dest, default, type), **kw)


def _add_flag(p, flag, *, default=False, **kw):
    dest = kw.pop("dest", flag.lstrip("-").replace("-", "_"))
    p.add_argument(flag, dest=dest, action="store_true", default=_env(dest, default, bool), **kw)


def _optional_path(value):
    return None if value.lower() in ("", "none") else Path(value)


def _add_preprocess_args(p):
    g = p.add_argument_group("preprocessing")
    _add(g, "--stopwords", type=_optional_path, default=DEFAULT_STOPWORDS,
         help="stopword file, one word per line ('none' to disable)")
    _add(g, "--lexicon", type=_optional_path, default=DEFAULT_LEXICON,
         help="surface<TAB>lemma file ('none' to disable)")
    _add(g, "--min-token-length", type=int, default=2)
    _add_flag(g, "--no-lowercase")


def _add_method_args(p, allow_all=False):
    choices = [*METHODS, "all"] if allow_all else list(METHODS)
    _add(p, "--method", default=TFIDF_COSINE, choices=choices)
    g = p.add_argument_group("tf-idf")
    g.add_argument("--smoothing", action=argparse.BooleanOptionalAction,
                   default=_env("smoothing", True, bool),
                   help="smoothed idf ln((1+N)/(1+df))+1 (default) or raw ln(N/df)")
    _add_flag(g, "--no-normalize", help="keep raw tf*idf weights instead of unit L2 norm")
    _add(g, "--min-df", type=int, default=1)
    _add(g, "--max-df", type=float, default=1.0, help="fraction of documents")
    _add(g, "--fit-on", type=Path, help="fit tf-idf on this (larger) corpus cache instead")
    g = p.add_argument_group("embeddings")
    _add(g, "--embeddings", type=Path, help="word2vec text file (.gz accepted)")
    _add(g, "--limit", type=int, help="load at most this many vectors")
    _add(g, "--key-prefix", help="strip this prefix from keys, e.g. /c/en/")
    _add_flag(g, "--skip-oov", help="average over in-vocabulary tokens only")
    g = p.add_argument_group("term similarity matrix")
    _add(g, "--exponent", type=float, default=2.0)
    _add(g, "--threshold", type=float, default=0.0)
    _add(g, "--topk", type=int, default=100)
    _add(g, "--soft-weighting", default="counts", choices=["counts", "tfidf"])


def _preprocess_config(args) -> PreprocessConfig:
    return PreprocessConfig(
        lowercase=not args.no_lowercase,
        min_token_length=args.min_token_length,
        stopword_path=args.stopwords,
        lexicon_path=args.lexicon,
    )


def _method_config(args) -> MethodConfig:
    return MethodConfig(
        smoothing=args.smoothing,
        normalize=not args.no_normalize,
        min_df=args.min_df,
        max_df=args.max_df,
        skip_oov=args.skip_oov,
        exponent=args.exponent,
        threshold=args.threshold,
        topk=args.topk,
        soft_weighting=args.soft_weighting,
    )


def effective_config(args) -> dict:
    """Every option of the run, as JSON-ready values."""
    out = {}
    for k, v in sorted(vars(args).items()):
        if k == "func":
            continue
        out[k] = str(v) if isinstance(v, Path) else v
    return out


def _load_table(args, methods):
    if all(m == TFIDF_COSINE for m in methods):
        return None
    if args.embeddings is None:
        raise MissingEmbeddings(f"--embeddings is required for {', '.join(m for m in methods if m != TFIDF_COSINE)}")
    table = load_word2vec_text(args.embeddings, args.limit, args.key_prefix)
    log.info("loaded %d vectors of dim %d from %s", len(table), table.dim, args.embeddings)
    return table


def _fit_docs(args):
    if args.fit_on is None:
        return None
    return read_jsonl(args.fit_on).token_lists


def _load_corpus(path):
    corpus = read_jsonl(path)
    log.info("read %d documents from %s", len(corpus), path)
    return corpus


def cmd_ingest(args):
    corpus = load_agnews_csv(args.input)
    if args.sample is not None:
        corpus = sample(corpus, args.sample, args.seed)
    corpus = preprocess_corpus(corpus, Preprocessor(_preprocess_config(args)))
    write_jsonl(corpus, args.output)
    print(f"{len(corpus)} documents -> {args.output}")
    for label, count in corpus.class_counts().items():
        print(f"  {label}\t{count}")
    empty = sum(1 for d in corpus if not d.tokens)
    if empty:
        print(f"  ({empty} documents have no tokens after preprocessing)")
    return 0


def cmd_filter_embeddings(args):
    corpus = _load_corpus(args.corpus)
    vocab = {t for d in corpus for t in d.tokens}
    kept, dim = filter_word2vec_text(args.embeddings, args.output, vocab, args.key_prefix)
    print(f"kept {kept} of {len(vocab)} corpus terms (dim {dim}) -> {args.output}")
    if vocab:
        table = load_word2vec_text(args.output)
        rate = 100.0 * oov_rate(corpus.token_lists, table)
        missing = 100.0 * (len(vocab) - kept) / len(vocab)
        print(f"warning: {missing:.2f}% of corpus terms ({rate:.2f}% of tokens) have no vector",
              file=sys.stderr)
    return 0


def cmd_simmatrix(args):
    corpus = _load_corpus(args.corpus)
    if len(corpus) < 2:
        raise MatrixTooSmall(f"need at least 2 documents, {args.corpus} has {len(corpus)}")
    table = _load_table(args, [args.method])
    pipe = Pipeline(args.method, corpus.token_lists, _method_config(args), table, _fit_docs(args))
    matrix = exclude_self(pipe.matrix())
    write_simm(matrix, args.output)
    if args.tsv:
        write_tsv(matrix, args.tsv)
    if args.term_matrix and pipe.term_matrix is not None:
        pipe.term_matrix.write(args.term_matrix)
    print(f"{matrix.n}x{matrix.n} {matrix.method} matrix -> {args.output}")
    return 0


def _write_report(report, out_dir, labels, pairs):
    stem = out_dir / report.method
    stem.with_suffix(".json").write_text(report.to_json(), encoding="utf-8")
    stem.with_suffix(".txt").write_text(report.to_text(), encoding="utf-8")
    if pairs:
        write_pairs(report, labels, out_dir / f"{report.method}.pairs.tsv")


def cmd_evaluate(args):
    corpus = _load_corpus(args.corpus)
    out_dir = args.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    echo = {"run": effective_config(args)}
    reports, raw_matrices = [], {}
    if args.matrix is not None:
        matrix = read_simm(args.matrix)
        report = top1_accuracy(matrix, corpus.labels, None, echo, include_pairs=args.pairs)
        reports.append(report)
        raw_matrices[report.method] = matrix
    else:
        methods = list(METHODS) if args.method == "all" else [args.method]
        table = _load_table(args, methods)
        fit_docs = _fit_docs(args)
        for m in methods:
            report, raw = evaluate_method(
                corpus, m, table, _method_config(args), fit_docs, echo, include_pairs=args.pairs
            )
            reports.append(report)
            raw_matrices[m] = raw
    for r in reports:
        _write_report(r, out_dir, corpus.labels, args.pairs)
    table_text = summary_table(reports)
    (out_dir / "summary.txt").write_text(table_text, encoding="utf-8")
    (out_dir / "summary.tsv").write_text(summary_tsv(reports), encoding="utf-8")
    if args.figures is not None:
        from .plotting import plot_accuracy, plot_neighbor_protocol

        args.figures.mkdir(parents=True, exist_ok=True)
        plot_accuracy(reports, args.figures / "accuracy.png")
        for m, mat in raw_matrices.items():
            plot_neighbor_protocol(mat, args.figures / f"{m}_neighbors.png", doc_labels=corpus.labels)
    sys.stdout.write(table_text)
    return 0


def _snippet(text, width=70):
    text = " ".join(text.split())
    return text if len(text) <= width else text[: width - 3] + "..."


def cmd_query(args):
    corpus = _load_corpus(args.corpus)
    table = _load_table(args, [args.method])
    pipe = Pipeline(args.method, corpus.token_lists, _method_config(args), table, _fit_docs(args))
    if args.k < 1:
        raise SemsimError("-k must be at least 1")
    if args.id is not None:
        if not 0 <= args.id < len(corpus):
            raise SemsimError(f"unknown document id {args.id}; corpus has ids 0..{len(corpus) - 1}")
        if len(corpus) < 2:
            raise MatrixTooSmall("need at least 2 documents to find a neighbor")
        k = args.k
        if k > len(corpus) - 1:
            k = len(corpus) - 1
            print(f"warning: only {k} other documents; returning {k}", file=sys.stderr)
        neighbors = ranked_neighbors(exclude_self(pipe.matrix()), args.id, k)
        doc = corpus[args.id]
        print(f"query\t{doc.id}\t{doc.label}\t\t{_snippet(doc.raw)}")
    else:
        tokens = Preprocessor(_preprocess_config(args))(args.text)
        scores = pipe.query_scores(tokens)
        k = args.k
        if k > len(corpus):
            k = len(corpus)
            print(f"warning: only {k} documents; returning {k}", file=sys.stderr)
        order = np.argsort(-scores, kind="stable")[:k]
        neighbors = [(int(j), float(scores[j])) for j in order]
        print(f"query\t-\t-\t\t{_snippet(args.text)}")
    for rank, (j, score) in enumerate(neighbors, 1):
        d = corpus[j]
        print(f"{rank}\t{d.id}\t{d.label}\t{score:.4f}\t{_snippet(d.raw)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semsim",
        description="Short-text semantic similarity: tf-idf cosine, averaged word-vector "
        "cosine, and soft cosine, with top-1 nearest-neighbor evaluation.",
        epilog=f"Options may also be set as {ENV_PREFIX}<OPTION> environment variables.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load an AG News CSV, preprocess, write a corpus cache")
    p.add_argument("input", type=Path)
    _add(p, "-o", "--output", type=Path, default=Path("corpus.jsonl"))
    _add(p, "--sample", type=int, help="keep a random sample of this many documents")
    _add(p, "--seed", type=int, default=0)
    _add_preprocess_args(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("filter-embeddings", help="restrict an embedding file to corpus vocabulary")
    _add(p, "--corpus", type=Path, required=_env("corpus", None) is None)
    _add(p, "--embeddings", type=Path, required=_env("embeddings", None) is None)
    _add(p, "-o", "--output", type=Path, required=_env("output", None) is None)
    _add(p, "--key-prefix", help="strip this prefix from keys, e.g. /c/en/")
    p.set_defaults(func=cmd_filter_embeddings)

    p = sub.add_parser("simmatrix", help="write the self-excluded document similarity matrix")
    _add(p, "--corpus", type=Path, required=_env("corpus", None) is None)
    _add(p, "-o", "--output", type=Path, required=_env("output", None) is None, help="SIMM1 file")
    _add(p, "--tsv", type=Path, help="also write a TSV copy")
    _add(p, "--term-matrix", type=Path, help="also dump the term similarity matrix (soft cosine)")
    _add_method_args(p)
    p.set_defaults(func=cmd_simmatrix)

    p = sub.add_parser("evaluate", help="top-1 nearest-neighbor accuracy report")
    _add(p, "--corpus", type=Path, required=_env("corpus", None) is None)
    _add(p, "--matrix", type=Path, help="score a precomputed SIMM1 file instead")
    _add(p, "--output-dir", type=Path, default=Path("reports"))
    _add_flag(p, "--pairs", help="also write each document's nearest neighbor")
    _add(p, "--figures", type=Path, help="directory for PNG figures")
    _add_method_args(p, allow_all=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("query", help="nearest neighbors of one document or a free text")
    _add(p, "--corpus", type=Path, required=_env("corpus", None) is None)
    q = p.add_mutually_exclusive_group(required=True)
    q.add_argument("--id", type=int)
    q.add_argument("--text")
    _add(p, "-k", type=int, default=5)
    _add_method_args(p)
    _add_preprocess_args(p)
    p.set_defaults(func=cmd_query)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except SemsimError as exc:
        print(f"semsim {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"semsim {args.command}: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
