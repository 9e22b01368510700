"""Command-line interface: extract | index | search | neighbors | evaluate.

Exit codes: 0 success, 1 usage/config error, 2 data error. Every command
is deterministic for a fixed (input, config) pair regardless of worker
count: per-document work is pure and a single writer emits records sorted
by document id. JSON Lines outputs start with one {"config": ...} record
echoing the effective configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .config import Config, load_config
from .corpus import Corpus, load_corpus, load_stopwords
from .errors import ConfigError, DataError
from .evaluation import evaluate_corpus, tfidf_baseline
from .graph import to_dot
from .index import build_index, load_index, save_index, search
from .ranking import (build_enriched_graph, extract_pipeline, pagerank,
                      rank_keyphrases)
from .similarity import TfidfSimilarity

MODELS = ("full", "no-expansion", "tfidf")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _add_common(cmd):
    cmd.add_argument("--config", metavar="PATH", help="key = value config file")
    cmd.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    cmd.add_argument("--workers", type=int, default=1,
                     help="parallel workers for per-document stages")


def _add_knobs(cmd):
    knobs = [
        ("--max-len", "max_len", int), ("--window", "window", int),
        ("--k-neighbors", "k_neighbors", int), ("--min-sim", "min_sim", float),
        ("--lambda-domain", "lambda_domain", float), ("--beta", "beta", float),
        ("--absent-quota", "absent_quota", int),
        ("--damping", "damping", float), ("--tol", "tol", float),
        ("--max-iter", "max_iter", int),
        ("--gamma-absent", "gamma_absent", float), ("--top-n", "top_n", int),
    ]
    for flag, dest, ftype in knobs:
        cmd.add_argument(flag, dest=dest, type=ftype, default=None)
    cmd.add_argument("--stopwords", dest="stopwords_path", default=None,
                     metavar="PATH")


def build_parser() -> _Parser:
    parser = _Parser(prog="kpindex",
                     description="Keyphrase indexing for scientific abstracts")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="rank keyphrases per document")
    p.add_argument("corpus", help="JSON Lines corpus file")
    p.add_argument("--dot-dump", metavar="DIR",
                   help="write one DOT graph per document for debugging")
    _add_common(p)
    _add_knobs(p)

    p = sub.add_parser("index", help="build and persist the inverted index")
    p.add_argument("corpus")
    p.add_argument("index_path", help="output index file")
    _add_common(p)
    _add_knobs(p)

    p = sub.add_parser("search", help="BM25 search over a persisted index")
    p.add_argument("index_path")
    p.add_argument("query")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--output", metavar="PATH")

    p = sub.add_parser("neighbors", help="emit each document's similar documents")
    p.add_argument("corpus")
    _add_common(p)
    _add_knobs(p)

    p = sub.add_parser("evaluate", help="score a model against gold keyphrases")
    p.add_argument("corpus")
    p.add_argument("--model", choices=MODELS, default="full")
    p.add_argument("--csv", action="store_true",
                   help="per-document CSV instead of the JSON report")
    _add_common(p)
    _add_knobs(p)

    return parser


def _effective_config(args) -> Config:
    cfg = load_config(args.config)
    overrides = {name: getattr(args, name, None) for name in cfg.to_dict()}
    return cfg.replace(**overrides)


def _load(args, cfg: Config) -> Corpus:
    stopwords = load_stopwords(cfg.stopwords_path)
    return load_corpus(args.corpus, stopwords=stopwords)


def _open_output(path):
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def _map_documents(fn, doc_ids, workers):
    if workers <= 1:
        return [fn(doc_id) for doc_id in doc_ids]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, doc_ids))


def _jsonl(record) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False)


def _extract_all(corpus: Corpus, cfg: Config, workers: int,
                 dot_dir: str | None = None) -> dict:
    provider = TfidfSimilarity(corpus) if cfg.k_neighbors > 0 else None

    def one(doc_id):
        if dot_dir is None:
            return doc_id, extract_pipeline(doc_id, corpus, cfg, provider)
        g = build_enriched_graph(doc_id, corpus, cfg, provider)
        Path(dot_dir).joinpath(f"{doc_id}.dot").write_text(
            to_dot(g, name=doc_id), encoding="utf-8")
        if not g.nodes:
            return doc_id, []
        scores = pagerank(g, cfg.rank_params())
        return doc_id, rank_keyphrases(g, scores, cfg.rank_params())

    if dot_dir is not None:
        Path(dot_dir).mkdir(parents=True, exist_ok=True)
    doc_ids = sorted(corpus.ids())
    return dict(_map_documents(one, doc_ids, workers))


def run_extract(args) -> int:
    cfg = _effective_config(args)
    corpus = _load(args, cfg)
    extracted = _extract_all(corpus, cfg, args.workers, args.dot_dump)
    out = _open_output(args.output)
    try:
        print(_jsonl({"config": cfg.to_dict()}), file=out)
        for doc_id in sorted(extracted):
            record = {"id": doc_id, "keyphrases": [
                {"phrase": rk.surface, "score": rk.score,
                 "origin": rk.origin.value}
                for rk in extracted[doc_id]]}
            print(_jsonl(record), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def run_index(args) -> int:
    cfg = _effective_config(args)
    corpus = _load(args, cfg)
    extracted = _extract_all(corpus, cfg, args.workers)
    index = build_index(corpus, extracted, cfg.to_dict())
    try:
        save_index(index, args.index_path)
    except OSError as exc:
        raise DataError(f"cannot write index to {args.index_path}: "
                        f"{exc.strerror}") from None
    return 0


def run_search(args) -> int:
    index = load_index(args.index_path)
    results = search(index, args.query, top_n=args.top)
    out = _open_output(args.output)
    try:
        print(_jsonl({"config": index.config}), file=out)
        for rank, (doc_id, score) in enumerate(results, start=1):
            print(_jsonl({"rank": rank, "id": doc_id, "score": score}), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def run_neighbors(args) -> int:
    cfg = _effective_config(args)
    corpus = _load(args, cfg)
    provider = TfidfSimilarity(corpus)

    def one(doc_id):
        nbrs = provider.neighbors(doc_id, cfg.k_neighbors, cfg.min_sim)
        return doc_id, [{"id": nid, "sim": sim} for nid, sim in nbrs.neighbors]

    rows = dict(_map_documents(one, sorted(corpus.ids()), args.workers))
    out = _open_output(args.output)
    try:
        print(_jsonl({"config": cfg.to_dict()}), file=out)
        for doc_id in sorted(rows):
            print(_jsonl({"id": doc_id, "neighbors": rows[doc_id]}), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _model_fn(name: str, corpus: Corpus, cfg: Config, workers: int):
    """Precompute predictions per document so evaluation stays a pure lookup."""
    if name == "tfidf":
        from .similarity import compute_idf
        idf = compute_idf(corpus)
        return lambda doc: tfidf_baseline(doc, corpus, cfg.top_n,
                                          cfg.max_len, idf)
    run_cfg = cfg
    if name == "no-expansion":
        run_cfg = cfg.replace(k_neighbors=0, absent_quota=0, lambda_domain=0.0)
    extracted = _extract_all(corpus, run_cfg, workers)
    return lambda doc: [rk.surface for rk in extracted.get(doc.id, [])]


def run_evaluate(args) -> int:
    cfg = _effective_config(args)
    corpus = _load(args, cfg)
    if args.model not in MODELS:
        raise DataError(f"unknown model {args.model!r}; "
                        f"valid names: {', '.join(MODELS)}")
    model = _model_fn(args.model, corpus, cfg, args.workers)
    report = evaluate_corpus(corpus, model, cfg, model_name=args.model)
    out = _open_output(args.output)
    try:
        if args.csv:
            print(f"# config: {_jsonl(cfg.to_dict())}", file=out)
            for row in report.csv_rows():
                print(",".join(str(v) for v in row), file=out)
        else:
            print(json.dumps(report.to_dict(), sort_keys=True, indent=2), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


_RUNNERS = {
    "extract": run_extract,
    "index": run_index,
    "search": run_search,
    "neighbors": run_neighbors,
    "evaluate": run_evaluate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataError, KeyError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
