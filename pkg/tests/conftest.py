import json

import pytest

from kpindex import Corpus, Document, default_stopwords


@pytest.fixture(scope="session")
def stopwords():
    return default_stopwords()


def make_corpus(rows, stopwords):
    """rows: iterable of (id, title, abstract) or (id, title, abstract, gold)."""
    docs = [Document.build(*row) for row in rows]
    return Corpus(docs, stopwords)


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return str(path)


@pytest.fixture
def two_doc_corpus(stopwords):
    """Target 'a' plus one similar neighbor 'b' that keeps mentioning a
    phrase ('semantic index') the target never contains."""
    return make_corpus([
        ("a", "Graph ranking for document collections",
         "Graph ranking methods score candidate phrases. "
         "The ranking graph links related phrases across the document."),
        ("b", "Semantic index construction for graph ranking",
         "A semantic index improves graph ranking of documents. "
         "The semantic index links ranking graph phrases. "
         "Document collections gain from the semantic index and graph ranking."),
    ], stopwords)


@pytest.fixture(scope="session")
def toy_gold_corpus(stopwords):
    """Three hand-scored documents used by the evaluation arithmetic tests."""
    return make_corpus([
        ("e1", "Graph ranking",
         "Graph ranking methods for text. Ranking quality matters.",
         ["graph ranking", "text ranking", "keyphrase extraction", "ranking"]),
        ("e2", "Neural networks",
         "Deep neural networks learn representations. Networks generalize.",
         ["neural networks", "deep learning", "representation learning"]),
        ("e3", "Sorting algorithms",
         "Quicksort and merge sort are classic sorting algorithms.",
         ["sorting algorithms", "quicksort", "computational complexity"]),
    ], stopwords)
