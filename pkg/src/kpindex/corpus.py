"""Corpus loading, text normalization and keyphrase candidate extraction.

A document is indexed on its title and abstract only. Both fields are
tokenized into a single stream with a sentence-break marker between the
fields and after sentence-final punctuation; stems align 1:1 with tokens.
Candidates are stopword-free n-grams (default n <= 3) that never cross a
sentence break, grouped under their stem-sequence key.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Iterator

from .errors import CorpusError
from .porter import stem

#: Marker separating sentences (and the title from the abstract) in the
#: token stream. It can never collide with a real token: "<" and ">" are
#: token separators.
SENTENCE_BREAK = "<s>"


def tokenize(text: str) -> list[str]:
    """Split raw text into lowercase tokens plus sentence-break markers.

    Tokens are maximal runs of alphanumeric characters and internal
    hyphens; anything else separates tokens. A marker is emitted for
    ".", "!" or "?" followed by whitespace or end of text. Tokens with
    no alphanumeric character are dropped.
    """
    tokens: list[str] = []
    buf: list[str] = []

    def flush() -> None:
        if buf:
            tok = "".join(buf).strip("-")
            if any(c.isalnum() for c in tok):
                tokens.append(tok)
            buf.clear()

    n = len(text)
    for i, ch in enumerate(text):
        if ch.isalnum() or ch == "-":
            buf.append(ch.lower())
            continue
        flush()
        if ch in ".!?" and (i + 1 == n or text[i + 1].isspace()):
            tokens.append(SENTENCE_BREAK)
    flush()
    return tokens


@dataclass
class Document:
    id: str
    title: str
    abstract: str
    gold: list[str] | None = None
    tokens: list[str] = field(default_factory=list)
    stems: list[str] = field(default_factory=list)

    @classmethod
    def build(cls, id: str, title: str, abstract: str,
              gold: list[str] | None = None) -> "Document":
        """Construct a document with its token and stem views computed."""
        tokens = tokenize(title) + [SENTENCE_BREAK] + tokenize(abstract)
        stems = [t if t == SENTENCE_BREAK else stem(t) for t in tokens]
        return cls(id=id, title=title, abstract=abstract, gold=gold,
                   tokens=tokens, stems=stems)


@dataclass
class Candidate:
    """A stemmed n-gram keyphrase candidate and where it occurred.

    The key (stems joined by single spaces) is the canonical identity;
    surfaces collects the distinct surface forms with their counts, and
    first_offset remembers the earliest start of each surface so display
    ties can be broken by first occurrence.
    """

    key: str
    length: int
    occurrences: list[tuple[int, int]] = field(default_factory=list)
    surfaces: Counter = field(default_factory=Counter)
    first_offset: dict[str, int] = field(default_factory=dict)

    def add(self, start: int, surface: str) -> None:
        self.occurrences.append((start, self.length))
        self.surfaces[surface] += 1
        self.first_offset.setdefault(surface, start)

    @property
    def frequency(self) -> int:
        return len(self.occurrences)

    def best_surface(self) -> str:
        return preferred_surface(self.surfaces, self.first_offset)


def preferred_surface(surfaces: Counter, first_offset: dict[str, int] | None = None) -> str:
    """Most frequent surface form; ties go to the earliest occurrence when
    offsets are known, then lexicographic."""
    if not surfaces:
        return ""
    offsets = first_offset or {}
    return min(surfaces, key=lambda s: (-surfaces[s], offsets.get(s, 1 << 60), s))


def _blocked(token: str, stopwords: frozenset[str]) -> bool:
    return token == SENTENCE_BREAK or token in stopwords


def extract_candidates(doc: Document, max_len: int = 3,
                       stopwords: frozenset[str] = frozenset()) -> dict[str, Candidate]:
    """All stopword-free n-grams of length 1..max_len, keyed by stem sequence.

    No occurrence crosses a sentence break. Deterministic for a fixed
    (document, max_len, stopwords) input.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    cands: dict[str, Candidate] = {}
    toks, stems = doc.tokens, doc.stems
    for i in range(len(toks)):
        if _blocked(toks[i], stopwords):
            continue
        for n in range(1, max_len + 1):
            j = i + n
            if j > len(toks) or _blocked(toks[j - 1], stopwords):
                break
            key = " ".join(stems[i:j])
            cand = cands.get(key)
            if cand is None:
                cand = cands[key] = Candidate(key=key, length=n)
            cand.add(i, " ".join(toks[i:j]))
    return cands


def key_occurrences(doc: Document, key: str,
                    stopwords: frozenset[str] = frozenset()) -> list[int]:
    """Start offsets where the key's stem sequence occurs as a valid span.

    A span is valid under the same rules as candidate extraction: no
    stopword token and no sentence break inside it.
    """
    seq = key.split(" ")
    n = len(seq)
    starts = []
    for i in range(len(doc.stems) - n + 1):
        if doc.stems[i:i + n] == seq and not any(
                _blocked(t, stopwords) for t in doc.tokens[i:i + n]):
            starts.append(i)
    return starts


def index_stems(doc: Document, stopwords: frozenset[str],
                stopword_stems: frozenset[str]) -> Iterator[str]:
    """Stems of a document that participate in indexing and weighting.

    Skips sentence breaks, stopword tokens and stems of stopwords.
    """
    for tok, st in zip(doc.tokens, doc.stems):
        if tok == SENTENCE_BREAK or tok in stopwords or st in stopword_stems:
            continue
        yield st


class Corpus:
    """An id-indexed document collection with a fixed stopword set."""

    def __init__(self, documents: Iterable[Document],
                 stopwords: Iterable[str] = ()) -> None:
        self._docs: dict[str, Document] = {}
        for doc in documents:
            if doc.id in self._docs:
                raise CorpusError(f"duplicate id {doc.id}")
            self._docs[doc.id] = doc
        self.stopwords = frozenset(stopwords)
        self.stopword_stems = frozenset(stem(w) for w in self.stopwords)
        self._candidate_cache: dict[tuple[str, int], dict[str, Candidate]] = {}

    def __len__(self) -> int:
        return len(self._docs)

    def __iter__(self) -> Iterator[Document]:
        return iter(self._docs.values())

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def __getitem__(self, doc_id: str) -> Document:
        try:
            return self._docs[doc_id]
        except KeyError:
            raise KeyError(f"unknown document id {doc_id}") from None

    def ids(self) -> list[str]:
        return list(self._docs)

    def candidates_for(self, doc_id: str, max_len: int = 3) -> dict[str, Candidate]:
        """Candidate extraction memoized per (document, max_len); treat as read-only."""
        cache_key = (doc_id, max_len)
        got = self._candidate_cache.get(cache_key)
        if got is None:
            got = extract_candidates(self[doc_id], max_len, self.stopwords)
            self._candidate_cache[cache_key] = got
        return got


def default_stopwords() -> frozenset[str]:
    """The English stopword list bundled with the package."""
    text = resources.files("kpindex").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def load_stopwords(path: str | None) -> frozenset[str]:
    """Stopwords from a one-token-per-line file, or the bundled default."""
    if path is None:
        return default_stopwords()
    with open(path, encoding="utf-8") as fh:
        return frozenset(line.strip() for line in fh if line.strip())


def load_corpus(path: str, format: str = "jsonl",
                stopwords: Iterable[str] | None = None) -> Corpus:
    """Load a JSON Lines corpus: one object per line with id, title, abstract
    and an optional keyphrases array.

    Raises CorpusError naming the offending line for malformed records and
    naming the id for duplicates.
    """
    if format != "jsonl":
        raise CorpusError(f"unsupported corpus format {format!r}")
    docs: list[Document] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(record, dict):
                raise CorpusError(f"line {lineno}: record is not an object")
            for fld in ("id", "title", "abstract"):
                if fld not in record:
                    raise CorpusError(f"line {lineno}: missing field {fld!r}")
                if not isinstance(record[fld], str):
                    raise CorpusError(f"line {lineno}: field {fld!r} is not a string")
            gold = record.get("keyphrases")
            if gold is not None and (
                    not isinstance(gold, list)
                    or any(not isinstance(k, str) for k in gold)):
                raise CorpusError(f"line {lineno}: keyphrases must be an array of strings")
            docs.append(Document.build(record["id"], record["title"],
                                       record["abstract"], gold))
    if stopwords is None:
        stopwords = default_stopwords()
    return Corpus(docs, stopwords)
