import pytest
from hypothesis import given, settings, strategies as st

from kpindex import (Corpus, CorpusError, Document, SENTENCE_BREAK,
                     extract_candidates, key_occurrences, load_corpus,
                     tokenize)
from kpindex.porter import stem

from conftest import write_jsonl


class TestTokenize:
    def test_empty(self):
        assert tokenize("") == []

    def test_sentence_breaks_and_hyphens(self):
        assert tokenize("Graph-based ranking. Models!") == [
            "graph-based", "ranking", SENTENCE_BREAK, "models", SENTENCE_BREAK]

    def test_punctuation_only_token_dropped(self):
        assert tokenize("a  ,  b") == ["a", "b"]

    def test_period_without_following_space_is_not_a_break(self):
        assert tokenize("a 3.5 gain") == ["a", "3", "5", "gain"]

    def test_question_and_exclamation(self):
        assert tokenize("Why? Because!") == [
            "why", SENTENCE_BREAK, "because", SENTENCE_BREAK]

    def test_lowercasing(self):
        assert tokenize("TF-IDF Weighting") == ["tf-idf", "weighting"]

    def test_edge_hyphens_stripped(self):
        assert tokenize("-based pre-") == ["based", "pre"]

    @given(st.text(max_size=200))
    @settings(max_examples=200)
    def test_tokens_lowercase_and_alnum(self, text):
        for tok in tokenize(text):
            if tok == SENTENCE_BREAK:
                continue
            assert tok == tok.lower()
            assert any(c.isalnum() for c in tok)


class TestDocument:
    def test_field_break_and_alignment(self):
        doc = Document.build("d", "Neural ranking", "Graphs help. A lot.")
        assert doc.tokens == ["neural", "ranking", SENTENCE_BREAK, "graphs",
                              "help", SENTENCE_BREAK, "a", "lot",
                              SENTENCE_BREAK]
        assert len(doc.tokens) == len(doc.stems)
        assert doc.stems[0] == "neural"
        assert doc.stems[3] == "graph"
        assert doc.stems[2] == SENTENCE_BREAK


class TestLoadCorpus:
    def test_two_records(self, tmp_path, stopwords):
        path = write_jsonl(tmp_path / "c.jsonl", [
            {"id": "a", "title": "T", "abstract": "A."},
            {"id": "b", "title": "U", "abstract": "B."},
        ])
        corpus = load_corpus(path, stopwords=stopwords)
        assert len(corpus) == 2
        assert corpus["a"].title == "T"

    def test_duplicate_id(self, tmp_path):
        path = write_jsonl(tmp_path / "c.jsonl", [
            {"id": "a", "title": "T", "abstract": "A."},
            {"id": "a", "title": "U", "abstract": "B."},
        ])
        with pytest.raises(CorpusError, match="duplicate id a"):
            load_corpus(path)

    def test_missing_field_names_line(self, tmp_path):
        path = write_jsonl(tmp_path / "c.jsonl", [
            {"id": "a", "title": "T", "abstract": "A."},
            {"id": "b", "title": "U"},
        ])
        with pytest.raises(CorpusError, match="line 2.*abstract"):
            load_corpus(path)

    def test_invalid_json_names_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a", "title": "T", "abstract": "A."}\n{oops\n')
        with pytest.raises(CorpusError, match="line 2"):
            load_corpus(str(path))

    def test_keyphrases_loaded(self, tmp_path, stopwords):
        path = write_jsonl(tmp_path / "c.jsonl", [
            {"id": "a", "title": "T", "abstract": "A.",
             "keyphrases": ["graph ranking"]},
        ])
        corpus = load_corpus(path, stopwords=stopwords)
        assert corpus["a"].gold == ["graph ranking"]

    def test_unknown_format(self, tmp_path):
        with pytest.raises(CorpusError, match="format"):
            load_corpus(str(tmp_path / "c.csv"), format="csv")

    def test_unknown_doc_id(self, stopwords):
        corpus = Corpus([Document.build("a", "T", "A.")], stopwords)
        with pytest.raises(KeyError, match="unknown document id"):
            corpus["zzz"]


def doc_from_tokens(tokens, doc_id="d"):
    """Build a document whose token stream is exactly `tokens`."""
    doc = Document.build(doc_id, "", "")
    doc.tokens = list(tokens)
    doc.stems = [t if t == SENTENCE_BREAK else stem(t) for t in tokens]
    return doc


class TestExtractCandidates:
    def test_ngram_enumeration(self):
        doc = doc_from_tokens(["the", "neural", "network"])
        cands = extract_candidates(doc, max_len=2, stopwords=frozenset({"the"}))
        assert set(cands) == {"neural", "network", "neural network"}

    def test_all_stopwords(self):
        doc = doc_from_tokens(["the", "of"])
        assert extract_candidates(doc, 3, frozenset({"the", "of"})) == {}

    def test_inflections_merge_under_one_key(self):
        doc = Document.build("d", "Networks", "The network grows.")
        cands = extract_candidates(doc, 3, frozenset({"the"}))
        cand = cands["network"]
        assert sorted(cand.surfaces) == ["network", "networks"]
        assert cand.frequency == 2

    def test_no_candidate_crosses_sentence_break(self):
        doc = Document.build("d", "", "Graphs rank. Phrases score.")
        cands = extract_candidates(doc, 3, frozenset())
        assert "rank phrase" not in cands
        assert "graph rank" in cands

    def test_unigram_keys_equal_nonstop_stems(self, stopwords):
        doc = Document.build("d", "Ranking graphs",
                             "The ranked graphs of documents. Results matter!")
        cands = extract_candidates(doc, 3, stopwords)
        unigrams = {k for k, c in cands.items() if c.length == 1}
        expected = {s for t, s in zip(doc.tokens, doc.stems)
                    if t != SENTENCE_BREAK and t not in stopwords}
        assert unigrams == expected

    def test_occurrences_sorted_and_in_bounds(self, stopwords):
        doc = Document.build("d", "Graph ranking",
                             "Graph ranking ranks graphs. Graph models rank.")
        for cand in extract_candidates(doc, 3, stopwords).values():
            starts = [s for s, _ in cand.occurrences]
            assert starts == sorted(starts)
            for start, length in cand.occurrences:
                assert 0 <= start and start + length <= len(doc.tokens)
                span = doc.tokens[start:start + length]
                assert SENTENCE_BREAK not in span

    def test_restemming_surfaces_reproduces_key(self, stopwords):
        doc = Document.build("d", "Ranking networks",
                             "Ranked networks. A network ranks linked graphs.")
        for key, cand in extract_candidates(doc, 3, stopwords).items():
            for surface in cand.surfaces:
                assert " ".join(stem(t) for t in surface.split(" ")) == key

    @given(st.lists(st.sampled_from(
        ["graph", "rank", "the", "of", "network", "model", "deep", "index"]),
        max_size=12))
    @settings(max_examples=100)
    def test_deterministic(self, words):
        doc = doc_from_tokens(words)
        stop = frozenset({"the", "of"})
        first = extract_candidates(doc, 3, stop)
        second = extract_candidates(doc, 3, stop)
        assert set(first) == set(second)
        for key in first:
            assert first[key].occurrences == second[key].occurrences
            assert first[key].surfaces == second[key].surfaces


class TestKeyOccurrences:
    def test_matches_candidate_occurrences(self, stopwords):
        doc = Document.build("d", "Graph ranking models",
                             "Graph ranking helps. Ranking graphs scores rank.")
        cands = extract_candidates(doc, 3, stopwords)
        for key, cand in cands.items():
            starts = [s for s, _ in cand.occurrences]
            assert key_occurrences(doc, key, stopwords) == starts

    def test_stopword_positions_do_not_match(self):
        doc = doc_from_tokens(["the", "graph"])
        assert key_occurrences(doc, "the graph", frozenset({"the"})) == []
        assert key_occurrences(doc, "graph", frozenset({"the"})) == [1]
