"""Deterministic synthetic corpus: two planted topics, clique-structured
neighborhoods, and per-document gold keyphrases of which roughly 30% (one
of three) are injected only into same-topic neighbor documents, never into
the document itself.

Used to measure whether neighborhood expansion actually recovers absent
keyphrases and fixes vocabulary mismatch at retrieval time: the injected
word of a document occurs, three times per clique, in the texts of its
three clique mates, next to the clique's hub words, and nowhere else.
"""

import random

TOPIC_SHARED = {
    "a": ["graph", "ranking", "node", "edge", "centrality", "spectral",
          "walk", "partition", "matrix", "cluster"],
    "b": ["translation", "decoder", "attention", "sentence", "alignment",
          "encoder", "token", "language", "beam", "vocabulary"],
}

TOPIC_CLIQUES = {
    "a": [["laplacian", "eigenvalue", "conductance", "modularity"],
          ["flow", "cut", "expansion", "sparsifier"],
          ["kernel", "embedding", "diffusion", "proximity"],
          ["motif", "triangle", "community", "overlap"],
          ["percolation", "resilience", "cascade", "robustness"]],
    "b": [["transformer", "softmax", "gradient", "dropout"],
          ["reordering", "lexicon", "fluency", "idiom"],
          ["subword", "segmentation", "merge", "frequency"],
          ["multilingual", "transfer", "pivot", "adapter"],
          ["latency", "quantization", "distillation", "throughput"]],
}

_SYLLABLES = ["bal", "cor", "dun", "fel", "gor", "hin", "jal", "kel", "lom",
              "mir", "nov", "pir", "quen", "rol", "sev", "tam", "urn", "vex",
              "wul", "zor"]


def _invented_words(count, seed=1234):
    rng = random.Random(seed)
    words = []
    seen = set()
    while len(words) < count:
        word = "".join(rng.choice(_SYLLABLES) for _ in range(3))
        if word not in seen:
            seen.add(word)
            words.append(word)
    return words


def build_synthetic_records(docs_per_topic=20, clique_size=4):
    """Returns (records, injected): JSON-ready corpus rows plus a map from
    doc id to its single injected absent gold keyphrase."""
    assert docs_per_topic % clique_size == 0
    word_iter = iter(_invented_words(2 * docs_per_topic))

    ids = {topic: [f"{topic}{i:02d}" for i in range(docs_per_topic)]
           for topic in ("a", "b")}
    injected = {doc_id: next(word_iter)
                for topic in ("a", "b") for doc_id in ids[topic]}

    records = []
    for topic in ("a", "b"):
        shared = TOPIC_SHARED[topic]
        cliques = TOPIC_CLIQUES[topic]
        for i, doc_id in enumerate(ids[topic]):
            clique_idx = i // clique_size
            clique = cliques[clique_idx % len(cliques)]
            mates = [other for j, other in enumerate(ids[topic])
                     if j // clique_size == clique_idx and other != doc_id]

            s = [shared[(i + offset) % len(shared)] for offset in range(10)]
            c = clique

            title = f"{s[0]} {s[1]} with {c[0]}"
            # every shared topic word occurs in every document, so the
            # injected terms are the dominant neighbor-only candidates
            sentences = [
                f"{s[0]} {s[1]} of the {s[2]} and {s[3]}.",
                f"{c[0]} {c[1]} methods for {c[2]} {c[3]} in the {s[4]}.",
                f"{s[8]} under the {s[9]}.",
            ]
            for mate in mates:
                w = injected[mate]
                # mates' absent words sit next to the clique hub words so
                # the domain evidence they accumulate is maximal
                sentences.append(f"{w} {c[1]} {w} {c[2]}.")

            gold = [f"{s[0]} {s[1]}", c[0], injected[doc_id]]
            records.append({
                "id": doc_id,
                "title": title,
                "abstract": " ".join(sentences),
                "keyphrases": gold,
            })
    return records, injected
