"""Shared fixtures: tiny corpora and a planted-topic generator."""

import json

import numpy as np
import pytest

from sengraph.corpus import build_vocab, ingest


def make_planted_corpus(
    path,
    n_topics=4,
    docs_per_topic=50,
    sents_per_doc=8,
    words_per_sent=8,
    shared_fraction=0.3,
    topic_vocab=30,
    shared_vocab=40,
    seed=0,
):
    """Write a jsonl corpus with topic-specific vocabularies.

    Each sentence mixes topic words with a shared noise vocabulary at
    ``shared_fraction``; the document label is the planted topic.
    """
    rng = np.random.default_rng(seed)
    shared = [f"noise{i}" for i in range(shared_vocab)]
    lines = []
    for t in range(n_topics):
        words = [f"t{t}w{i}" for i in range(topic_vocab)]
        for d in range(docs_per_topic):
            sents = []
            for _ in range(sents_per_doc):
                n_shared = int(round(shared_fraction * words_per_sent))
                toks = list(rng.choice(words, words_per_sent - n_shared)) + list(
                    rng.choice(shared, n_shared)
                )
                rng.shuffle(toks)
                sents.append(" ".join(toks) + ".")
            lines.append(
                json.dumps(
                    {"doc_id": f"t{t}d{d}", "label": f"topic{t}", "text": " ".join(sents)}
                )
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def tiny_corpus_file(tmp_path):
    """Six sentences in two labelled documents with overlapping words."""
    records = [
        {"doc_id": "doc-a", "label": "red", "text": "the cat sat here. the cat ran far. a dog sat here."},
        {"doc_id": "doc-b", "label": "blue", "text": "stars shine at night. the moon rose at night. stars fade here."},
    ]
    path = tmp_path / "tiny.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def tiny_corpus(tiny_corpus_file):
    corpus = ingest(tiny_corpus_file, "jsonl")
    build_vocab(corpus, min_count=1)
    return corpus


@pytest.fixture
def small_planted_file(tmp_path):
    return make_planted_corpus(
        tmp_path / "planted.jsonl", n_topics=2, docs_per_topic=6, sents_per_doc=4, seed=11
    )


@pytest.fixture
def small_planted(small_planted_file):
    corpus = ingest(small_planted_file, "jsonl")
    build_vocab(corpus, min_count=1)
    return corpus
