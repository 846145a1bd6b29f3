"""Ingestion, segmentation, vocabulary and subsampling."""

import json
import math
import re

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sengraph.corpus import (
    build_vocab,
    ingest,
    read_labels,
    segment,
    subsample_keep_prob,
    tokenize,
    write_labels,
)
from sengraph.errors import EmptyCorpusError, EmptyVocabError, InputError


class TestTokenize:
    def test_lowercase_and_punct(self):
        assert tokenize("The cat, sat!") == ["the", "cat", "sat"]

    def test_internal_hyphen_apostrophe_kept(self):
        assert tokenize("It's a well-known fact.") == ["it's", "a", "well-known", "fact"]

    def test_pure_punctuation_dropped(self):
        assert tokenize("hello -- world !!") == ["hello", "world"]


class TestSegment:
    def test_period_boundaries(self):
        assert segment("A b. C d.") == ["A b.", "C d."]

    def test_question_exclaim(self):
        assert segment("Really? Yes! Sure.") == ["Really?", "Yes!", "Sure."]

    def test_no_trailing_period(self):
        assert segment("one two. three four") == ["one two.", "three four"]


class TestIngest:
    def test_two_sentence_doc(self, tmp_path):
        path = tmp_path / "one.jsonl"
        path.write_text(json.dumps({"doc_id": "d", "text": "A b. C d."}) + "\n")
        corpus = ingest(path, "jsonl")
        assert len(corpus.documents) == 1
        assert corpus.n_sentences == 2
        assert corpus.total_words() == 4

    def test_blank_lines_in_dir_format_dropped(self, tmp_path):
        d = tmp_path / "docs"
        d.mkdir()
        (d / "x.txt").write_text("first sentence here\n\n\nsecond sentence here\n")
        corpus = ingest(d, "dir")
        assert corpus.n_sentences == 2

    def test_dir_sidecar_labels(self, tmp_path):
        d = tmp_path / "docs"
        d.mkdir()
        (d / "a.txt").write_text("alpha beta\n")
        (d / "b.txt").write_text("gamma delta\n")
        (d / "labels.tsv").write_text("a\tred\nb\tblue\n")
        corpus = ingest(d, "dir")
        assert {doc.doc_id: doc.label for doc in corpus.documents} == {"a": "red", "b": "blue"}

    def test_missing_path(self, tmp_path):
        with pytest.raises(InputError):
            ingest(tmp_path / "nope.jsonl", "jsonl")

    def test_zero_documents(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("\n")
        with pytest.raises(EmptyCorpusError):
            ingest(path, "jsonl")

    def test_reingest_identical(self, tiny_corpus_file):
        a = ingest(tiny_corpus_file, "jsonl")
        b = ingest(tiny_corpus_file, "jsonl")
        assert [s.words for s in a.sentences] == [s.words for s in b.sentences]
        assert [d.sentence_ids for d in a.documents] == [d.sentence_ids for d in b.documents]

    def test_token_total_against_independent_count(self, tmp_path):
        # oracle: a regex tokenizer written independently of the
        # production one, applied to the same normalization rules
        rng = np.random.default_rng(5)
        words = ["alpha", "beta", "Gamma,", "delta!", "x-ray", "it's", "(paren)", "plain"]
        lines = []
        for d in range(20):
            text = " ".join(rng.choice(words, size=rng.integers(4, 12))) + "."
            lines.append(json.dumps({"doc_id": f"d{d}", "text": text}))
        path = tmp_path / "sample.jsonl"
        path.write_text("\n".join(lines) + "\n")

        # all edge punctuation in this fixture is ASCII, so stripping
        # non-alphanumerics from the ends is an equivalent rule
        expected = 0
        for line in path.read_text().splitlines():
            text = json.loads(line)["text"].lower()
            for raw in text.split():
                if re.sub(r"^[^a-z0-9]+|[^a-z0-9]+$", "", raw):
                    expected += 1
        corpus = ingest(path, "jsonl")
        assert corpus.total_words() == expected


class TestBuildVocab:
    def _corpus(self, tmp_path, text):
        path = tmp_path / "c.jsonl"
        path.write_text(json.dumps({"doc_id": "d", "text": text}) + "\n")
        return ingest(path, "jsonl")

    def test_min_count_filters(self, tmp_path):
        corpus = self._corpus(tmp_path, "a a a a a b.")
        vocab = build_vocab(corpus, min_count=2)
        assert vocab.words == ["a"]

    def test_min_count_one_keeps_all(self, tmp_path):
        corpus = self._corpus(tmp_path, "a b c a.")
        vocab = build_vocab(corpus, min_count=1)
        assert len(vocab) == 3

    def test_tie_break_lexicographic(self, tmp_path):
        corpus = self._corpus(tmp_path, "x y x y x y z.")
        vocab = build_vocab(corpus, min_count=1)
        assert vocab.words == ["x", "y", "z"]

    def test_counts_descending(self, small_planted):
        counts = small_planted.vocab.counts
        assert all(counts[i] >= counts[i + 1] for i in range(len(counts) - 1))

    def test_all_filtered_raises(self, tmp_path):
        corpus = self._corpus(tmp_path, "a b c.")
        with pytest.raises(EmptyVocabError):
            build_vocab(corpus, min_count=10)

    def test_tokens_reencoded(self, tmp_path):
        corpus = self._corpus(tmp_path, "a a b.")
        build_vocab(corpus, min_count=2)
        assert corpus.sentences[0].tokens == [0, 0]  # 'b' dropped


class TestSubsample:
    def test_at_threshold_kept(self):
        assert subsample_keep_prob(1e-5, 1e-5) == 1.0

    def test_frequency_one(self):
        assert subsample_keep_prob(1.0, 1e-5) == pytest.approx(
            math.sqrt(1e-5) + 1e-5, abs=1e-8
        )
        assert subsample_keep_prob(1.0, 1e-5) == pytest.approx(0.00317, abs=5e-5)

    def test_rare_word_capped(self):
        assert subsample_keep_prob(1e-6, 1e-5) == 1.0

    def test_invalid_args(self):
        with pytest.raises(ValueError):
            subsample_keep_prob(0.0, 1e-5)
        with pytest.raises(ValueError):
            subsample_keep_prob(0.5, 0.0)

    @given(
        st.floats(min_value=1e-9, max_value=1.0),
        st.floats(min_value=1e-9, max_value=1.0),
        st.floats(min_value=1e-8, max_value=1e-2),
    )
    def test_monotone_non_increasing(self, f1, f2, t):
        lo, hi = sorted([f1, f2])
        assert subsample_keep_prob(lo, t) >= subsample_keep_prob(hi, t)


def test_label_roundtrip(tmp_path):
    labels = {3: "red", 0: "blue", 7: "red"}
    path = tmp_path / "labels.tsv"
    write_labels(path, labels)
    assert read_labels(path) == labels
