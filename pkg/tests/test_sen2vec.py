"""DBOW and DM training behavior."""

import json

import numpy as np
import pytest

from sengraph.corpus import build_vocab, ingest
from sengraph.embedding import TrainConfig
from sengraph.graph import cosine
from sengraph.sen2vec import (
    Sen2VecModel,
    concat_s2v,
    dm_epoch_arrays,
    train_dbow,
    train_dm,
)


def corpus_from_texts(tmp_path, texts, labels=None):
    lines = []
    for i, text in enumerate(texts):
        rec = {"doc_id": f"d{i}", "text": text}
        if labels:
            rec["label"] = labels[i]
        lines.append(json.dumps(rec))
    path = tmp_path / "c.jsonl"
    path.write_text("\n".join(lines) + "\n")
    corpus = ingest(path, "jsonl")
    build_vocab(corpus, min_count=1)
    return corpus


def cfg(**kw):
    base = dict(dim=4, epochs=3, learning_rate=0.05, negative_samples=2, seed=9, subsample_t=0)
    base.update(kw)
    return TrainConfig(**base)


class TestTrainDbow:
    def test_lr_zero_identity(self, tmp_path):
        corpus = corpus_from_texts(tmp_path, ["a b c. d e f."])
        model = train_dbow(corpus, cfg(learning_rate=0.0))
        rng = np.random.default_rng(9)
        expected = rng.uniform(-0.5 / 4, 0.5 / 4, size=(2, 4))
        np.testing.assert_array_equal(model.sentence_vectors, expected)

    def test_instance_count_per_epoch(self, tmp_path):
        corpus = corpus_from_texts(tmp_path, ["a b c. d e.", "f g h i."])
        model = train_dbow(corpus, cfg())
        total_tokens = corpus.total_words()
        assert model.epoch_instances == [total_tokens] * 3

    def test_duplicate_sentence_similarity_ordering(self, tmp_path):
        # two disjoint-vocabulary sentences plus a duplicate of the first
        corpus = corpus_from_texts(
            tmp_path, ["aa bb cc dd. ee ff gg hh. aa bb cc dd."]
        )
        model = train_dbow(corpus, cfg(epochs=50, dim=8, learning_rate=0.1))
        v = model.sentence_vectors
        same = cosine(v[0], v[2])
        different = cosine(v[0], v[1])
        assert same > different

    def test_determinism(self, tmp_path):
        corpus1 = corpus_from_texts(tmp_path, ["a b c. d e f. a d."])
        m1 = train_dbow(corpus1, cfg(epochs=5))
        m2 = train_dbow(corpus1, cfg(epochs=5))
        np.testing.assert_array_equal(m1.sentence_vectors, m2.sentence_vectors)
        np.testing.assert_array_equal(
            m1.word_table.output_vectors, m2.word_table.output_vectors
        )

    def test_locality_single_instance(self):
        # one training instance may only move its own sentence row and
        # the target/noise output rows
        from sengraph import kernels

        rng = np.random.default_rng(33)
        phi = rng.normal(0, 0.2, (6, 4))
        omega = rng.normal(0, 0.2, (9, 4))
        phi_before = phi.copy()
        omega_before = omega.copy()
        inputs = np.array([2], dtype=np.int64)
        targets = np.array([4], dtype=np.int64)
        negatives = np.array([[1, 7]], dtype=np.int64)
        kernels.run_sgns(phi, omega, inputs, targets, negatives, np.array([0.1]))
        touched_phi = np.flatnonzero(np.any(phi != phi_before, axis=1))
        touched_omega = np.flatnonzero(np.any(omega != omega_before, axis=1))
        assert touched_phi.tolist() == [2]
        assert touched_omega.tolist() == [1, 4, 7]

    def test_subsampling_reduces_instances(self, tmp_path):
        texts = ["x " * 50 + "rare."]
        corpus = corpus_from_texts(tmp_path, texts)
        model = train_dbow(corpus, cfg(subsample_t=1e-4, epochs=2))
        assert all(n < corpus.total_words() for n in model.epoch_instances)


class TestTrainDm:
    def test_window_zero_reduces_to_sentence_only(self, tmp_path):
        corpus = corpus_from_texts(tmp_path, ["a b c d."])
        model = train_dm(corpus, cfg(), window=0)
        indptr, ctx = dm_epoch_arrays(
            np.array(corpus.sentences[0].tokens), np.zeros(4, dtype=np.int64), 0
        )
        assert len(ctx) == 0
        assert model.sentence_vectors.shape == (1, 4)

    def test_single_token_sentences_match_dbow_stream(self, tmp_path):
        corpus = corpus_from_texts(tmp_path, ["a. b. c."])
        targets = np.array([0, 1, 2], dtype=np.int64)
        sents = np.array([0, 1, 2], dtype=np.int64)
        indptr, ctx = dm_epoch_arrays(targets, sents, 3)
        assert indptr.tolist() == [0, 0, 0, 0]
        assert len(ctx) == 0

    def test_window_instances(self):
        targets = np.array([5, 6, 7, 8], dtype=np.int64)
        sents = np.array([0, 0, 0, 0], dtype=np.int64)
        indptr, ctx = dm_epoch_arrays(targets, sents, 1)
        # contexts: [6], [5,7], [6,8], [7]
        assert indptr.tolist() == [0, 1, 3, 5, 6]
        assert ctx.tolist() == [6, 5, 7, 6, 8, 7]

    def test_averaged_gradient_matches_finite_differences(self):
        # check the kernel-applied update equals -lr * dL/dparam for the
        # averaged-input loss, via single-step extraction
        from sengraph import kernels

        rng = np.random.default_rng(21)
        d, m = 5, 3
        n_words, n_sents = 12, 3
        for _ in range(100):
            phi_s = rng.normal(0, 0.5, (n_sents, d))
            phi_w = rng.normal(0, 0.5, (n_words, d))
            omega = rng.normal(0, 0.5, (n_words, d))
            v = int(rng.integers(0, n_sents))
            t = int(rng.integers(0, n_words))
            ctx = rng.choice(n_words, size=int(rng.integers(1, 4)), replace=False)
            negs = rng.choice(n_words, size=m, replace=False)
            lr = 1e-3

            def loss_fn(phi_s_val, phi_w_val, omega_val):
                h = (phi_s_val[v] + phi_w_val[ctx].sum(axis=0)) / (1 + len(ctx))
                s_t = omega_val[t] @ h
                s_m = omega_val[negs] @ h
                return -np.log(1 / (1 + np.exp(-s_t))) - np.sum(
                    np.log(1 - 1 / (1 + np.exp(-s_m)))
                )

            ps, pw, om = phi_s.copy(), phi_w.copy(), omega.copy()
            kernels.run_dm(
                ps,
                pw,
                om,
                np.array([v], dtype=np.int64),
                np.array([0, len(ctx)], dtype=np.int64),
                ctx.astype(np.int64),
                np.array([t], dtype=np.int64),
                negs.reshape(1, -1).astype(np.int64),
                np.array([lr]),
            )
            applied_s = (phi_s - ps) / lr
            applied_w = (phi_w - pw) / lr
            applied_o = (omega - om) / lr

            h = 1e-5
            for row in [v]:
                for k in range(d):
                    up, down = phi_s.copy(), phi_s.copy()
                    up[row, k] += h
                    down[row, k] -= h
                    num = (loss_fn(up, phi_w, omega) - loss_fn(down, phi_w, omega)) / (2 * h)
                    assert abs(applied_s[row, k] - num) <= 1e-4 * max(1.0, abs(num))
            for row in ctx:
                for k in range(d):
                    up, down = phi_w.copy(), phi_w.copy()
                    up[row, k] += h
                    down[row, k] -= h
                    num = (loss_fn(phi_s, up, omega) - loss_fn(phi_s, down, omega)) / (2 * h)
                    assert abs(applied_w[row, k] - num) <= 1e-4 * max(1.0, abs(num))
            for row in [t, *negs]:
                for k in range(d):
                    up, down = omega.copy(), omega.copy()
                    up[row, k] += h
                    down[row, k] -= h
                    num = (loss_fn(phi_s, phi_w, up) - loss_fn(phi_s, phi_w, down)) / (2 * h)
                    assert abs(applied_o[row, k] - num) <= 1e-4 * max(1.0, abs(num))

    def test_determinism(self, tmp_path):
        corpus = corpus_from_texts(tmp_path, ["a b c d e. f g h."])
        m1 = train_dm(corpus, cfg(epochs=4), window=2)
        m2 = train_dm(corpus, cfg(epochs=4), window=2)
        np.testing.assert_array_equal(m1.sentence_vectors, m2.sentence_vectors)


class TestConcat:
    def _model(self, vectors):
        from sengraph.embedding import EmbeddingTable

        arr = np.asarray(vectors, dtype=np.float64)
        table = EmbeddingTable(arr, np.zeros_like(arr), arr.shape[1])
        return Sen2VecModel(table, table, variant="dbow")

    def test_concat_values(self):
        dbow = self._model([[1.0, 2.0]])
        dm = self._model([[3.0, 4.0]])
        np.testing.assert_array_equal(concat_s2v(dbow, dm), [[1.0, 2.0, 3.0, 4.0]])

    def test_output_dim(self):
        rng = np.random.default_rng(1)
        dbow = self._model(rng.normal(size=(5, 3)))
        dm = self._model(rng.normal(size=(5, 3)))
        assert concat_s2v(dbow, dm).shape == (5, 6)

    def test_id_space_mismatch(self):
        with pytest.raises(ValueError):
            concat_s2v(self._model(np.zeros((3, 2))), self._model(np.zeros((4, 2))))
