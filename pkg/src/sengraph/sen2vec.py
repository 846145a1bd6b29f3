"""Content-only sentence embeddings: the DBOW and DM variants.

DBOW predicts each kept word of a sentence from the sentence vector
alone; DM predicts each word from the average of the sentence vector
and the input vectors of the surrounding words. The default baseline
concatenates the two tables. Training uses negative sampling with
optional subsampling of frequent words; all randomness flows from the
config seed, so single-worker runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .corpus import Corpus, subsample_keep_prob
from .embedding import EmbeddingTable, NoiseModel, TrainConfig, lr_array


@dataclass
class Sen2VecModel:
    sentence_table: EmbeddingTable
    word_table: EmbeddingTable
    variant: str  # "dbow" or "dm"
    window: int = 0
    epoch_losses: list = field(default_factory=list)
    epoch_instances: list = field(default_factory=list)

    @property
    def sentence_vectors(self) -> np.ndarray:
        return self.sentence_table.input_vectors


def keep_probabilities(corpus: Corpus, t: float) -> np.ndarray:
    """Per-word-id keep probability; all ones when subsampling is off."""
    vocab = corpus.vocab
    if t <= 0:
        return np.ones(len(vocab))
    return np.array(
        [subsample_keep_prob(vocab.frequency(w), t) for w in range(len(vocab))]
    )


def _flat_tokens(corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    """All in-vocab token ids in corpus order plus per-token sentence ids."""
    toks = []
    sents = []
    for sent in corpus.sentences:
        toks.extend(sent.tokens)
        sents.extend([sent.sent_id] * len(sent.tokens))
    return np.asarray(toks, dtype=np.int64), np.asarray(sents, dtype=np.int64)


def expected_instances(corpus: Corpus, t: float) -> float:
    probs = keep_probabilities(corpus, t)
    counts = np.asarray(corpus.vocab.counts, dtype=np.float64)
    return float(counts @ probs)


def sample_kept(flat_tokens, flat_sents, probs, rng) -> tuple[np.ndarray, np.ndarray]:
    """Apply one epoch of frequent-word subsampling.

    Draws one uniform per token occurrence (a single rng call) unless
    every keep probability is 1, in which case nothing is drawn.
    """
    if np.all(probs >= 1.0):
        return flat_tokens, flat_sents
    draws = rng.random(len(flat_tokens))
    mask = draws < probs[flat_tokens]
    return flat_tokens[mask], flat_sents[mask]


def _require_vocab(corpus: Corpus) -> None:
    if corpus.vocab is None:
        raise ValueError("corpus has no vocabulary; call build_vocab first")


def train_dbow(corpus: Corpus, cfg: TrainConfig, _pull_hook=None) -> Sen2VecModel:
    """Train the DBOW variant.

    ``_pull_hook`` is used by the jointly regularized trainers; it
    receives the epoch's instance arrays ``(sent_ids, target_ids)`` and
    returns extra kernel arguments (graph or lexicon pulls). Plain DBOW
    passes nothing there, so a regularized run with strength zero
    consumes the identical random stream and produces bit-identical
    tables.
    """
    _require_vocab(corpus)
    vocab = corpus.vocab
    rng = np.random.default_rng(cfg.seed)
    sent_table = EmbeddingTable.init(corpus.n_sentences, cfg.dim, rng)
    word_table = EmbeddingTable(
        input_vectors=np.zeros((len(vocab), cfg.dim)),
        output_vectors=np.zeros((len(vocab), cfg.dim)),
        dim=cfg.dim,
    )
    noise = NoiseModel(vocab.counts, kind=cfg.noise_kind, num_samples=cfg.negative_samples)
    probs = keep_probabilities(corpus, cfg.subsample_t)
    flat_tokens, flat_sents = _flat_tokens(corpus)
    total = expected_instances(corpus, cfg.subsample_t) * cfg.epochs

    model = Sen2VecModel(sent_table, word_table, variant="dbow")
    step = 0
    for _ in range(cfg.epochs):
        targets, inputs = sample_kept(flat_tokens, flat_sents, probs, rng)
        n = len(targets)
        if n == 0:
            model.epoch_losses.append(0.0)
            model.epoch_instances.append(0)
            continue
        negatives = noise.sample(rng, (n, cfg.negative_samples)).astype(np.int64)
        lrs = lr_array(cfg.learning_rate, step, n, total)
        extra = {} if _pull_hook is None else _pull_hook(inputs, targets)
        loss = kernels.run_sgns(
            sent_table.input_vectors,
            word_table.output_vectors,
            inputs,
            targets,
            negatives,
            lrs,
            workers=cfg.parallel_workers,
            **extra,
        )
        step += n
        model.epoch_losses.append(loss / n)
        model.epoch_instances.append(n)
    sent_table.check_finite()
    word_table.check_finite()
    return model


def dm_epoch_arrays(targets, sents, window):
    """Window instances over the kept token stream of one epoch."""
    boundaries = np.flatnonzero(np.diff(sents)) + 1
    ctx_chunks = []
    indptr = [0]
    for lo, hi in zip(np.r_[0, boundaries], np.r_[boundaries, len(sents)]):
        ks = targets[lo:hi]
        for i in range(len(ks)):
            left = max(0, i - window)
            ctx = np.concatenate([ks[left:i], ks[i + 1 : i + 1 + window]])
            ctx_chunks.append(ctx)
            indptr.append(indptr[-1] + len(ctx))
    ctx_indices = (
        np.concatenate(ctx_chunks).astype(np.int64) if ctx_chunks else np.zeros(0, dtype=np.int64)
    )
    return np.asarray(indptr, dtype=np.int64), ctx_indices


def train_dm(corpus: Corpus, cfg: TrainConfig, window: int = 5) -> Sen2VecModel:
    """Train the DM variant with the given context half-width."""
    _require_vocab(corpus)
    if window < 0:
        raise ValueError("window must be >= 0")
    vocab = corpus.vocab
    rng = np.random.default_rng(cfg.seed)
    sent_table = EmbeddingTable.init(corpus.n_sentences, cfg.dim, rng)
    word_phi = rng.uniform(-0.5 / cfg.dim, 0.5 / cfg.dim, size=(len(vocab), cfg.dim))
    word_table = EmbeddingTable(
        input_vectors=word_phi,
        output_vectors=np.zeros((len(vocab), cfg.dim)),
        dim=cfg.dim,
    )
    noise = NoiseModel(vocab.counts, kind=cfg.noise_kind, num_samples=cfg.negative_samples)
    probs = keep_probabilities(corpus, cfg.subsample_t)
    flat_tokens, flat_sents = _flat_tokens(corpus)
    total = expected_instances(corpus, cfg.subsample_t) * cfg.epochs

    model = Sen2VecModel(sent_table, word_table, variant="dm", window=window)
    step = 0
    for _ in range(cfg.epochs):
        targets, sents = sample_kept(flat_tokens, flat_sents, probs, rng)
        n = len(targets)
        if n == 0:
            model.epoch_losses.append(0.0)
            model.epoch_instances.append(0)
            continue
        indptr, ctx_indices = dm_epoch_arrays(targets, sents, window)
        negatives = noise.sample(rng, (n, cfg.negative_samples)).astype(np.int64)
        lrs = lr_array(cfg.learning_rate, step, n, total)
        loss = kernels.run_dm(
            sent_table.input_vectors,
            word_table.input_vectors,
            word_table.output_vectors,
            sents,
            indptr,
            ctx_indices,
            targets,
            negatives,
            lrs,
            workers=cfg.parallel_workers,
        )
        step += n
        model.epoch_losses.append(loss / n)
        model.epoch_instances.append(n)
    sent_table.check_finite()
    word_table.check_finite()
    return model


def concat_s2v(dbow: Sen2VecModel, dm: Sen2VecModel) -> np.ndarray:
    """Per-sentence concatenation [dbow || dm] of dimension 2d."""
    a = dbow.sentence_vectors
    b = dm.sentence_vectors
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"sentence id spaces differ: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"dimensions differ: {a.shape[1]} vs {b.shape[1]}")
    return np.hstack([a, b])
