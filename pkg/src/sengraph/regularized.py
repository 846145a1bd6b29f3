"""Joint training of content loss and graph smoothing.

The objective adds, on top of the DBOW content loss, a quadratic
penalty beta * W[u, v] * |phi_u - phi_v|^2 summed once per undirected
discourse-graph edge (unit weights for the unweighted variant). The
lexicon variant adds the same kind of penalty over word output vectors
for each semantic-lexicon edge, always unweighted.

During SGD the smoothing gradient for a sentence is applied once per
content instance of that sentence, scaled by one over its instance
count for the epoch, so the per-epoch aggregate matches the batch
objective. The word-level term is handled the same way over target
occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, warn
from .embedding import TrainConfig
from .graph import WeightedGraph
from .sen2vec import Sen2VecModel, train_dbow


@dataclass
class RegConfig:
    beta: float = 1.0
    word_beta: float | None = None  # defaults to beta
    weighted: bool = True
    base: str = "dbow"

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be non-negative")
        if self.word_beta is not None and self.word_beta < 0:
            raise ValueError("word_beta must be non-negative")
        if self.base != "dbow":
            raise ValueError("only the dbow content model is supported")

    @property
    def effective_word_beta(self) -> float:
        return self.beta if self.word_beta is None else self.word_beta


def graph_quadratic(vectors: np.ndarray, graph: WeightedGraph, weighted: bool = True) -> float:
    """sum over undirected edges of w * |phi_u - phi_v|^2 (w = 1 when unweighted)."""
    vectors = np.asarray(vectors, dtype=np.float64)
    total = 0.0
    for u, v, w in graph.edges():
        diff = vectors[u] - vectors[v]
        total += (w if weighted else 1.0) * float(diff @ diff)
    return total


def content_nll(model: Sen2VecModel, corpus: Corpus) -> float:
    """Exact DBOW content loss: full-softmax negative log likelihood of
    every in-vocab token given its sentence vector. Negative sampling
    approximates this during training; the exact form keeps objective
    values deterministic."""
    phi = model.sentence_table.input_vectors
    omega = model.word_table.output_vectors
    scores = phi @ omega.T
    peak = scores.max(axis=1)
    log_z = peak + np.log(np.sum(np.exp(scores - peak[:, None]), axis=1))
    total = 0.0
    for sent in corpus.sentences:
        for w in sent.tokens:
            total += log_z[sent.sent_id] - scores[sent.sent_id, w]
    return total


def reg_objective(model: Sen2VecModel, graph: WeightedGraph, cfg: RegConfig, corpus: Corpus) -> float:
    """Content loss plus beta times the sentence-graph quadratic."""
    return content_nll(model, corpus) + cfg.beta * graph_quadratic(
        model.sentence_table.input_vectors, graph, cfg.weighted
    )


def _graph_csr(graph: WeightedGraph, weighted: bool):
    indptr, indices, weights = graph.to_csr()
    if not weighted:
        weights = np.ones_like(weights)
    return indptr, indices, weights


def train_regularized(
    corpus: Corpus, graph: WeightedGraph, cfg: RegConfig, train_cfg: TrainConfig
) -> Sen2VecModel:
    """DBOW with the discourse-graph smoothing term.

    With beta = 0 the pull is skipped entirely and the run is
    bit-identical to plain DBOW at the same seed.
    """
    if graph.node_count != corpus.n_sentences:
        raise ValueError("graph must cover exactly the corpus sentences")
    hook = None
    if cfg.beta > 0.0:
        csr = _graph_csr(graph, cfg.weighted)

        def hook(sent_ids, _targets):
            counts = np.bincount(sent_ids, minlength=corpus.n_sentences)
            coefs = 2.0 * cfg.beta / counts[sent_ids]
            return {"graph_csr": csr, "graph_coefs": coefs}

    model = train_dbow(corpus, train_cfg, _pull_hook=hook)
    model.variant = "reg"
    return model


def lexicon_to_vocab_graph(
    lexicon: WeightedGraph, index_to_word: dict[int, str], corpus: Corpus
) -> WeightedGraph:
    """Remap a lexicon edge list onto corpus vocabulary ids.

    Edges whose words are missing from the mapping or from the corpus
    vocabulary are skipped with one counted warning. The result is
    always unweighted.
    """
    vocab = corpus.vocab
    if vocab is None:
        raise ValueError("corpus has no vocabulary; call build_vocab first")
    out = WeightedGraph(len(vocab))
    skipped = 0
    for u, v, _ in lexicon.edges():
        wu = index_to_word.get(u)
        wv = index_to_word.get(v)
        iu = vocab.index.get(wu) if wu is not None else None
        iv = vocab.index.get(wv) if wv is not None else None
        if iu is None or iv is None:
            skipped += 1
            continue
        out.add_edge(iu, iv, 1.0)
    if skipped:
        warn(f"skipped {skipped} lexicon edge(s) referencing out-of-vocabulary words")
    return out


def train_dictreg(
    corpus: Corpus,
    sentence_graph: WeightedGraph,
    lexicon_graph: WeightedGraph,
    cfg: RegConfig,
    train_cfg: TrainConfig,
) -> Sen2VecModel:
    """The regularized model plus lexicon smoothing over word output vectors.

    ``lexicon_graph`` must already be over vocabulary ids (see
    :func:`lexicon_to_vocab_graph`); it is treated as unweighted. An
    empty lexicon makes the run bit-identical to the regularized model.
    """
    vocab_size = len(corpus.vocab) if corpus.vocab else 0
    if lexicon_graph.node_count > vocab_size:
        raise ValueError("lexicon graph has node ids outside the vocabulary")
    if sentence_graph.node_count != corpus.n_sentences:
        raise ValueError("graph must cover exactly the corpus sentences")
    word_beta = cfg.effective_word_beta
    if lexicon_graph.n_edges() == 0 or word_beta == 0.0:
        model = train_regularized(corpus, sentence_graph, cfg, train_cfg)
        model.variant = "dictreg"
        return model

    lex_indptr, lex_indices, _ = lexicon_graph.to_csr()
    if lexicon_graph.node_count < vocab_size:
        pad = np.full(vocab_size - lexicon_graph.node_count, lex_indptr[-1], dtype=np.int64)
        lex_indptr = np.concatenate([lex_indptr, pad])
    csr = _graph_csr(sentence_graph, cfg.weighted) if cfg.beta > 0 else None

    def hook(sent_ids, targets):
        extra: dict = {}
        if csr is not None:
            counts = np.bincount(sent_ids, minlength=corpus.n_sentences)
            extra["graph_csr"] = csr
            extra["graph_coefs"] = 2.0 * cfg.beta / counts[sent_ids]
        target_counts = np.bincount(targets, minlength=vocab_size)
        extra["lex_csr"] = (lex_indptr, lex_indices)
        extra["lex_coefs"] = 2.0 * word_beta / target_counts[targets]
        return extra

    model = train_dbow(corpus, train_cfg, _pull_hook=hook)
    model.variant = "dictreg"
    return model
