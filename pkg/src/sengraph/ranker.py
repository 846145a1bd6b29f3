"""Rank sentences inside a document and extract summaries.

Per document: build a cosine-similarity graph over its sentences (weak
edges dropped), score nodes with weighted PageRank, then either pick
sentences greedily up to a word budget (summaries) or label the top
few percent with the document's topic (annotation generation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, Document, Sentence, warn
from .graph import WeightedGraph


@dataclass
class RankConfig:
    edge_min_weight: float = 0.10
    damping: float = 0.85
    pagerank_tol: float = 1e-10
    max_power_iterations: int = 200

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must be in (0, 1)")


def build_sentence_graph(doc: Document, vectors: np.ndarray, cfg: RankConfig | None = None) -> WeightedGraph:
    """Similarity graph over one document's sentences.

    Nodes are positions within the document (0-based); an edge is kept
    when cosine similarity >= edge_min_weight (inclusive). Zero-norm
    vectors contribute no edges.
    """
    cfg = cfg or RankConfig()
    rows = np.asarray(vectors, dtype=np.float64)[doc.sentence_ids]
    norms = np.linalg.norm(rows, axis=1)
    n = len(doc.sentence_ids)
    graph = WeightedGraph(n)
    for i in range(n):
        if norms[i] == 0.0:
            continue
        for j in range(i + 1, n):
            if norms[j] == 0.0:
                continue
            sim = float(rows[i] @ rows[j] / (norms[i] * norms[j]))
            if sim >= cfg.edge_min_weight:
                graph.add_edge(i, j, sim)
    return graph


def pagerank(graph: WeightedGraph, cfg: RankConfig | None = None) -> np.ndarray:
    """Weighted PageRank with uniform teleport; scores sum to 1.

    Transition probability u -> v is w(u, v) over u's total incident
    weight; nodes with no edges spread their mass uniformly. Iterates
    until the L1 change drops below pagerank_tol or the iteration cap.
    """
    cfg = cfg or RankConfig()
    n = graph.node_count
    if n == 0:
        raise ValueError("pagerank needs a non-empty graph")
    if n == 1:
        return np.array([1.0])
    indptr, indices, weights = graph.to_csr()
    out_weight = np.zeros(n)
    for u in range(n):
        out_weight[u] = weights[indptr[u] : indptr[u + 1]].sum()
    dangling = out_weight == 0.0
    d = cfg.damping
    # transition matrix is small per document; dense is the fast path
    dense = n <= 512
    if dense:
        P = np.zeros((n, n))
        for u in range(n):
            lo, hi = indptr[u], indptr[u + 1]
            if hi > lo:
                P[u, indices[lo:hi]] = weights[lo:hi] / out_weight[u]
    scores = np.full(n, 1.0 / n)
    for _ in range(cfg.max_power_iterations):
        dangling_mass = scores[dangling].sum()
        if dense:
            flow = P.T @ scores
        else:
            contrib = np.where(dangling, 0.0, scores / np.where(dangling, 1.0, out_weight))
            flow = np.zeros(n)
            np.add.at(flow, indices, weights * contrib[np.repeat(np.arange(n), np.diff(indptr))])
        new = (1.0 - d) / n + d * (flow + dangling_mass / n)
        delta = float(np.abs(new - scores).sum())
        scores = new
        if delta < cfg.pagerank_tol:
            break
    return scores / scores.sum()


def rank_positions(doc: Document, vectors: np.ndarray, cfg: RankConfig | None = None) -> list[int]:
    """Document positions sorted by descending PageRank, ties in document order."""
    graph = build_sentence_graph(doc, vectors, cfg)
    scores = pagerank(graph, cfg)
    return sorted(range(len(scores)), key=lambda i: (-scores[i], i))


def extract_summary(
    doc: Document,
    corpus: Corpus,
    vectors: np.ndarray,
    cfg: RankConfig | None = None,
    word_budget: int = 100,
) -> list[Sentence]:
    """Greedy top-ranked sentences until the word budget is reached.

    Sentences are taken in rank order; the sentence that crosses the
    budget is included and selection stops. The returned list is in
    document order.
    """
    ranked = rank_positions(doc, vectors, cfg)
    chosen: list[int] = []
    words = 0
    for pos in ranked:
        sent = corpus.sentences[doc.sentence_ids[pos]]
        chosen.append(pos)
        words += sent.n_words()
        if words >= word_budget:
            break
    return [corpus.sentences[doc.sentence_ids[pos]] for pos in sorted(chosen)]


def annotate_top_sentences(
    corpus: Corpus,
    vectors: np.ndarray,
    p_percent: float = 2.0,
    cfg: RankConfig | None = None,
) -> dict[int, str]:
    """Label each labelled document's top-ranked sentences with its topic.

    Per document, ceil(p_percent / 100 * sentence_count) sentences are
    labelled; the rest stay unlabelled. Documents without a label are
    skipped with a warning.
    """
    if not 0.0 < p_percent <= 100.0:
        raise ValueError("p_percent must be in (0, 100]")
    labels: dict[int, str] = {}
    for doc in corpus.documents:
        if doc.label is None:
            warn(f"document {doc.doc_id!r} has no label; skipped")
            continue
        k = math.ceil(p_percent / 100.0 * len(doc.sentence_ids))
        for pos in rank_positions(doc, vectors, cfg)[:k]:
            labels[doc.sentence_ids[pos]] = doc.label
    return labels
