"""Sparse undirected weighted graphs over sentence or word ids.

The discourse graph connects sentences whose cosine similarity clears a
threshold (one threshold for same-document pairs, another for
cross-document pairs) and is then pruned to each node's top-k
neighbors. Lexicon graphs reuse the same container with unit weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GraphParseError, UndefinedSimilarityError


@dataclass
class GraphBuildConfig:
    intra_threshold: float = 0.5
    across_threshold: float = 0.8
    top_k: int = 20
    similarity: str = "cosine"


class WeightedGraph:
    """Undirected weighted graph in canonical form.

    Adjacency lists are kept sorted by neighbor id; every edge appears
    in both endpoint lists with equal weight; no self-loops; weights are
    non-negative.
    """

    def __init__(self, node_count: int):
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        self.node_count = node_count
        self._adj: list[dict[int, float]] = [dict() for _ in range(node_count)]

    def add_edge(self, u: int, v: int, weight: float) -> None:
        if u == v:
            raise ValueError(f"self-loop on node {u}")
        if weight < 0:
            raise ValueError(f"negative weight {weight} on edge ({u}, {v})")
        if not (0 <= u < self.node_count and 0 <= v < self.node_count):
            raise ValueError(f"edge ({u}, {v}) outside node range")
        self._adj[u][v] = weight
        self._adj[v][u] = weight

    def neighbors(self, u: int) -> list[tuple[int, float]]:
        return sorted(self._adj[u].items())

    def neighbor_ids(self, u: int) -> list[int]:
        return sorted(self._adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def weight(self, u: int, v: int) -> float:
        return self._adj[u][v]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def n_edges(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def edges(self) -> list[tuple[int, int, float]]:
        """Undirected edges, each once, sorted with u < v."""
        out = []
        for u in range(self.node_count):
            for v, w in sorted(self._adj[u].items()):
                if u < v:
                    out.append((u, v, w))
        return out

    def incident_weight(self, u: int) -> float:
        return sum(self._adj[u].values())

    def n_components(self) -> int:
        seen = [False] * self.node_count
        n = 0
        for start in range(self.node_count):
            if seen[start]:
                continue
            n += 1
            stack = [start]
            seen[start] = True
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
        return n

    def to_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, indices, weights) with neighbor ids ascending per row."""
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        for u in range(self.node_count):
            indptr[u + 1] = indptr[u] + len(self._adj[u])
        indices = np.empty(indptr[-1], dtype=np.int64)
        weights = np.empty(indptr[-1], dtype=np.float64)
        for u in range(self.node_count):
            nbrs = self.neighbors(u)
            lo = indptr[u]
            for k, (v, w) in enumerate(nbrs):
                indices[lo + k] = v
                weights[lo + k] = w
        return indptr, indices, weights

    def unweighted_copy(self) -> "WeightedGraph":
        g = WeightedGraph(self.node_count)
        for u, v, _ in self.edges():
            g.add_edge(u, v, 1.0)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.node_count == other.node_count and self._adj == other._adj


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity; raises for zero-norm inputs."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise UndefinedSimilarityError("cosine undefined for zero-norm vector")
    return float(np.dot(a, b) / (na * nb))


def _normalized_rows(vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(vectors, axis=1)
    ok = norms > 0
    unit = np.zeros_like(vectors, dtype=np.float64)
    unit[ok] = vectors[ok] / norms[ok, None]
    return unit, ok


def build_discourse_graph(
    vectors: np.ndarray, corpus, cfg: GraphBuildConfig | None = None
) -> WeightedGraph:
    """Threshold-and-prune similarity graph over all sentences.

    A candidate edge (u, v) survives when cos(u, v) clears the intra
    threshold (same document) or the across threshold (different
    documents). Each node then keeps its top_k largest-weight neighbors
    (ties broken toward the smaller neighbor id) and an edge survives if
    either endpoint keeps it. Zero-norm sentence vectors get no edges.
    """
    cfg = cfg or GraphBuildConfig()
    if cfg.similarity != "cosine":
        raise ValueError(f"unsupported similarity {cfg.similarity!r}")
    if cfg.top_k < 1:
        raise ValueError("top_k must be >= 1")
    vectors = np.asarray(vectors, dtype=np.float64)
    n = vectors.shape[0]
    if n != corpus.n_sentences:
        raise ValueError("one vector per sentence required")
    unit, ok = _normalized_rows(vectors)
    doc_of = np.empty(n, dtype=np.int64)
    for d_idx, doc in enumerate(corpus.documents):
        for sid in doc.sentence_ids:
            doc_of[sid] = d_idx

    candidate: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    block = 512
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        sims = unit[lo:hi] @ unit.T
        same_doc = doc_of[lo:hi, None] == doc_of[None, :]
        keep = np.where(same_doc, sims >= cfg.intra_threshold, sims >= cfg.across_threshold)
        keep &= ok[lo:hi, None] & ok[None, :]
        rows, cols = np.nonzero(keep)
        for r, v in zip(rows, cols):
            u = lo + int(r)
            v = int(v)
            if u < v:
                candidate[u].append((float(sims[r, v]), v))
                candidate[v].append((float(sims[r, v]), u))

    graph = WeightedGraph(n)
    for u in range(n):
        ranked = sorted(candidate[u], key=lambda wv: (-wv[0], wv[1]))
        for w, v in ranked[: cfg.top_k]:
            graph.add_edge(u, v, w)
    return graph


def _format_weight(w: float) -> str:
    return repr(float(w))


def save_edge_list(graph: WeightedGraph, path: str | Path) -> None:
    """Write the canonical edge list: ``u<TAB>v<TAB>weight`` with u < v.

    A ``# nodes: N`` comment header preserves trailing isolated nodes
    across a round trip.
    """
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(f"# nodes: {graph.node_count}\n")
        for u, v, w in graph.edges():
            fh.write(f"{u}\t{v}\t{_format_weight(w)}\n")


def load_edge_list(path: str | Path, node_count: int | None = None) -> WeightedGraph:
    """Read an edge-list file; '#' lines are comments.

    ``node_count`` defaults to the ``# nodes:`` header when present,
    else max node id + 1. Fields may be separated by any whitespace;
    the canonical writer uses tabs.
    """
    edges = []
    max_id = -1
    header_count = None
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("nodes:"):
                    header_count = int(body.split(":", 1)[1])
                continue
            parts = line.split()
            if len(parts) != 3:
                raise GraphParseError(f"{path}:{lineno}: expected u<TAB>v<TAB>weight")
            try:
                u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise GraphParseError(f"{path}:{lineno}: {exc}") from exc
            if w < 0:
                raise GraphParseError(f"{path}:{lineno}: negative weight {w}")
            edges.append((u, v, w))
            max_id = max(max_id, u, v)
    if node_count is None:
        node_count = header_count if header_count is not None else max_id + 1
    graph = WeightedGraph(max(node_count, 0))
    for u, v, w in edges:
        graph.add_edge(u, v, w)
    return graph
