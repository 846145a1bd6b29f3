"""Network-only embeddings from second-order biased random walks.

Walk transitions are biased by where the walk just came from: revisiting
the previous node is scaled by 1/r, stepping to a node adjacent to it
keeps the edge weight, and stepping further away is scaled by 1/f. The
biases multiply the weight of the edge being traversed. Walk windows
feed a skip-gram model trained with negative sampling; passing an
initial table warm-starts the input vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .embedding import EmbeddingTable, NoiseModel, TrainConfig, lr_array
from .graph import WeightedGraph


@dataclass
class WalkConfig:
    return_param: float = 1.0
    forward_param: float = 1.0
    walk_length: int = 80
    walks_per_node: int = 10
    context_window: int = 10

    def __post_init__(self):
        if self.return_param <= 0 or self.forward_param <= 0:
            raise ValueError("return_param and forward_param must be positive")
        if self.walk_length < 2:
            raise ValueError("walk_length must be >= 2")
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be >= 1")
        if self.context_window < 1:
            raise ValueError("context_window must be >= 1")


def transition_bias(delta: int, r: float, f: float) -> float:
    """Bias for hop distance delta in {0, 1, 2} from the previous node."""
    if delta == 0:
        return 1.0 / r
    if delta == 1:
        return 1.0
    if delta == 2:
        return 1.0 / f
    raise ValueError(f"delta must be 0, 1 or 2, got {delta}")


class _AliasSampler:
    __slots__ = ("ids", "prob", "alias")

    def __init__(self, ids: np.ndarray, weights: np.ndarray):
        self.ids = ids
        probs = weights / weights.sum()
        n = len(probs)
        scaled = probs * n
        prob = np.ones(n)
        alias = np.arange(n, dtype=np.int64)
        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            l = large.pop()
            prob[s] = scaled[s]
            alias[s] = l
            scaled[l] -= 1.0 - scaled[s]
            (small if scaled[l] < 1.0 else large).append(l)
        self.prob = prob
        self.alias = alias

    def draw(self, u1: float, u2: float) -> int:
        slot = int(u1 * len(self.prob))
        if u2 < self.prob[slot]:
            return int(self.ids[slot])
        return int(self.ids[self.alias[slot]])


class TransitionTable:
    """Alias tables for first steps (per node) and later steps (per directed edge)."""

    def __init__(self, first: dict, second: dict):
        self.first = first
        self.second = second


def precompute_transitions(graph: WeightedGraph, cfg: WalkConfig) -> TransitionTable:
    """Build alias tables for every node and every directed edge (p -> u).

    For a walk sitting at u having arrived from p, neighbor x of u gets
    unnormalized probability bias(delta(p, x)) * w(u, x), where delta is
    0 if x == p, 1 if x is adjacent to p, else 2. Isolated nodes get an
    empty entry (walks from them stop immediately).
    """
    if graph.node_count == 0:
        raise ValueError("graph is empty")
    r, f = cfg.return_param, cfg.forward_param
    first: dict[int, _AliasSampler | None] = {}
    second: dict[tuple[int, int], _AliasSampler] = {}
    neighbor_cache = [graph.neighbors(u) for u in range(graph.node_count)]
    for u in range(graph.node_count):
        nbrs = neighbor_cache[u]
        if not nbrs:
            first[u] = None
            continue
        ids = np.array([v for v, _ in nbrs], dtype=np.int64)
        weights = np.array([w for _, w in nbrs])
        first[u] = _AliasSampler(ids, weights)
        for p, _ in nbrs:
            # walk arrived at u from p; bias 'u's neighbor weights
            biased = np.empty(len(nbrs))
            for k, (x, w_ux) in enumerate(nbrs):
                if x == p:
                    delta = 0
                elif graph.has_edge(p, x):
                    delta = 1
                else:
                    delta = 2
                biased[k] = transition_bias(delta, r, f) * w_ux
            second[(p, u)] = _AliasSampler(ids, biased)
    return TransitionTable(first, second)


def sample_walks(
    graph: WeightedGraph, transitions: TransitionTable, cfg: WalkConfig, seed: int
) -> list[list[int]]:
    """walks_per_node walks of length <= walk_length from every node.

    Each start node has its own random stream seeded from (seed, node),
    so the output is independent of how start nodes are partitioned
    across workers.
    """
    walks = []
    for start in range(graph.node_count):
        rng = np.random.default_rng([seed, start])
        draws = rng.random((cfg.walks_per_node, cfg.walk_length - 1, 2))
        for w in range(cfg.walks_per_node):
            walk = [start]
            prev = -1
            for step in range(cfg.walk_length - 1):
                cur = walk[-1]
                sampler = transitions.first[cur] if prev < 0 else transitions.second[(prev, cur)]
                if sampler is None:
                    break
                nxt = sampler.draw(draws[w, step, 0], draws[w, step, 1])
                prev = cur
                walk.append(nxt)
            walks.append(walk)
    return walks


def save_walks(walks: list[list[int]], path) -> None:
    """Walk dump: one walk per line, space-separated node ids."""
    from pathlib import Path

    with Path(path).open("w", encoding="utf-8") as fh:
        for walk in walks:
            fh.write(" ".join(str(v) for v in walk) + "\n")


def walk_context_pairs(walks: list[list[int]], window: int) -> tuple[np.ndarray, np.ndarray]:
    """(center, context) pairs from every walk position's window."""
    centers = []
    contexts = []
    for walk in walks:
        n = len(walk)
        for i in range(n):
            for j in range(max(0, i - window), min(n, i + window + 1)):
                if j != i:
                    centers.append(walk[i])
                    contexts.append(walk[j])
    return np.asarray(centers, dtype=np.int64), np.asarray(contexts, dtype=np.int64)


@dataclass
class Node2VecModel:
    table: EmbeddingTable
    walks: list
    epoch_losses: list = field(default_factory=list)

    @property
    def vectors(self) -> np.ndarray:
        return self.table.input_vectors


def _train_walk_skipgram(
    graph: WeightedGraph,
    walk_cfg: WalkConfig,
    train_cfg: TrainConfig,
    init: np.ndarray | None = None,
    prior: np.ndarray | None = None,
    prior_strength: float = 0.0,
    pair_scale: float = 1.0,
) -> Node2VecModel:
    """Skip-gram training over walk windows, shared by the plain and
    prior-pulled variants. ``prior_strength`` of zero applies no pull
    and leaves the arithmetic identical to the plain model."""
    n_nodes = graph.node_count
    transitions = precompute_transitions(graph, walk_cfg)
    walks = sample_walks(graph, transitions, walk_cfg, seed=train_cfg.seed)
    centers, contexts = walk_context_pairs(walks, walk_cfg.context_window)

    rng = np.random.default_rng(train_cfg.seed)
    if init is not None:
        init = np.asarray(init, dtype=np.float64)
        if init.shape != (n_nodes, train_cfg.dim):
            raise ValueError(
                f"init table shape {init.shape} does not match ({n_nodes}, {train_cfg.dim})"
            )
        table = EmbeddingTable(
            input_vectors=init.copy(),
            output_vectors=np.zeros((n_nodes, train_cfg.dim)),
            dim=train_cfg.dim,
        )
    else:
        table = EmbeddingTable.init(n_nodes, train_cfg.dim, rng)

    model = Node2VecModel(table=table, walks=walks)
    n = len(centers)
    if n == 0:
        return model

    occur = np.bincount(np.concatenate([np.asarray(w) for w in walks]), minlength=n_nodes)
    noise = NoiseModel(occur, kind=train_cfg.noise_kind, num_samples=train_cfg.negative_samples)

    scales = None
    if pair_scale != 1.0:
        scales = np.full(n, pair_scale)
    prior_coefs = None
    prior_arr = None
    if prior is not None and prior_strength > 0.0:
        prior_arr = np.asarray(prior, dtype=np.float64)
        center_counts = np.bincount(centers, minlength=n_nodes)
        prior_coefs = (2.0 * prior_strength / center_counts[centers]).astype(np.float64)

    total = float(n * train_cfg.epochs)
    step = 0
    for _ in range(train_cfg.epochs):
        negatives = noise.sample(rng, (n, train_cfg.negative_samples)).astype(np.int64)
        lrs = lr_array(train_cfg.learning_rate, step, n, total)
        loss = kernels.run_sgns(
            table.input_vectors,
            table.output_vectors,
            centers,
            contexts,
            negatives,
            lrs,
            scales=scales,
            prior=prior_arr,
            prior_coefs=prior_coefs,
            workers=train_cfg.parallel_workers,
        )
        step += n
        model.epoch_losses.append(loss / n)
    table.check_finite()
    return model


def train_node2vec(
    graph: WeightedGraph,
    walk_cfg: WalkConfig,
    train_cfg: TrainConfig,
    init: np.ndarray | None = None,
) -> Node2VecModel:
    """Plain walk-window skip-gram; pass ``init`` to warm-start phi."""
    return _train_walk_skipgram(graph, walk_cfg, train_cfg, init=init)
