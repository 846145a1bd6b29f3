"""Post-hoc refinement of pretrained sentence vectors on a graph.

The quadratic objective keeps each vector near its pretrained prior
(strength alpha) while pulling it toward its graph neighbors (strength
beta, optionally edge-weighted). Minimization runs as Jacobi sweeps of
the per-node closed-form update; the stochastic variant instead
optimizes the walk-window skip-gram likelihood plus a quadratic pull
toward the priors.

Edge coefficients: with scalar alpha/beta the neighbor coefficient for
(v, u) is beta * W[u, v], counting each undirected edge once in the
objective (one free strength ratio). With per-node arrays it is
beta[v] * W[v, u] + beta[u] * W[u, v].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import warn
from .embedding import EmbeddingTable, TrainConfig
from .graph import WeightedGraph
from .node2vec import WalkConfig, _train_walk_skipgram


@dataclass
class RetrofitConfig:
    alpha: float | np.ndarray = 1.0
    beta: float | np.ndarray = 1.0
    max_iterations: int = 20
    convergence_tol: float = 1e-4
    weighted: bool = True


def _node_array(value, n: int, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim == 0:
        arr = np.full(n, float(arr))
    if arr.shape != (n,):
        raise ValueError(f"{name} must be scalar or length-{n}, got shape {arr.shape}")
    if np.any(arr < 0):
        raise ValueError(f"{name} must be non-negative")
    return arr


def edge_coefficients(graph: WeightedGraph, cfg: RetrofitConfig):
    """CSR (indptr, indices, kappa) of symmetric neighbor coefficients."""
    indptr, indices, weights = graph.to_csr()
    wt = weights if cfg.weighted else np.ones_like(weights)
    beta = cfg.beta
    if np.ndim(beta) == 0:
        kappa = float(beta) * wt
    else:
        beta = _node_array(beta, graph.node_count, "beta")
        rows = np.repeat(np.arange(graph.node_count), np.diff(indptr))
        kappa = (beta[rows] + beta[indices]) * wt
    return indptr, indices, kappa


def retrofit_objective(phi, prior, graph: WeightedGraph, cfg: RetrofitConfig) -> float:
    """sum_v alpha_v |phi_v - prior_v|^2 + sum_edges kappa_uv |phi_u - phi_v|^2."""
    phi = np.asarray(phi, dtype=np.float64)
    prior = np.asarray(prior, dtype=np.float64)
    if phi.shape != prior.shape:
        raise ValueError("phi and prior must have equal shapes")
    n = graph.node_count
    alpha = _node_array(cfg.alpha, n, "alpha")
    indptr, indices, kappa = edge_coefficients(graph, cfg)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    dv = phi - prior
    prior_term = float(alpha @ np.sum(dv * dv, axis=1))
    diff = phi[rows] - phi[indices]
    edge_term = 0.5 * float(kappa @ np.sum(diff * diff, axis=1))
    return prior_term + edge_term


def retrofit_jacobi(
    prior,
    graph: WeightedGraph,
    cfg: RetrofitConfig | None = None,
    with_history: bool = False,
):
    """Jacobi sweeps toward the quadratic fixpoint.

    Every sweep reads the previous iterate and writes a fresh table, so
    per-node updates are order-independent. Stops when the largest
    per-coordinate change falls below ``convergence_tol`` or after
    ``max_iterations`` sweeps. Nodes with zero prior strength and no
    incident weight keep their prior (with a warning).
    """
    cfg = cfg or RetrofitConfig()
    prior = np.asarray(prior, dtype=np.float64)
    n = graph.node_count
    if prior.shape[0] != n:
        raise ValueError("every graph node needs a prior vector")
    alpha = _node_array(cfg.alpha, n, "alpha")
    indptr, indices, kappa = edge_coefficients(graph, cfg)
    K = sp.csr_matrix((kappa, indices, indptr), shape=(n, n))
    denom = alpha + np.asarray(K.sum(axis=1)).ravel()
    stuck = denom == 0.0
    if stuck.any():
        warn(f"{int(stuck.sum())} node(s) have zero prior and zero incident weight; left at prior")

    phi = prior.copy()
    history = [retrofit_objective(phi, prior, graph, cfg)] if with_history else None
    for _ in range(cfg.max_iterations):
        new = alpha[:, None] * prior + K @ phi
        new[~stuck] /= denom[~stuck, None]
        new[stuck] = prior[stuck]
        delta = float(np.max(np.abs(new - phi))) if n else 0.0
        phi = new
        if with_history:
            history.append(retrofit_objective(phi, prior, graph, cfg))
        if delta < cfg.convergence_tol:
            break
    if with_history:
        return phi, history
    return phi


def retrofit_rw_view(prior, graph: WeightedGraph, cfg: RetrofitConfig | None = None) -> np.ndarray:
    """Stop-or-continue averaging updates; needs alpha_v + beta_v = 1.

    phi_v <- alpha_v * prior_v + beta_v * weighted mean of neighbor
    vectors. Sweeps update in place in ascending node order (using the
    freshest neighbor values), which also converges in the degenerate
    all-beta case where simultaneous updates would oscillate. Isolated
    nodes keep their prior.
    """
    cfg = cfg or RetrofitConfig()
    prior = np.asarray(prior, dtype=np.float64)
    n = graph.node_count
    alpha = _node_array(cfg.alpha, n, "alpha")
    beta = _node_array(cfg.beta, n, "beta")
    if not np.allclose(alpha + beta, 1.0, atol=1e-12):
        raise ValueError("alpha_v + beta_v must equal 1 for every node")
    indptr, indices, weights = graph.to_csr()
    wt = weights if cfg.weighted else np.ones_like(weights)

    phi = prior.copy()
    for _ in range(cfg.max_iterations):
        max_delta = 0.0
        for v in range(n):
            lo, hi = indptr[v], indptr[v + 1]
            total = wt[lo:hi].sum()
            if total == 0.0:
                new = prior[v]
            else:
                mean = (wt[lo:hi, None] * phi[indices[lo:hi]]).sum(axis=0) / total
                new = alpha[v] * prior[v] + beta[v] * mean
            max_delta = max(max_delta, float(np.max(np.abs(new - phi[v]))))
            phi[v] = new
        if max_delta < cfg.convergence_tol:
            break
    return phi


def retrofit_n2v(
    prior,
    graph: WeightedGraph,
    walk_cfg: WalkConfig,
    alpha: float,
    beta: float,
    train_cfg: TrainConfig,
) -> EmbeddingTable:
    """Walk-window skip-gram with a quadratic pull toward the priors.

    Minimizes alpha * (skip-gram negative-sampling loss over sampled
    neighborhoods) + beta * |phi_v - prior_v|^2, warm-started from the
    priors. The pull gradient 2 beta (phi_v - prior_v) is split evenly
    over each node's window instances within an epoch, so the per-epoch
    aggregate matches the batch objective. With beta = 0 this is
    exactly the warm-started skip-gram model.
    """
    prior = np.asarray(prior, dtype=np.float64)
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be non-negative")
    model = _train_walk_skipgram(
        graph,
        walk_cfg,
        train_cfg,
        init=prior,
        prior=prior,
        prior_strength=beta,
        pair_scale=alpha,
    )
    return model.table
