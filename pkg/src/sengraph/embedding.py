"""Shared machinery for all trainable models.

Every model in this package pairs an input table (phi) with an output
table (omega) and learns by discriminating observed (input, target)
pairs from sampled noise. Two losses are provided: plain negative
sampling (the default training loss) and the noise-contrastive variant
that also consults the noise probabilities, with the score normalizer
fixed to 1. Both return exact analytic gradients so they can be checked
against finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError

SIGMOID_CLAMP = 1e-7
LR_FLOOR = 1e-4


def sigmoid(x):
    """Numerically stable logistic function, scalar or array."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    if out.ndim == 0:
        return float(out)
    return out


def _clamped_log(p):
    return np.log(np.clip(p, SIGMOID_CLAMP, 1.0 - SIGMOID_CLAMP))


@dataclass
class TrainConfig:
    dim: int = 10
    epochs: int = 5
    learning_rate: float = 0.025
    negative_samples: int = 5
    seed: int = 1
    parallel_workers: int = 1
    subsample_t: float = 1e-5  # 0 disables subsampling
    noise_kind: str = "unigram_075"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be non-negative")
        if self.negative_samples < 1:
            raise ValueError("negative_samples must be >= 1")


@dataclass
class EmbeddingTable:
    """Paired input (phi) and output (omega) vectors over one id space."""

    input_vectors: np.ndarray
    output_vectors: np.ndarray
    dim: int

    @classmethod
    def init(cls, count: int, dim: int, rng: np.random.Generator) -> "EmbeddingTable":
        """phi uniform in [-0.5/d, 0.5/d], omega all zeros."""
        phi = rng.uniform(-0.5 / dim, 0.5 / dim, size=(count, dim))
        omega = np.zeros((count, dim), dtype=np.float64)
        return cls(input_vectors=phi, output_vectors=omega, dim=dim)

    def check_finite(self) -> None:
        if not np.isfinite(self.input_vectors).all() or not np.isfinite(self.output_vectors).all():
            raise FloatingPointError("embedding table contains NaN or Inf")


class NoiseModel:
    """Discrete noise distribution with O(1) alias sampling.

    ``kind`` selects how raw counts become probabilities: 'uniform',
    'unigram' (proportional to counts) or 'unigram_075' (counts raised
    to 0.75, the default for training).
    """

    def __init__(self, counts, kind: str = "unigram_075", num_samples: int = 5):
        counts = np.asarray(counts, dtype=np.float64)
        if counts.ndim != 1 or len(counts) == 0:
            raise ValueError("counts must be a non-empty 1-d array")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        if kind == "uniform":
            weights = np.ones_like(counts)
        elif kind == "unigram":
            weights = counts.copy()
        elif kind == "unigram_075":
            weights = counts**0.75
        else:
            raise ValueError(f"unknown noise kind {kind!r}")
        total = weights.sum()
        if total <= 0:
            raise ValueError("noise distribution has zero mass")
        self.kind = kind
        self.num_samples = num_samples
        self.distribution = weights / total
        self._prob, self._alias = _build_alias(self.distribution)

    def prob(self, idx) -> np.ndarray:
        return self.distribution[idx]

    def sample(self, rng: np.random.Generator, size=None):
        """Draw ids via the alias method."""
        scalar = size is None
        n = 1 if scalar else int(np.prod(size))
        slots = rng.integers(0, len(self.distribution), size=n)
        accept = rng.random(n) < self._prob[slots]
        out = np.where(accept, slots, self._alias[slots])
        if scalar:
            return int(out[0])
        return out.reshape(size)


def _build_alias(probs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vose alias tables: per-slot acceptance probability and alias id."""
    n = len(probs)
    scaled = probs * n
    prob = np.ones(n, dtype=np.float64)
    alias = np.arange(n, dtype=np.int64)
    small = [i for i in range(n) if scaled[i] < 1.0]
    large = [i for i in range(n) if scaled[i] >= 1.0]
    scaled = scaled.copy()
    while small and large:
        s = small.pop()
        l = large.pop()
        prob[s] = scaled[s]
        alias[s] = l
        scaled[l] -= 1.0 - scaled[s]
        if scaled[l] < 1.0:
            small.append(l)
        else:
            large.append(l)
    for i in small + large:
        prob[i] = 1.0
    return prob, alias


def sample_noise(noise_model: NoiseModel, rng: np.random.Generator) -> int:
    """Draw one id from the noise distribution."""
    return noise_model.sample(rng)


def neg_sampling_loss(phi_u, omega_target, omega_noise):
    """Negative-sampling loss and exact gradients for one instance.

    loss = -log sigma(omega_t . phi) - sum_m log sigma(-omega_m . phi),
    stated as a minimization. Returns (loss, grad_phi, grad_target,
    grad_noise) where grad_noise has one row per noise vector.
    """
    phi_u = np.asarray(phi_u, dtype=np.float64)
    omega_target = np.asarray(omega_target, dtype=np.float64)
    omega_noise = np.asarray(omega_noise, dtype=np.float64)
    if omega_noise.ndim == 1:
        omega_noise = omega_noise[None, :]
    if omega_target.shape != phi_u.shape or omega_noise.shape[1:] != phi_u.shape:
        raise ValueError("all vectors must share one dimension")
    s_t = float(omega_target @ phi_u)
    s_m = omega_noise @ phi_u
    sig_t = sigmoid(s_t)
    sig_m = sigmoid(s_m)
    loss = -float(_clamped_log(sig_t)) - float(np.sum(_clamped_log(1.0 - sig_m)))
    g_t = sig_t - 1.0  # d loss / d s_t
    g_m = sig_m  # d loss / d s_m
    grad_phi = g_t * omega_target + g_m @ omega_noise
    grad_target = g_t * phi_u
    grad_noise = g_m[:, None] * phi_u[None, :]
    return loss, grad_phi, grad_target, grad_noise


def nce_loss(phi_u, omega_target, target_id, omega_noise, noise_ids, noise_model: NoiseModel):
    """Noise-contrastive loss with the normalizer fixed to 1.

    The class posterior for an id with score s is
    sigma(s - log(M * psi(id))); the loss is the negative log
    posterior of the true class assignments. Needs the ids (for psi
    lookups) alongside the vectors.
    """
    phi_u = np.asarray(phi_u, dtype=np.float64)
    omega_target = np.asarray(omega_target, dtype=np.float64)
    omega_noise = np.asarray(omega_noise, dtype=np.float64)
    if omega_noise.ndim == 1:
        omega_noise = omega_noise[None, :]
    noise_ids = np.asarray(noise_ids, dtype=np.int64)
    m = len(noise_ids)
    if omega_noise.shape[0] != m:
        raise ValueError("one omega row per noise id required")
    psi_t = float(noise_model.prob(target_id))
    psi_m = noise_model.prob(noise_ids)
    if psi_t <= 0 or np.any(psi_m <= 0):
        raise ValueError("noise probability must be strictly positive for sampled ids")
    delta_t = float(omega_target @ phi_u) - math.log(m * psi_t)
    delta_m = omega_noise @ phi_u - np.log(m * psi_m)
    sig_t = sigmoid(delta_t)
    sig_m = sigmoid(delta_m)
    loss = -float(_clamped_log(sig_t)) - float(np.sum(_clamped_log(1.0 - sig_m)))
    g_t = sig_t - 1.0
    g_m = sig_m
    grad_phi = g_t * omega_target + g_m @ omega_noise
    grad_target = g_t * phi_u
    grad_noise = g_m[:, None] * phi_u[None, :]
    return loss, grad_phi, grad_target, grad_noise


def evaluate_instance(phi_table, omega_table, u, target, noise_ids):
    """Negative-sampling loss for one instance, reading rows from tables.

    Gathers exactly one phi row and len(noise_ids) + 1 omega rows; used
    by the reference SGD path and by output-layer access accounting.
    """
    phi_u = phi_table[u]
    omega_t = omega_table[target]
    omega_n = np.stack([omega_table[i] for i in noise_ids])
    return neg_sampling_loss(phi_u, omega_t, omega_n)


def linear_lr(initial: float, step: int, total_steps: float, floor: float = LR_FLOOR) -> float:
    """Linearly decayed learning rate with a fixed floor.

    A zero initial rate stays exactly zero (useful for identity-check
    diagnostics); otherwise the rate never drops below the floor.
    """
    if initial == 0.0:
        return 0.0
    if total_steps <= 0:
        return max(initial, floor)
    return max(floor, initial * (1.0 - step / total_steps))


def lr_array(initial: float, start_step: int, count: int, total_steps: float) -> np.ndarray:
    if initial == 0.0:
        return np.zeros(count)
    steps = np.arange(start_step, start_step + count, dtype=np.float64)
    if total_steps <= 0:
        return np.full(count, max(initial, LR_FLOOR))
    return np.maximum(LR_FLOOR, initial * (1.0 - steps / total_steps))


def sgd_run(stream, cfg: TrainConfig):
    """Reference per-instance SGD driver.

    ``stream`` must provide ``tables()`` (list of numpy parameter
    arrays), ``instances_per_epoch()`` and ``instances(epoch, rng)``
    yielding ``(touched, loss, grads)`` where ``touched`` is a list of
    ``(table_index, row)`` and ``grads`` the matching gradient rows.
    Updates are applied one instance at a time with a linearly decayed
    learning rate; single-worker runs are deterministic for a fixed
    seed. Returns per-epoch mean losses.

    The bundled trainers use the fused kernels in
    :mod:`sengraph.kernels` instead; this driver is the plain-Python
    contract for custom models and tests.
    """
    rng = np.random.default_rng(cfg.seed)
    tables = stream.tables()
    per_epoch = stream.instances_per_epoch()
    total = per_epoch * cfg.epochs
    step = 0
    epoch_losses = []
    for epoch in range(cfg.epochs):
        acc = 0.0
        count = 0
        for touched, loss, grads in stream.instances(epoch, rng):
            if loss != loss:  # NaN
                raise FloatingPointError(
                    f"NaN loss at epoch {epoch}, instance {count}: {touched}"
                )
            lr = linear_lr(cfg.learning_rate, step, total)
            for (tbl, row), grad in zip(touched, grads):
                tables[tbl][row] -= lr * grad
            step += 1
            acc += loss
            count += 1
        epoch_losses.append(acc / max(count, 1))
    return epoch_losses


# --- vector table files -------------------------------------------------
#
# First line "<count> <dim>", then one line per id:
# "<id> <v1> ... <vd>" with 6-decimal fixed-point reals. Ids are dense
# (0..count-1) but may appear in any order.


def save_vectors(path: str | Path, vectors: np.ndarray) -> None:
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ValueError("expected a 2-d table")
    n, d = vectors.shape
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(f"{n} {d}\n")
        for i in range(n):
            vals = " ".join(f"{x:.6f}" for x in vectors[i])
            fh.write(f"{i} {vals}\n")


def load_vectors(path: str | Path) -> np.ndarray:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise InputError(f"{path}: bad header, expected '<count> <dim>'")
        n, d = int(header[0]), int(header[1])
        out = np.full((n, d), np.nan)
        seen = 0
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != d + 1:
                raise InputError(f"{path}:{lineno}: expected id plus {d} values")
            idx = int(parts[0])
            if not 0 <= idx < n:
                raise InputError(f"{path}:{lineno}: id {idx} outside 0..{n - 1}")
            out[idx] = [float(x) for x in parts[1:]]
            seen += 1
    if seen != n or np.isnan(out).any():
        raise InputError(f"{path}: expected {n} unique dense ids, got {seen}")
    return out
