"""Simple downstream models used only for evaluating vector quality.

Classification uses multinomial logistic regression trained with plain
full-batch gradient descent (L2 penalty, fixed iteration cap);
clustering uses Lloyd's k-means with several seeded restarts. Both are
deterministic for a fixed seed.
"""

from __future__ import annotations

import numpy as np


class SoftmaxRegression:
    def __init__(self, l2: float = 1e-3, learning_rate: float = 0.5, iterations: int = 300):
        self.l2 = l2
        self.learning_rate = learning_rate
        self.iterations = iterations
        self.weights = None
        self.classes_ = None
        self._mean = None
        self._scale = None

    def fit(self, X, labels):
        X = np.asarray(X, dtype=np.float64)
        self.classes_ = sorted(set(labels))
        idx = {c: i for i, c in enumerate(self.classes_)}
        y = np.array([idx[l] for l in labels])
        n, d = X.shape
        k = len(self.classes_)
        self._mean = X.mean(axis=0)
        scale = X.std(axis=0)
        scale[scale == 0] = 1.0
        self._scale = scale
        Z = np.hstack([(X - self._mean) / self._scale, np.ones((n, 1))])
        onehot = np.zeros((n, k))
        onehot[np.arange(n), y] = 1.0
        W = np.zeros((d + 1, k))
        for _ in range(self.iterations):
            logits = Z @ W
            logits -= logits.max(axis=1, keepdims=True)
            probs = np.exp(logits)
            probs /= probs.sum(axis=1, keepdims=True)
            grad = Z.T @ (probs - onehot) / n + self.l2 * W
            W -= self.learning_rate * grad
        self.weights = W
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        Z = np.hstack([(X - self._mean) / self._scale, np.ones((X.shape[0], 1))])
        scores = Z @ self.weights
        return [self.classes_[i] for i in np.argmax(scores, axis=1)]


def kmeans(X, k: int, seed: int = 1, restarts: int = 10, iterations: int = 100) -> np.ndarray:
    """Cluster assignments minimizing within-cluster squared distance.

    Runs Lloyd's algorithm ``restarts`` times from seeded random points
    and keeps the lowest-inertia run. Empty clusters are reseeded with
    the point farthest from its centroid.
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    rng = np.random.default_rng(seed)
    best_labels = None
    best_inertia = np.inf
    for _ in range(restarts):
        centers = X[rng.choice(n, size=k, replace=False)].copy()
        labels = np.zeros(n, dtype=np.int64)
        for _ in range(iterations):
            dist = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            new_labels = dist.argmin(axis=1)
            for c in range(k):
                members = new_labels == c
                if members.any():
                    centers[c] = X[members].mean(axis=0)
                else:
                    worst = int(dist[np.arange(n), new_labels].argmax())
                    centers[c] = X[worst]
                    new_labels[worst] = c
            if np.array_equal(new_labels, labels):
                labels = new_labels
                break
            labels = new_labels
        inertia = float(((X - centers[labels]) ** 2).sum())
        if inertia < best_inertia:
            best_inertia = inertia
            best_labels = labels.copy()
    return best_labels


def split_indices(n: int, test_fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Seeded shuffle split into (train, test) index arrays."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    n_test = max(1, int(round(test_fraction * n)))
    return np.sort(order[n_test:]), np.sort(order[:n_test])
