"""Evaluation metrics: classification, clustering and unigram recall.

Conventions pinned here (and exercised by the tests):

* precision/recall/F1 are macro-averaged over the union of observed
  labels by default (micro available); per-class values with an empty
  denominator count as 0.
* Cohen's kappa is the unweighted form with chance agreement from the
  marginal products.
* the chance-adjusted mutual information uses the exact expectation of
  MI under random permutations with fixed marginals, normalized by the
  arithmetic mean of the two entropies, and is clipped into [0, 1] for
  reporting.
* unigram recall removes stopwords from candidate and references,
  truncates the candidate to the word limit, clips counts per reference
  and averages over references. No stemming.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from math import log
from pathlib import Path

import numpy as np
from scipy.special import gammaln

from .errors import UndefinedMetricError


def load_stopwords() -> frozenset[str]:
    text = resources.files("sengraph.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w for w in text.split() if w)


# --- classification ------------------------------------------------------


def _check_pairs(gold, predicted):
    if len(gold) != len(predicted):
        raise ValueError("gold and predicted must have equal lengths")
    if len(gold) == 0:
        raise ValueError("empty label lists")


def classification_metrics(gold, predicted, average: str = "macro") -> dict[str, float]:
    """Precision, recall, F1, accuracy and Cohen's kappa."""
    _check_pairs(gold, predicted)
    n = len(gold)
    labels = sorted(set(gold) | set(predicted))
    tp = Counter()
    gold_count = Counter(gold)
    pred_count = Counter(predicted)
    correct = 0
    for g, p in zip(gold, predicted):
        if g == p:
            tp[g] += 1
            correct += 1
    accuracy = correct / n

    if average == "macro":
        precisions, recalls, f1s = [], [], []
        for lab in labels:
            p = tp[lab] / pred_count[lab] if pred_count[lab] else 0.0
            r = tp[lab] / gold_count[lab] if gold_count[lab] else 0.0
            f = 2 * p * r / (p + r) if p + r > 0 else 0.0
            precisions.append(p)
            recalls.append(r)
            f1s.append(f)
        precision = float(np.mean(precisions))
        recall = float(np.mean(recalls))
        f1 = float(np.mean(f1s))
    elif average == "micro":
        precision = recall = f1 = accuracy
    else:
        raise ValueError(f"unknown average {average!r}")

    p_e = sum((gold_count[lab] / n) * (pred_count[lab] / n) for lab in labels)
    if p_e == 1.0:
        if accuracy == 1.0:
            kappa = 1.0
        else:
            raise UndefinedMetricError("kappa undefined: chance agreement is 1")
    else:
        kappa = (accuracy - p_e) / (1.0 - p_e)
    return {
        "precision": precision,
        "recall": recall,
        "f1": f1,
        "accuracy": accuracy,
        "kappa": kappa,
    }


# --- clustering -----------------------------------------------------------


def _entropy(counts: np.ndarray, n: int) -> float:
    probs = counts[counts > 0] / n
    return float(-np.sum(probs * np.log(probs)))


def _contingency(gold, predicted):
    classes = sorted(set(gold))
    clusters = sorted(set(predicted))
    ci = {c: i for i, c in enumerate(classes)}
    ki = {k: i for i, k in enumerate(clusters)}
    table = np.zeros((len(classes), len(clusters)), dtype=np.int64)
    for g, p in zip(gold, predicted):
        table[ci[g], ki[p]] += 1
    return table


def expected_mutual_info(a: np.ndarray, b: np.ndarray, n: int) -> float:
    """Exact E[MI] over random contingency tables with fixed marginals.

    Sums, for every cell (i, j) and every feasible count nij, the MI
    contribution weighted by the hypergeometric probability of nij.
    """
    total = 0.0
    log_fact_n = gammaln(n + 1)
    for ai in a:
        for bj in b:
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            for nij in range(lo, hi + 1):
                term = (nij / n) * (log(n * nij) - log(ai * bj))
                log_prob = (
                    gammaln(ai + 1)
                    + gammaln(bj + 1)
                    + gammaln(n - ai + 1)
                    + gammaln(n - bj + 1)
                    - log_fact_n
                    - gammaln(nij + 1)
                    - gammaln(ai - nij + 1)
                    - gammaln(bj - nij + 1)
                    - gammaln(n - ai - bj + nij + 1)
                )
                total += term * float(np.exp(log_prob))
    return total


def mutual_info(table: np.ndarray) -> float:
    n = table.sum()
    a = table.sum(axis=1)
    b = table.sum(axis=0)
    mi = 0.0
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            nij = table[i, j]
            if nij > 0:
                mi += (nij / n) * log(n * nij / (a[i] * b[j]))
    return float(mi)


def clustering_metrics(gold, predicted) -> dict[str, float]:
    """Homogeneity, completeness, V-measure and adjusted mutual information."""
    _check_pairs(gold, predicted)
    n = len(gold)
    if n < 2:
        raise UndefinedMetricError("clustering metrics need at least 2 items")
    table = _contingency(gold, predicted)
    a = table.sum(axis=1)  # class sizes
    b = table.sum(axis=0)  # cluster sizes
    h_class = _entropy(a, n)
    h_cluster = _entropy(b, n)
    mi = mutual_info(table)

    # H(class | cluster) = H(class) - MI, and symmetrically
    homogeneity = 1.0 if h_class == 0.0 else mi / h_class
    completeness = 1.0 if h_cluster == 0.0 else mi / h_cluster
    if homogeneity + completeness == 0.0:
        v_measure = 0.0
    else:
        v_measure = 2.0 * homogeneity * completeness / (homogeneity + completeness)

    if len(a) == 1 and len(b) == 1:
        ami = 1.0
    else:
        emi = expected_mutual_info(a, b, n)
        normalizer = 0.5 * (h_class + h_cluster)
        denom = normalizer - emi
        denom = min(denom, -1e-12) if denom < 0 else max(denom, 1e-12)
        ami = (mi - emi) / denom
    ami = min(1.0, max(0.0, ami))
    return {
        "homogeneity": homogeneity,
        "completeness": completeness,
        "v_measure": v_measure,
        "ami": ami,
    }


# --- summary recall --------------------------------------------------------


def rouge_1(
    candidate: list[str],
    references: list[list[str]],
    word_limit: int = 100,
    stopwords: frozenset[str] | None = None,
) -> float:
    """Clipped unigram recall of a candidate against reference summaries.

    Stopwords are removed from candidate and references first, then the
    candidate is truncated to ``word_limit`` words. Recall per reference
    is the clipped overlap over the reference length; the result is the
    average over references with non-empty filtered text.
    """
    if not references:
        raise ValueError("at least one reference required")
    stop = load_stopwords() if stopwords is None else stopwords
    cand = [w for w in candidate if w not in stop][:word_limit]
    cand_counts = Counter(cand)
    recalls = []
    for ref in references:
        ref_kept = [w for w in ref if w not in stop]
        if not ref_kept:
            continue
        ref_counts = Counter(ref_kept)
        overlap = sum(min(c, cand_counts[w]) for w, c in ref_counts.items())
        recalls.append(overlap / len(ref_kept))
    if not recalls:
        raise UndefinedMetricError("every reference is empty after stopword removal")
    return float(np.mean(recalls))


# --- report ---------------------------------------------------------------


@dataclass
class MetricsReport:
    """Per-variant metric values plus run metadata."""

    results: dict[str, dict[str, float]] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def add(self, variant: str, values: dict[str, float]) -> None:
        self.results.setdefault(variant, {}).update(values)

    def to_tsv(self) -> str:
        lines = []
        for variant in sorted(self.results):
            for metric in sorted(self.results[variant]):
                lines.append(f"{variant}\t{metric}\t{self.results[variant][metric]:.6f}")
        return "\n".join(lines) + "\n"

    def save(self, prefix: str | Path) -> None:
        """Write ``<prefix>.tsv`` and its JSON-lines twin ``<prefix>.jsonl``."""
        prefix = Path(prefix)
        prefix.with_suffix(".tsv").write_text(self.to_tsv(), encoding="utf-8")
        with prefix.with_suffix(".jsonl").open("w", encoding="utf-8") as fh:
            if self.metadata:
                fh.write(json.dumps({"metadata": self.metadata}, sort_keys=True) + "\n")
            for variant in sorted(self.results):
                record = {"variant": variant, **self.results[variant]}
                fh.write(json.dumps(record, sort_keys=True) + "\n")
