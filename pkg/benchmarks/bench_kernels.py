#!/usr/bin/env python3
"""Compare the compiled training kernels against the numpy fallback.

Times one DBOW-style epoch and one averaged-context (DM) epoch over a
synthetic instance stream with each available backend and reports the
throughput ratio.

Usage: python benchmarks/bench_kernels.py [--instances N] [--dim D]
"""

import argparse
import time

import numpy as np

from sengraph import kernels


def bench_sgns(n, d, m, vocab, repeats):
    rng = np.random.default_rng(0)
    inputs = rng.integers(0, vocab, n)
    targets = rng.integers(0, vocab, n)
    negatives = rng.integers(0, vocab, (n, m))
    lrs = np.full(n, 0.025)
    results = {}
    for backend in kernels.available_backends():
        kernels.use_backend(backend)
        r = np.random.default_rng(1)
        phi = r.normal(0, 0.1, (vocab, d))
        omega = np.zeros((vocab, d))
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            kernels.run_sgns(phi, omega, inputs, targets, negatives, lrs)
            best = min(best, time.perf_counter() - t0)
        results[backend] = best
    return results


def bench_dm(n, d, m, vocab, n_sents, ctx, repeats):
    rng = np.random.default_rng(2)
    sents = rng.integers(0, n_sents, n)
    targets = rng.integers(0, vocab, n)
    negatives = rng.integers(0, vocab, (n, m))
    lrs = np.full(n, 0.025)
    indptr = np.arange(0, ctx * n + 1, ctx, dtype=np.int64)
    ctx_indices = rng.integers(0, vocab, ctx * n).astype(np.int64)
    results = {}
    for backend in kernels.available_backends():
        kernels.use_backend(backend)
        r = np.random.default_rng(3)
        phi_s = r.normal(0, 0.1, (n_sents, d))
        phi_w = r.normal(0, 0.1, (vocab, d))
        omega = np.zeros((vocab, d))
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            kernels.run_dm(phi_s, phi_w, omega, sents, indptr, ctx_indices, targets, negatives, lrs)
            best = min(best, time.perf_counter() - t0)
        results[backend] = best
    return results


def report(name, n, results):
    print(f"\n{name} ({n} instances)")
    for backend, secs in results.items():
        print(f"  {backend:>8}: {secs * 1e3:8.1f} ms  ({n / secs / 1e6:6.2f} M instances/s)")
    if len(results) == 2:
        ratio = results["pure"] / results["compiled"]
        print(f"  speedup : {ratio:.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=200_000)
    ap.add_argument("--dim", type=int, default=12)
    ap.add_argument("--negative", type=int, default=5)
    ap.add_argument("--vocab", type=int, default=5_000)
    ap.add_argument("--context", type=int, default=4)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    print(f"backends available: {kernels.available_backends()}")
    report(
        "pair updates (dbow/skip-gram)",
        args.instances,
        bench_sgns(args.instances, args.dim, args.negative, args.vocab, args.repeats),
    )
    report(
        "averaged-context updates (dm)",
        args.instances,
        bench_dm(
            args.instances,
            args.dim,
            args.negative,
            args.vocab,
            max(args.instances // 10, 1),
            args.context,
            args.repeats,
        ),
    )
    kernels.use_backend(kernels.BACKEND)


if __name__ == "__main__":
    main()
