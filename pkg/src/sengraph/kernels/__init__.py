"""Hot training loops with a compiled core and a numpy fallback.

The Cython extension ``_sgns`` implements the per-instance update loops
(negative-sampling pair updates plus the optional graph, prior and
lexicon pull terms). When it is absent the pure numpy twin in
:mod:`sengraph.kernels.pure` is used; it applies the same updates in
the same order, just slower. Which one is active is reported in
``BACKEND`` and can be overridden with :func:`use_backend` (used by the
benchmark and the cross-backend tests).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import pure

try:
    from . import _sgns  # type: ignore[attr-defined]

    _HAVE_COMPILED = True
except ImportError:
    _sgns = None
    _HAVE_COMPILED = False

if os.environ.get("SENGRAPH_BACKEND") == "pure" or not _HAVE_COMPILED:
    _impl = pure
else:
    _impl = _sgns
BACKEND = "pure" if _impl is pure else "compiled"


def available_backends() -> list[str]:
    return ["compiled", "pure"] if _HAVE_COMPILED else ["pure"]


def get_backend() -> str:
    return "compiled" if _impl is _sgns else "pure"


def use_backend(name: str) -> None:
    global _impl
    if name == "pure":
        _impl = pure
    elif name == "compiled":
        if not _HAVE_COMPILED:
            raise RuntimeError("compiled kernels are not available")
        _impl = _sgns
    else:
        raise ValueError(f"unknown backend {name!r}")


def sgns_epoch(*args, **kwargs):
    return _impl.sgns_epoch(*args, **kwargs)


def dm_epoch(*args, **kwargs):
    return _impl.dm_epoch(*args, **kwargs)


def _chunks(n: int, parts: int):
    bounds = np.linspace(0, n, parts + 1).astype(np.int64)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(parts) if bounds[i] < bounds[i + 1]]


def run_sgns(
    phi,
    omega,
    inputs,
    targets,
    negatives,
    lrs,
    scales=None,
    prior=None,
    prior_coefs=None,
    graph_csr=None,
    graph_coefs=None,
    lex_csr=None,
    lex_coefs=None,
    workers: int = 1,
):
    """One epoch of pair updates, optionally sharded across threads.

    With ``workers=1`` instances are processed strictly in order
    (deterministic). With more workers the shards update the shared
    tables concurrently without locks, so results are non-deterministic.
    Returns the summed loss; raises on the first NaN loss.
    """
    g_indptr, g_indices, g_weights = graph_csr if graph_csr else (None, None, None)
    l_indptr, l_indices = lex_csr if lex_csr else (None, None)

    def call(lo, hi):
        return _impl.sgns_epoch(
            phi,
            omega,
            inputs[lo:hi],
            targets[lo:hi],
            negatives[lo:hi],
            lrs[lo:hi],
            None if scales is None else scales[lo:hi],
            prior,
            None if prior_coefs is None else prior_coefs[lo:hi],
            g_indptr,
            g_indices,
            g_weights,
            None if graph_coefs is None else graph_coefs[lo:hi],
            l_indptr,
            l_indices,
            None if lex_coefs is None else lex_coefs[lo:hi],
        )

    n = len(inputs)
    if workers <= 1 or n < 2 * workers:
        total, bad = call(0, n)
        if bad >= 0:
            raise FloatingPointError(f"NaN loss at instance {bad}")
        return total
    spans = _chunks(n, workers)
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        results = list(pool.map(lambda span: (span[0], call(*span)), spans))
    total = 0.0
    for lo, (part, bad) in results:
        if bad >= 0:
            raise FloatingPointError(f"NaN loss at instance {lo + bad}")
        total += part
    return total


def run_dm(phi_sent, phi_word, omega, sents, ctx_indptr, ctx_indices, targets, negatives, lrs, workers: int = 1):
    """One epoch of averaged-context updates (see :func:`run_sgns`)."""

    def call(lo, hi):
        return _impl.dm_epoch(
            phi_sent,
            phi_word,
            omega,
            sents[lo:hi],
            ctx_indptr[lo : hi + 1],
            ctx_indices,
            targets[lo:hi],
            negatives[lo:hi],
            lrs[lo:hi],
        )

    n = len(sents)
    if workers <= 1 or n < 2 * workers:
        total, bad = call(0, n)
        if bad >= 0:
            raise FloatingPointError(f"NaN loss at instance {bad}")
        return total
    spans = _chunks(n, workers)
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        results = list(pool.map(lambda span: (span[0], call(*span)), spans))
    total = 0.0
    for lo, (part, bad) in results:
        if bad >= 0:
            raise FloatingPointError(f"NaN loss at instance {lo + bad}")
        total += part
    return total
