"""Numpy fallback for the training kernels.

Applies the same per-instance updates as the compiled core: all
gradient pieces for one instance are computed from the pre-update
parameter values, then applied. Loss terms use clamped logs; gradients
use the raw sigmoid.
"""

from __future__ import annotations

import numpy as np

CLAMP = 1e-7


def _sig(x):
    return np.where(x >= 0, 1.0 / (1.0 + np.exp(-np.abs(x))), np.exp(-np.abs(x)) / (1.0 + np.exp(-np.abs(x))))


def _log(p):
    return np.log(np.clip(p, CLAMP, 1.0 - CLAMP))


def sgns_epoch(
    phi,
    omega,
    inputs,
    targets,
    negatives,
    lrs,
    scales=None,
    prior=None,
    prior_coefs=None,
    g_indptr=None,
    g_indices=None,
    g_weights=None,
    g_coefs=None,
    lex_indptr=None,
    lex_indices=None,
    lex_coefs=None,
):
    n, m = negatives.shape
    total = 0.0
    for i in range(n):
        u = inputs[i]
        t = targets[i]
        lr = lrs[i]
        sc = 1.0 if scales is None else scales[i]
        pu = phi[u]
        negs = negatives[i]
        omega_t = omega[t]
        omega_n = omega[negs]  # copy
        s_t = float(omega_t @ pu)
        s_m = omega_n @ pu
        sig_t = float(_sig(np.float64(s_t)))
        sig_m = _sig(s_m)
        loss = sc * (-float(_log(np.float64(sig_t))) - float(np.sum(_log(1.0 - sig_m))))
        c_t = sc * (sig_t - 1.0)
        c_m = sc * sig_m
        dphi = c_t * omega_t + c_m @ omega_n

        dlex = None
        if lex_coefs is not None and lex_coefs[i] != 0.0:
            lo, hi = lex_indptr[t], lex_indptr[t + 1]
            if hi > lo:
                diff = omega_t - omega[lex_indices[lo:hi]]
                dlex = lex_coefs[i] * diff.sum(axis=0)
                loss += 0.5 * lex_coefs[i] * float(np.sum(diff * diff))
        if g_coefs is not None and g_coefs[i] != 0.0:
            lo, hi = g_indptr[u], g_indptr[u + 1]
            if hi > lo:
                w = g_weights[lo:hi]
                diff = pu - phi[g_indices[lo:hi]]
                dphi = dphi + g_coefs[i] * (w[:, None] * diff).sum(axis=0)
                loss += 0.5 * g_coefs[i] * float(w @ np.sum(diff * diff, axis=1))
        if prior_coefs is not None and prior_coefs[i] != 0.0:
            dp = pu - prior[u]
            dphi = dphi + prior_coefs[i] * dp
            loss += 0.5 * prior_coefs[i] * float(dp @ dp)

        if loss != loss:
            return total, i
        total += loss

        omega[t] -= lr * (c_t * pu if dlex is None else c_t * pu + dlex)
        for j in range(m):
            omega[negs[j]] -= lr * c_m[j] * pu
        phi[u] -= lr * dphi
    return total, -1


def dm_epoch(phi_sent, phi_word, omega, sents, ctx_indptr, ctx_indices, targets, negatives, lrs):
    n, m = negatives.shape
    total = 0.0
    for i in range(n):
        v = sents[i]
        t = targets[i]
        lr = lrs[i]
        lo, hi = ctx_indptr[i], ctx_indptr[i + 1]
        ctx = ctx_indices[lo:hi]
        k = 1 + len(ctx)
        h = phi_sent[v].copy()
        for c in ctx:
            h += phi_word[c]
        h /= k
        negs = negatives[i]
        omega_t = omega[t]
        omega_n = omega[negs]
        s_t = float(omega_t @ h)
        s_m = omega_n @ h
        sig_t = float(_sig(np.float64(s_t)))
        sig_m = _sig(s_m)
        loss = -float(_log(np.float64(sig_t))) - float(np.sum(_log(1.0 - sig_m)))
        if loss != loss:
            return total, i
        total += loss
        c_t = sig_t - 1.0
        dh = c_t * omega_t + sig_m @ omega_n
        omega[t] -= lr * c_t * h
        for j in range(m):
            omega[negs[j]] -= lr * sig_m[j] * h
        step = lr / k * dh
        phi_sent[v] -= step
        for c in ctx:
            phi_word[c] -= step
    return total, -1
