# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in sengraph.kernels.pure.

Same update rule and ordering as the fallback: compute every gradient
piece for an instance from pre-update values, then apply. The hot loops
run without the GIL so shards can update shared tables concurrently.
"""

from libc.math cimport exp, log
from libc.stdint cimport int64_t

import numpy as np

cdef double CLAMP = 1e-7


cdef inline double _sig(double x) noexcept nogil:
    cdef double ex
    if x >= 0.0:
        return 1.0 / (1.0 + exp(-x))
    ex = exp(x)
    return ex / (1.0 + ex)


cdef inline double _clog(double p) noexcept nogil:
    if p < CLAMP:
        p = CLAMP
    elif p > 1.0 - CLAMP:
        p = 1.0 - CLAMP
    return log(p)


def sgns_epoch(double[:, ::1] phi, double[:, ::1] omega,
               int64_t[::1] inputs, int64_t[::1] targets,
               int64_t[:, ::1] negatives, double[::1] lrs,
               double[::1] scales=None,
               double[:, ::1] prior=None, double[::1] prior_coefs=None,
               int64_t[::1] g_indptr=None, int64_t[::1] g_indices=None,
               double[::1] g_weights=None, double[::1] g_coefs=None,
               int64_t[::1] lex_indptr=None, int64_t[::1] lex_indices=None,
               double[::1] lex_coefs=None):
    cdef Py_ssize_t n = inputs.shape[0]
    cdef Py_ssize_t m = negatives.shape[1]
    cdef Py_ssize_t d = phi.shape[1]
    cdef bint has_scales = scales is not None
    cdef bint has_prior = prior is not None and prior_coefs is not None
    cdef bint has_graph = g_indptr is not None and g_coefs is not None
    cdef bint has_lex = lex_indptr is not None and lex_coefs is not None

    cdef double[::1] dphi = np.empty(d, dtype=np.float64)
    cdef double[::1] dlex = np.empty(d, dtype=np.float64)
    cdef double[::1] cm = np.empty(max(m, 1), dtype=np.float64)

    cdef double total = 0.0
    cdef Py_ssize_t bad = -1
    cdef Py_ssize_t i, j, k
    cdef int64_t u, t, nj, nb, e, lo, hi
    cdef double lr, sc, s, sig_t, smj, c_t, loss, coef, diff, sq, rowsq, dp, pull

    with nogil:
        for i in range(n):
            u = inputs[i]
            t = targets[i]
            lr = lrs[i]
            sc = scales[i] if has_scales else 1.0

            s = 0.0
            for k in range(d):
                s += omega[t, k] * phi[u, k]
            sig_t = _sig(s)
            loss = -_clog(sig_t)
            for j in range(m):
                nj = negatives[i, j]
                s = 0.0
                for k in range(d):
                    s += omega[nj, k] * phi[u, k]
                smj = _sig(s)
                cm[j] = sc * smj
                loss += -_clog(1.0 - smj)
            loss = sc * loss
            c_t = sc * (sig_t - 1.0)

            for k in range(d):
                dphi[k] = c_t * omega[t, k]
            for j in range(m):
                nj = negatives[i, j]
                for k in range(d):
                    dphi[k] += cm[j] * omega[nj, k]

            # lexicon pull on the target output vector
            pull = 0.0
            if has_lex and lex_coefs[i] != 0.0:
                lo = lex_indptr[t]
                hi = lex_indptr[t + 1]
                if hi > lo:
                    coef = lex_coefs[i]
                    pull = 1.0
                    sq = 0.0
                    for k in range(d):
                        dlex[k] = 0.0
                    for e in range(lo, hi):
                        nb = lex_indices[e]
                        for k in range(d):
                            diff = omega[t, k] - omega[nb, k]
                            dlex[k] += diff
                            sq += diff * diff
                    for k in range(d):
                        dlex[k] *= coef
                    loss += 0.5 * coef * sq

            # neighbor pull on the input vector
            if has_graph and g_coefs[i] != 0.0:
                lo = g_indptr[u]
                hi = g_indptr[u + 1]
                coef = g_coefs[i]
                sq = 0.0
                for e in range(lo, hi):
                    nb = g_indices[e]
                    rowsq = 0.0
                    for k in range(d):
                        diff = phi[u, k] - phi[nb, k]
                        dphi[k] += coef * g_weights[e] * diff
                        rowsq += diff * diff
                    sq += g_weights[e] * rowsq
                loss += 0.5 * coef * sq

            # pull toward the prior vector
            if has_prior and prior_coefs[i] != 0.0:
                coef = prior_coefs[i]
                sq = 0.0
                for k in range(d):
                    dp = phi[u, k] - prior[u, k]
                    dphi[k] += coef * dp
                    sq += dp * dp
                loss += 0.5 * coef * sq

            if loss != loss:
                bad = i
                break
            total += loss

            if pull != 0.0:
                for k in range(d):
                    omega[t, k] -= lr * (c_t * phi[u, k] + dlex[k])
            else:
                for k in range(d):
                    omega[t, k] -= lr * c_t * phi[u, k]
            for j in range(m):
                nj = negatives[i, j]
                for k in range(d):
                    omega[nj, k] -= lr * cm[j] * phi[u, k]
            for k in range(d):
                phi[u, k] -= lr * dphi[k]

    return total, bad


def dm_epoch(double[:, ::1] phi_sent, double[:, ::1] phi_word, double[:, ::1] omega,
             int64_t[::1] sents, int64_t[::1] ctx_indptr, int64_t[::1] ctx_indices,
             int64_t[::1] targets, int64_t[:, ::1] negatives, double[::1] lrs):
    cdef Py_ssize_t n = sents.shape[0]
    cdef Py_ssize_t m = negatives.shape[1]
    cdef Py_ssize_t d = phi_sent.shape[1]

    cdef double[::1] h = np.empty(d, dtype=np.float64)
    cdef double[::1] dh = np.empty(d, dtype=np.float64)
    cdef double[::1] cm = np.empty(max(m, 1), dtype=np.float64)

    cdef double total = 0.0
    cdef Py_ssize_t bad = -1
    cdef Py_ssize_t i, j, k
    cdef int64_t v, t, nj, e, lo, hi
    cdef double lr, s, sig_t, smj, c_t, loss, invk

    with nogil:
        for i in range(n):
            v = sents[i]
            t = targets[i]
            lr = lrs[i]
            lo = ctx_indptr[i]
            hi = ctx_indptr[i + 1]
            invk = 1.0 / (1.0 + (hi - lo))

            for k in range(d):
                h[k] = phi_sent[v, k]
            for e in range(lo, hi):
                for k in range(d):
                    h[k] += phi_word[ctx_indices[e], k]
            for k in range(d):
                h[k] *= invk

            s = 0.0
            for k in range(d):
                s += omega[t, k] * h[k]
            sig_t = _sig(s)
            loss = -_clog(sig_t)
            for j in range(m):
                nj = negatives[i, j]
                s = 0.0
                for k in range(d):
                    s += omega[nj, k] * h[k]
                smj = _sig(s)
                cm[j] = smj
                loss += -_clog(1.0 - smj)

            if loss != loss:
                bad = i
                break
            total += loss
            c_t = sig_t - 1.0

            for k in range(d):
                dh[k] = c_t * omega[t, k]
            for j in range(m):
                nj = negatives[i, j]
                for k in range(d):
                    dh[k] += cm[j] * omega[nj, k]

            for k in range(d):
                omega[t, k] -= lr * c_t * h[k]
            for j in range(m):
                nj = negatives[i, j]
                for k in range(d):
                    omega[nj, k] -= lr * cm[j] * h[k]
            for k in range(d):
                dh[k] = lr * invk * dh[k]
            for k in range(d):
                phi_sent[v, k] -= dh[k]
            for e in range(lo, hi):
                nj = ctx_indices[e]
                for k in range(d):
                    phi_word[nj, k] -= dh[k]

    return total, bad
