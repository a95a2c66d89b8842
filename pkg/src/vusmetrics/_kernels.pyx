# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sweep kernels: fused per-threshold passes over the series.

Semantics match ``_kernels_py`` exactly up to floating-point summation
order; see that module for the contract of each function.
"""

import numpy as np


def range_sweep(const double[::1] score, const double[::1] thresholds,
                const double[::1] base, const signed char[::1] core,
                const long long[::1] seq_starts, const long long[::1] seq_ends):
    cdef Py_ssize_t n = score.shape[0]
    cdef Py_ssize_t nk = thresholds.shape[0]
    cdef Py_ssize_t m = seq_starts.shape[0]
    tp_arr = np.empty(nk)
    sp_arr = np.empty(nk)
    sl_arr = np.empty(nk)
    ex_arr = np.empty(nk)
    cdef double[::1] tp = tp_arr
    cdef double[::1] sp = sp_arr
    cdef double[::1] sl = sl_arr
    cdef double[::1] ex = ex_arr
    cdef Py_ssize_t i, j, k, hits
    cdef double th, acc_tp, acc_sp, acc_sl, v
    cdef bint p
    for k in range(nk):
        th = thresholds[k]
        acc_tp = 0.0
        acc_sp = 0.0
        acc_sl = 0.0
        for i in range(n):
            p = score[i] >= th
            if p:
                acc_sp += 1.0
            v = base[i]
            if v != 0.0:
                if core[i] != 0:
                    acc_sl += 1.0
                    if p:
                        acc_tp += 1.0
                elif p:
                    acc_tp += v
                    acc_sl += v
        hits = 0
        for j in range(m):
            for i in range(seq_starts[j], seq_ends[j] + 1):
                if score[i] >= th:
                    hits += 1
                    break
        tp[k] = acc_tp
        sp[k] = acc_sp
        sl[k] = acc_sl
        ex[k] = (<double>hits) / m if m > 0 else 0.0
    return tp_arr, sp_arr, sl_arr, ex_arr


def static_sweep(const double[::1] score, const double[::1] thresholds,
                 const long long[::1] ones_idx):
    cdef Py_ssize_t n = score.shape[0]
    cdef Py_ssize_t nk = thresholds.shape[0]
    cdef Py_ssize_t q = ones_idx.shape[0]
    sp_arr = np.empty(nk)
    tp0_arr = np.empty(nk)
    cdef double[::1] sp = sp_arr
    cdef double[::1] tp0 = tp0_arr
    cdef Py_ssize_t i, k
    cdef double th, acc_sp, acc_tp0
    for k in range(nk):
        th = thresholds[k]
        acc_sp = 0.0
        for i in range(n):
            if score[i] >= th:
                acc_sp += 1.0
        acc_tp0 = 0.0
        for i in range(q):
            if score[ones_idx[i]] >= th:
                acc_tp0 += 1.0
        sp[k] = acc_sp
        tp0[k] = acc_tp0
    return sp_arr, tp0_arr


def opt_dyn_sweep(const double[::1] score_dyn, const double[::1] thresholds,
                  const long long[::1] buf_idx, const double[::1] buf_vals,
                  const long long[::1] seq_starts, const long long[::1] seq_ends):
    cdef Py_ssize_t d = score_dyn.shape[0]
    cdef Py_ssize_t nk = thresholds.shape[0]
    cdef Py_ssize_t b = buf_idx.shape[0]
    cdef Py_ssize_t m = seq_starts.shape[0]
    tpb_arr = np.empty(nk)
    ex_arr = np.empty(nk)
    cdef double[::1] tpb = tpb_arr
    cdef double[::1] ex = ex_arr
    pred_arr = np.empty(d, dtype=np.uint8)
    cdef unsigned char[::1] pred = pred_arr
    cdef Py_ssize_t i, j, k, hits
    cdef double th, acc
    for k in range(nk):
        th = thresholds[k]
        for i in range(d):
            pred[i] = score_dyn[i] >= th
        acc = 0.0
        for j in range(b):
            if pred[buf_idx[j]]:
                acc += buf_vals[j]
        hits = 0
        for j in range(m):
            for i in range(seq_starts[j], seq_ends[j] + 1):
                if pred[i]:
                    hits += 1
                    break
        tpb[k] = acc
        ex[k] = (<double>hits) / m if m > 0 else 0.0
    return tpb_arr, ex_arr
