# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled prediction kernels.

Semantics and arithmetic order mirror _purepy exactly (attribute-ascending
accumulation, ties to the lowest index) so both backends return bit-identical
predictions; see that module for the behavioural documentation.
"""
from libc.math cimport isnan

import numpy as np

NAME = "compiled"


def knn_predict(train_z, train_y, query_z, nominal, k, n_classes, fallback):
    cdef const double[:, ::1] tz = np.ascontiguousarray(train_z, dtype=np.float64)
    cdef const long long[::1] ty = np.ascontiguousarray(train_y, dtype=np.int64)
    cdef const double[:, ::1] qz = np.ascontiguousarray(query_z, dtype=np.float64)
    cdef const unsigned char[::1] nom = np.ascontiguousarray(nominal, dtype=np.uint8)
    cdef Py_ssize_t nq = qz.shape[0], nt = tz.shape[0], m = qz.shape[1]
    cdef int kk = int(k), nc = int(n_classes)
    cdef long long fb = int(fallback)
    out_arr = np.empty(nq, dtype=np.int64)
    cdef long long[::1] out = out_arr
    if nt == 0 or m == 0:
        out_arr[:] = fb
        return out_arr
    if kk > nt:
        kk = nt
    best_d_arr = np.empty(kk, dtype=np.float64)
    best_i_arr = np.empty(kk, dtype=np.int64)
    votes_arr = np.empty(nc, dtype=np.int64)
    cdef double[::1] best_d = best_d_arr
    cdef long long[::1] best_i = best_i_arr
    cdef long long[::1] votes = votes_arr
    cdef Py_ssize_t q, t, j, pos, kept, i
    cdef int c, win
    cdef long long best_v
    cdef double a, b, diff, dj, acc, dist
    cdef double md = <double>m
    cdef Py_ssize_t s
    for q in range(nq):
        kept = 0
        for t in range(nt):
            acc = 0.0
            s = 0
            for j in range(m):
                a = qz[q, j]
                b = tz[t, j]
                if isnan(a) or isnan(b):
                    continue
                if nom[j]:
                    dj = 0.0 if a == b else 1.0
                else:
                    diff = a - b
                    dj = diff * diff
                acc = acc + dj
                s = s + 1
            if s == 0:
                continue
            dist = acc * (md / <double>s)
            if kept < kk:
                pos = kept
                while pos > 0 and dist < best_d[pos - 1]:
                    best_d[pos] = best_d[pos - 1]
                    best_i[pos] = best_i[pos - 1]
                    pos = pos - 1
                best_d[pos] = dist
                best_i[pos] = t
                kept = kept + 1
            elif dist < best_d[kk - 1]:
                pos = kk - 1
                while pos > 0 and dist < best_d[pos - 1]:
                    best_d[pos] = best_d[pos - 1]
                    best_i[pos] = best_i[pos - 1]
                    pos = pos - 1
                best_d[pos] = dist
                best_i[pos] = t
        if kept == 0:
            out[q] = fb
            continue
        for c in range(nc):
            votes[c] = 0
        for i in range(kept):
            votes[ty[best_i[i]]] += 1
        win = 0
        best_v = votes[0]
        for c in range(1, nc):
            if votes[c] > best_v:
                best_v = votes[c]
                win = c
        out[q] = win
    return out_arr


def tree_predict(feature, value, left, right, null_right, leaf, nominal, X):
    cdef const long long[::1] f_ = np.ascontiguousarray(feature, dtype=np.int64)
    cdef const double[::1] v_ = np.ascontiguousarray(value, dtype=np.float64)
    cdef const long long[::1] l_ = np.ascontiguousarray(left, dtype=np.int64)
    cdef const long long[::1] r_ = np.ascontiguousarray(right, dtype=np.int64)
    cdef const unsigned char[::1] nr = np.ascontiguousarray(null_right, dtype=np.uint8)
    cdef const long long[::1] lf = np.ascontiguousarray(leaf, dtype=np.int64)
    cdef const unsigned char[::1] nom = np.ascontiguousarray(nominal, dtype=np.uint8)
    cdef const double[:, ::1] x_ = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = x_.shape[0]
    out_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t i
    cdef long long node, f
    cdef double x
    for i in range(n):
        node = 0
        while f_[node] >= 0:
            f = f_[node]
            x = x_[i, f]
            if isnan(x):
                node = r_[node] if nr[node] else l_[node]
            elif nom[f]:
                node = l_[node] if x == v_[node] else r_[node]
            else:
                node = l_[node] if x <= v_[node] else r_[node]
        out[i] = lf[node]
    return out_arr


def nb_predict(log_prior, mean, inv_two_var, log_norm, cat_offset, log_cat, nominal, X):
    cdef const double[::1] lp = np.ascontiguousarray(log_prior, dtype=np.float64)
    cdef const double[:, ::1] mu = np.ascontiguousarray(mean, dtype=np.float64)
    cdef const double[:, ::1] itv = np.ascontiguousarray(inv_two_var, dtype=np.float64)
    cdef const double[:, ::1] ln = np.ascontiguousarray(log_norm, dtype=np.float64)
    cdef const long long[::1] off = np.ascontiguousarray(cat_offset, dtype=np.int64)
    cdef const double[:, ::1] lc = np.ascontiguousarray(log_cat, dtype=np.float64)
    cdef const unsigned char[::1] nom = np.ascontiguousarray(nominal, dtype=np.uint8)
    cdef const double[:, ::1] x_ = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = x_.shape[0], m = x_.shape[1]
    cdef int nc = lp.shape[0]
    out_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] out = out_arr
    score_arr = np.empty(nc, dtype=np.float64)
    cdef double[::1] score = score_arr
    cdef Py_ssize_t i, j
    cdef int c, win
    cdef long long o
    cdef double x, d, bs
    for i in range(n):
        for c in range(nc):
            score[c] = lp[c]
        for j in range(m):
            x = x_[i, j]
            if isnan(x):
                continue
            if nom[j]:
                o = off[j] + <long long>x
                for c in range(nc):
                    score[c] += lc[c, o]
            else:
                for c in range(nc):
                    d = x - mu[c, j]
                    score[c] += ln[c, j] - d * d * itv[c, j]
        win = 0
        bs = score[0]
        for c in range(1, nc):
            if score[c] > bs:
                bs = score[c]
                win = c
        out[i] = win
    return out_arr
