"""Pure-numpy prediction kernels.

Fallback used when the compiled extension is unavailable (or when
JROC_PURE_PYTHON=1). Arithmetic is kept in the same per-cell operation order
as the compiled kernels so both backends return bit-identical results:
distances and scores accumulate attribute-by-attribute in ascending j, and
every argmax/vote resolves ties toward the lowest index.
"""
from __future__ import annotations

import numpy as np

NAME = "pure-python"


def knn_predict(train_z, train_y, query_z, nominal, k, n_classes, fallback):
    """k-nearest-neighbour labels under partial distance.

    Distance over the mutually non-null attributes, rescaled by m / #shared;
    pairs sharing nothing are unusable (infinite distance); queries with no
    usable training pair fall back to the modal class. Neighbour ties on
    distance keep the earlier training row; vote ties keep the lower class.
    """
    nq, m = query_z.shape
    nt = train_z.shape[0]
    out = np.empty(nq, dtype=np.int64)
    if nt == 0 or m == 0:
        out[:] = fallback
        return out
    acc = np.zeros((nq, nt))
    shared = np.zeros((nq, nt), dtype=np.int64)
    for j in range(m):
        qv = query_z[:, j][:, None]
        tv = train_z[None, :, j]
        ok = ~(np.isnan(qv) | np.isnan(tv))
        if nominal[j]:
            dj = (qv != tv).astype(np.float64)
        else:
            diff = qv - tv
            dj = diff * diff
        acc += np.where(ok, dj, 0.0)
        shared += ok
    with np.errstate(divide="ignore", invalid="ignore"):
        dist = np.where(shared > 0, acc * (float(m) / shared), np.inf)
    order = np.argsort(dist, axis=1, kind="stable")
    for q in range(nq):
        usable = int(np.isfinite(dist[q]).sum())
        if usable == 0:
            out[q] = fallback
            continue
        kk = min(k, usable)
        votes = np.bincount(train_y[order[q, :kk]], minlength=n_classes)
        out[q] = int(np.argmax(votes))
    return out


def tree_predict(feature, value, left, right, null_right, leaf, nominal, X):
    """Route rows through a flat binary tree.

    feature[v] < 0 marks a leaf (class in leaf[v]). Numeric tests are
    x <= value, nominal tests are x == value; null goes to the side with the
    larger training weight (null_right).
    """
    n = X.shape[0]
    node = np.zeros(n, dtype=np.int64)
    if feature.shape[0] == 0:
        return leaf[node]
    while True:
        f = feature[node]
        active = f >= 0
        if not active.any():
            break
        rows = np.nonzero(active)[0]
        cur = node[rows]
        fa = f[rows]
        xa = X[rows, fa]
        va = value[cur]
        isna = np.isnan(xa)
        nom = nominal[fa].astype(bool)
        with np.errstate(invalid="ignore"):
            go_left = np.where(nom, xa == va, xa <= va)
        go_left = np.where(isna, null_right[cur] == 0, go_left)
        node[rows] = np.where(go_left, left[cur], right[cur])
    return leaf[node]


def nb_predict(log_prior, mean, inv_two_var, log_norm, cat_offset, log_cat, nominal, X):
    """Naive Bayes labels; null attributes contribute no factor.

    Numeric factors are Gaussian log densities; attribute/class pairs with no
    training data are encoded as (mean=0, inv_two_var=0, log_norm=0) so their
    contribution is exactly zero. Nominal factors are smoothed log
    frequencies looked up in the flattened log_cat table.
    """
    n, m = X.shape
    scores = np.repeat(log_prior[None, :], n, axis=0)
    for j in range(m):
        x = X[:, j]
        rows = np.nonzero(~np.isnan(x))[0]
        if rows.size == 0:
            continue
        if nominal[j]:
            codes = x[rows].astype(np.int64)
            scores[rows] += log_cat[:, cat_offset[j] + codes].T
        else:
            d = x[rows, None] - mean[None, :, j]
            scores[rows] += log_norm[None, :, j] - d * d * inv_two_var[None, :, j]
    return np.argmax(scores, axis=1).astype(np.int64)
