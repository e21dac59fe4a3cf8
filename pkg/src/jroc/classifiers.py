"""Built-in classifiers and the training/prediction contract.

Models are trained once on complete data and then deployed under arbitrary
null patterns: masked attributes arrive as null and every kind must still
return a valid class. Shared floor: an all-null instance is always answered
with the training modal class (lowest index on ties).

Kinds: majority, knn(k), decision_tree(max_depth, min_leaf), naive_bayes and
bagging(base, rounds, seed). Everything is deterministic; the only
randomness is bagging's bootstrap, owned by the seed in its spec.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _backend
from .data import Dataset, Instance, NOMINAL
from .errors import SchemaMismatchError, ValidationError

KINDS = ("majority", "knn", "decision_tree", "naive_bayes", "bagging")


@dataclass(frozen=True)
class ClassifierSpec:
    """Declarative model description, usable as a config-file entry."""

    kind: str
    k: int = 5
    max_depth: int = 12
    min_leaf: int = 1
    rounds: int = 10
    seed: int = 0
    bootstrap: bool = True
    base: "ClassifierSpec | None" = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValidationError(f"unknown classifier kind {self.kind!r}")
        if self.kind == "knn" and self.k < 1:
            raise ValidationError(f"knn needs k >= 1, got {self.k}")
        if self.kind == "decision_tree":
            if self.max_depth < 1:
                raise ValidationError(f"decision_tree needs max_depth >= 1")
            if self.min_leaf < 1:
                raise ValidationError(f"decision_tree needs min_leaf >= 1")
        if self.kind == "bagging":
            if self.rounds < 1:
                raise ValidationError(f"bagging needs rounds >= 1, got {self.rounds}")
            if self.base is None:
                object.__setattr__(self, "base", ClassifierSpec("decision_tree"))
            if self.base.kind == "bagging":
                raise ValidationError("bagging cannot nest bagging")

    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == "majority":
            return "majority"
        if self.kind == "knn":
            return f"knn{self.k}"
        if self.kind == "decision_tree":
            return f"tree_d{self.max_depth}"
        if self.kind == "naive_bayes":
            return "nb"
        return f"bag{self.rounds}x{self.base.label()}"

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.name:
            out["name"] = self.name
        if self.kind == "knn":
            out["k"] = self.k
        elif self.kind == "decision_tree":
            out["max_depth"] = self.max_depth
            out["min_leaf"] = self.min_leaf
        elif self.kind == "bagging":
            out["base"] = self.base.to_dict()
            out["rounds"] = self.rounds
            out["seed"] = self.seed
            if not self.bootstrap:
                out["bootstrap"] = False
        return out

    @classmethod
    def from_dict(cls, payload: dict) -> "ClassifierSpec":
        if not isinstance(payload, dict) or "kind" not in payload:
            raise ValidationError(f"classifier entry needs a 'kind': {payload!r}")
        kw = dict(payload)
        base = kw.pop("base", None)
        if base is not None:
            kw["base"] = cls.from_dict(base)
        try:
            return cls(**kw)
        except TypeError as exc:
            raise ValidationError(f"bad classifier entry {payload!r}: {exc}") from exc


class TrainedModel:
    """Common prediction surface over the kind-specific state."""

    def __init__(self, spec: ClassifierSpec, d: Dataset) -> None:
        self.spec = spec
        self.schema = d.schema
        self.classes = d.classes
        self.m = d.m
        self.c = d.c
        self.nominal = d.is_nominal.astype(np.uint8)
        counts = d.class_counts().astype(np.float64)
        self.class_distribution = counts / counts.sum()
        self.modal_class = int(np.argmax(counts))
        self.model_id = spec.label()

    # kind-specific batch prediction over the encoded matrix
    def _predict_encoded(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.m:
            raise SchemaMismatchError(
                f"expected a (n, {self.m}) matrix, got shape {X.shape}"
            )
        preds = self._predict_encoded(X)
        # all-null floor: no information means the training modal class
        all_null = np.isnan(X).all(axis=1) if self.m else np.ones(X.shape[0], bool)
        if all_null.any():
            preds = preds.copy()
            preds[all_null] = self.modal_class
        return preds

    def predict(self, x: Instance) -> int:
        if len(x.values) != self.m:
            raise SchemaMismatchError(
                f"instance has {len(x.values)} values, model expects {self.m}"
            )
        row = np.full((1, self.m), np.nan)
        for j, v in enumerate(x.values):
            if v is not None:
                if self.nominal[j] and not 0 <= int(v) < len(self.schema[j].values):
                    raise ValidationError(
                        f"nominal code {v} out of range for attribute {self.schema[j].name!r}"
                    )
                row[0, j] = float(v)
        return int(self.predict_batch(row)[0])


class MajorityModel(TrainedModel):
    def _predict_encoded(self, X: np.ndarray) -> np.ndarray:
        return np.full(X.shape[0], self.modal_class, dtype=np.int64)


class KnnModel(TrainedModel):
    """Distance voting with standardized numerics and overlap-distance
    nominals; see _backend.knn_predict for the null-handling rules."""

    def __init__(self, spec: ClassifierSpec, d: Dataset) -> None:
        super().__init__(spec, d)
        X, y = d.X, d.y
        center = np.zeros(self.m)
        scale = np.ones(self.m)
        for j in range(self.m):
            if self.nominal[j]:
                continue
            col = X[:, j]
            col = col[~np.isnan(col)]
            if col.size:
                center[j] = col.mean()
                sd = col.std()
                if sd > 0:
                    scale[j] = sd
        self.center = center
        self.scale = scale
        self.train_z = self._standardize(X)
        self.train_y = y.astype(np.int64)

    def _standardize(self, X: np.ndarray) -> np.ndarray:
        return (X - self.center[None, :]) / self.scale[None, :]

    def _predict_encoded(self, X: np.ndarray) -> np.ndarray:
        return _backend.knn_predict(
            self.train_z,
            self.train_y,
            self._standardize(X),
            self.nominal,
            int(self.spec.k),
            self.c,
            self.modal_class,
        )


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


class TreeModel(TrainedModel):
    """Greedy information-gain tree with binary splits.

    Numeric nodes test x <= midpoint, nominal nodes test x == category. Gain
    is computed on the rows where the attribute is non-null; null rows follow
    the heavier child, both while partitioning and at prediction time.
    """

    def __init__(self, spec: ClassifierSpec, d: Dataset) -> None:
        super().__init__(spec, d)
        X, y = d.X, d.y
        feature: list[int] = []
        value: list[float] = []
        left: list[int] = []
        right: list[int] = []
        null_right: list[int] = []
        leaf: list[int] = []

        def new_node() -> int:
            feature.append(-1)
            value.append(0.0)
            left.append(-1)
            right.append(-1)
            null_right.append(0)
            leaf.append(-1)
            return len(feature) - 1

        def build(rows: np.ndarray, depth: int) -> int:
            node = new_node()
            counts = np.bincount(y[rows], minlength=self.c)
            modal = int(np.argmax(counts))
            if (
                depth >= spec.max_depth
                or rows.size < 2 * spec.min_leaf
                or counts.max() == rows.size
            ):
                leaf[node] = modal
                return node
            best = self._best_split(X, y, rows, spec.min_leaf)
            if best is None:
                leaf[node] = modal
                return node
            j, thr, left_rows, right_rows, nulls_right = best
            feature[node] = j
            value[node] = thr
            null_right[node] = nulls_right
            left[node] = build(left_rows, depth + 1)
            right[node] = build(right_rows, depth + 1)
            return node

        build(np.arange(d.n), 0)
        self.feature = np.array(feature, dtype=np.int64)
        self.value = np.array(value, dtype=np.float64)
        self.left = np.array(left, dtype=np.int64)
        self.right = np.array(right, dtype=np.int64)
        self.null_right = np.array(null_right, dtype=np.uint8)
        self.leaf = np.array(leaf, dtype=np.int64)

    @staticmethod
    def _entropy_rows(counts: np.ndarray) -> np.ndarray:
        """Entropy of each row of a (candidates, classes) count matrix."""
        tot = counts.sum(axis=1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            p = counts / tot
            h = np.where(counts > 0, -p * np.log2(p), 0.0)
        return h.sum(axis=1)

    def _best_split(self, X, y, rows, min_leaf):
        best_gain = 0.0
        best = None
        for j in range(self.m):
            col = X[rows, j]
            ok = ~np.isnan(col)
            ok_rows = rows[ok]
            null_rows = rows[~ok]
            n_ok = ok_rows.size
            if n_ok < 2:
                continue
            vals = col[ok]
            labels = y[ok_rows]
            parent_counts = np.bincount(labels, minlength=self.c)
            parent = _entropy(parent_counts)
            if parent == 0.0:
                continue
            if self.nominal[j]:
                codes = vals.astype(np.int64)
                distinct = np.unique(codes)
                cand_counts = np.zeros((distinct.size, self.c))
                for i, v in enumerate(distinct):
                    cand_counts[i] = np.bincount(labels[codes == v], minlength=self.c)
                thresholds = distinct.astype(np.float64)
                left_counts = cand_counts
            else:
                order = np.argsort(vals, kind="stable")
                sv = vals[order]
                onehot = np.zeros((n_ok, self.c))
                onehot[np.arange(n_ok), labels[order]] = 1.0
                cum = np.cumsum(onehot, axis=0)
                boundary = np.nonzero(sv[:-1] != sv[1:])[0]
                if boundary.size == 0:
                    continue
                thresholds = (sv[boundary] + sv[boundary + 1]) / 2.0
                left_counts = cum[boundary]
            nl = left_counts.sum(axis=1)
            nr = float(n_ok) - nl
            usable = (nl > 0) & (nr > 0)
            if not usable.any():
                continue
            h_l = self._entropy_rows(left_counts)
            h_r = self._entropy_rows(parent_counts[None, :] - left_counts)
            gain = parent - (nl * h_l + nr * h_r) / n_ok
            nulls_right = nr > nl  # ties keep nulls left
            tl = nl + np.where(nulls_right, 0, null_rows.size)
            tr = nr + np.where(nulls_right, null_rows.size, 0)
            gain = np.where(usable & (tl >= min_leaf) & (tr >= min_leaf), gain, -1.0)
            pick = int(np.argmax(gain))  # ties: lowest threshold/category
            if gain[pick] > best_gain:  # ties across attributes: lowest j
                best_gain = float(gain[pick])
                thr = float(thresholds[pick])
                if self.nominal[j]:
                    go_left = vals.astype(np.int64) == int(thr)
                else:
                    go_left = vals <= thr
                lrows = ok_rows[go_left]
                rrows = ok_rows[~go_left]
                if nulls_right[pick]:
                    rrows = np.sort(np.concatenate([rrows, null_rows]))
                else:
                    lrows = np.sort(np.concatenate([lrows, null_rows]))
                best = (j, thr, lrows, rrows, int(nulls_right[pick]))
        return best

    def _predict_encoded(self, X: np.ndarray) -> np.ndarray:
        return _backend.tree_predict(
            self.feature,
            self.value,
            self.left,
            self.right,
            self.null_right,
            self.leaf,
            self.nominal,
            np.ascontiguousarray(X),
        )


class NaiveBayesModel(TrainedModel):
    """Gaussian numerics, Laplace-smoothed nominals, null factors skipped."""

    VAR_FLOOR = 1e-9

    def __init__(self, spec: ClassifierSpec, d: Dataset) -> None:
        super().__init__(spec, d)
        X, y = d.X, d.y
        c, m = self.c, self.m
        counts = d.class_counts()
        with np.errstate(divide="ignore"):
            self.log_prior = np.where(
                counts > 0, np.log(counts / counts.sum()), -np.inf
            )
        self.mean = np.zeros((c, m))
        self.inv_two_var = np.zeros((c, m))
        self.log_norm = np.zeros((c, m))
        offsets = np.full(m, -1, dtype=np.int64)
        total_vals = 0
        for j in range(m):
            if self.nominal[j]:
                offsets[j] = total_vals
                total_vals += len(self.schema[j].values)
        self.cat_offset = offsets
        self.log_cat = np.zeros((c, max(total_vals, 1)))
        for k in range(c):
            rows = np.nonzero(y == k)[0]
            for j in range(m):
                col = X[rows, j]
                col = col[~np.isnan(col)]
                if self.nominal[j]:
                    n_vals = len(self.schema[j].values)
                    vc = np.bincount(col.astype(np.int64), minlength=n_vals)
                    self.log_cat[k, offsets[j] : offsets[j] + n_vals] = np.log(
                        (vc + 1.0) / (col.size + n_vals)
                    )
                elif col.size:
                    mu = col.mean()
                    var = col.var() + self.VAR_FLOOR
                    self.mean[k, j] = mu
                    self.inv_two_var[k, j] = 1.0 / (2.0 * var)
                    self.log_norm[k, j] = -0.5 * math.log(2.0 * math.pi * var)
        # classes or cells without data keep the zero encoding -> no factor

    def _predict_encoded(self, X: np.ndarray) -> np.ndarray:
        return _backend.nb_predict(
            self.log_prior,
            self.mean,
            self.inv_two_var,
            self.log_norm,
            self.cat_offset,
            self.log_cat,
            self.nominal,
            np.ascontiguousarray(X),
        )


class BaggingModel(TrainedModel):
    """Seeded bootstrap ensemble with majority voting (ties: lower class)."""

    def __init__(self, spec: ClassifierSpec, d: Dataset) -> None:
        super().__init__(spec, d)
        rng = np.random.default_rng(spec.seed)
        self.members = []
        for _ in range(spec.rounds):
            if spec.bootstrap:
                idx = rng.integers(0, d.n, d.n)
            else:
                idx = np.arange(d.n)
            self.members.append(train(spec.base, d.subset(idx)))

    def _predict_encoded(self, X: np.ndarray) -> np.ndarray:
        votes = np.zeros((X.shape[0], self.c), dtype=np.int64)
        rows = np.arange(X.shape[0])
        for member in self.members:
            votes[rows, member.predict_batch(X)] += 1
        return np.argmax(votes, axis=1).astype(np.int64)


_BUILDERS = {
    "majority": MajorityModel,
    "knn": KnnModel,
    "decision_tree": TreeModel,
    "naive_bayes": NaiveBayesModel,
    "bagging": BaggingModel,
}


def train(spec: ClassifierSpec, d: Dataset) -> TrainedModel:
    if d.n == 0:
        raise ValidationError("cannot train on an empty dataset")
    if not d.labelled:
        raise ValidationError("training requires labels on every instance")
    return _BUILDERS[spec.kind](spec, d)


def predict(model: TrainedModel, x: Instance) -> int:
    return model.predict(x)


def predict_dataset(model: TrainedModel, d: Dataset, cfg=None) -> list[int]:
    """Labels for every instance, optionally masked to a configuration.

    Equivalent to predicting mask_instance(x, cfg) elementwise.
    """
    from .data import mask_matrix

    X = d.X if cfg is None else mask_matrix(d.X, cfg)
    return [int(p) for p in model.predict_batch(X)]
