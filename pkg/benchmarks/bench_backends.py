"""Timing comparison of the compiled and pure-python prediction kernels.

Builds one synthetic mixed dataset, trains knn / decision tree / naive Bayes
through the public API, then times both backend implementations on identical
kernel inputs. Reported numbers are best-of-repeat seconds per call.

Usage: python3 benchmarks/bench_backends.py [--n 2000] [--queries 2000]
"""
import argparse
import time

import numpy as np

from jroc import AttributeSchema, ClassifierSpec, Dataset, Instance, train
from jroc import NOMINAL, NUMERIC
from jroc._backend import _purepy

try:
    from jroc._backend import _kernels
except ImportError:
    _kernels = None


def make_dataset(rng, n, m, c, null_rate):
    schema = []
    for j in range(m):
        if j % 2 == 0:
            schema.append(AttributeSchema(f"a{j}", NUMERIC, None))
        else:
            schema.append(AttributeSchema(f"a{j}", NOMINAL, ("u", "v", "w")))
    labels = rng.integers(0, c, size=n)
    labels[:c] = np.arange(c)
    rows = []
    for i in range(n):
        values = []
        for j in range(m):
            if rng.random() < null_rate:
                values.append(None)
            elif j % 2 == 0:
                values.append(float(rng.normal() + 0.8 * labels[i]))
            else:
                values.append(int((labels[i] + rng.integers(0, 2)) % 3))
        rows.append(Instance(tuple(values), int(labels[i])))
    classes = tuple(f"c{k}" for k in range(c))
    return Dataset(schema, classes, rows)


def query_matrix(rng, n, m, nominal, null_rate):
    X = rng.normal(size=(n, m))
    for j in range(m):
        if nominal[j]:
            X[:, j] = rng.integers(0, 3, size=n)
    X[rng.random(size=(n, m)) < null_rate] = np.nan
    return np.ascontiguousarray(X)


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000, help="training rows")
    ap.add_argument("--queries", type=int, default=2000)
    ap.add_argument("--m", type=int, default=12, help="attributes")
    ap.add_argument("--classes", type=int, default=3)
    ap.add_argument("--null-rate", type=float, default=0.1)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    d = make_dataset(rng, args.n, args.m, args.classes, args.null_rate)
    Q = query_matrix(rng, args.queries, args.m,
                     np.array([a.kind == NOMINAL for a in d.schema]),
                     args.null_rate)

    knn = train(ClassifierSpec("knn", k=5), d)
    tree = train(ClassifierSpec("decision_tree", max_depth=8), d)
    nb = train(ClassifierSpec("naive_bayes"), d)

    jobs = [
        ("knn_predict", "knn_predict",
         (knn.train_z, knn.train_y, knn._standardize(Q), knn.nominal,
          5, d.c, knn.modal_class)),
        ("tree_predict", "tree_predict",
         (tree.feature, tree.value, tree.left, tree.right, tree.null_right,
          tree.leaf, tree.nominal, Q)),
        ("nb_predict", "nb_predict",
         (nb.log_prior, nb.mean, nb.inv_two_var, nb.log_norm, nb.cat_offset,
          nb.log_cat, nb.nominal, Q)),
    ]

    print(f"n={args.n} queries={args.queries} m={args.m} "
          f"c={args.classes} null_rate={args.null_rate} repeat={args.repeat}")
    header = f"{'kernel':<14}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, fn_name, fn_args in jobs:
        t_pure, out_pure = best_of(args.repeat,
                                   getattr(_purepy, fn_name), *fn_args)
        if _kernels is None:
            print(f"{label:<14}{t_pure:>12.6f}{'missing':>14}{'':>10}")
            continue
        t_fast, out_fast = best_of(args.repeat,
                                   getattr(_kernels, fn_name), *fn_args)
        if not np.array_equal(out_pure, out_fast):
            raise SystemExit(f"{label}: backends disagree")
        print(f"{label:<14}{t_pure:>12.6f}{t_fast:>14.6f}"
              f"{t_pure / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
