"""Small seeded dataset builders shared across tests."""
import csv

import numpy as np

from jroc import AttributeSchema, Dataset, Instance, NOMINAL, NUMERIC


def dataset_to_csv(d, path):
    """Serialize a Dataset the way load_csv reads it back; returns str(path)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([a.name for a in d.schema] + ["label"])
        for inst in d.instances:
            row = []
            for j, v in enumerate(inst.values):
                if v is None:
                    row.append("?")
                elif d.schema[j].kind == NOMINAL:
                    row.append(d.schema[j].values[int(v)])
                else:
                    row.append(repr(float(v)))
            row.append(d.classes[inst.label])
            w.writerow(row)
    return str(path)


def numeric_schema(m):
    return [AttributeSchema(f"a{j}", NUMERIC, None) for j in range(m)]


def make_numeric_dataset(rng, n=60, m=4, c=2, null_rate=0.0, signal=1.2):
    """Gaussian attributes with a class shift on the first two columns."""
    labels = rng.integers(0, c, size=n)
    labels[:c] = np.arange(c)
    rows = []
    for i in range(n):
        x = rng.normal(size=m)
        x[0] += signal * labels[i]
        if m > 1:
            x[1] -= signal * labels[i]
        values = []
        for j in range(m):
            if null_rate and rng.random() < null_rate:
                values.append(None)
            else:
                values.append(float(x[j]))
        rows.append(Instance(tuple(values), int(labels[i])))
    classes = tuple(f"c{k}" for k in range(c))
    return Dataset(numeric_schema(m), classes, rows)


def make_mixed_dataset(rng, n=80, m=5, c=3, null_rate=0.1):
    """Alternating numeric and three-valued nominal attributes."""
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
            if null_rate and rng.random() < null_rate:
                values.append(None)
            elif j % 2 == 0:
                values.append(float(rng.normal() + 0.8 * labels[i]))
            else:
                values.append(int((labels[i] + rng.integers(0, 2)) % 3))
        rows.append(Instance(tuple(values), int(labels[i])))
    classes = tuple(f"c{k}" for k in range(c))
    return Dataset(schema, classes, rows)
