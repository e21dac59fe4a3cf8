"""Datasets with nullable attribute values.

Values are numeric, nominal (stored as an index into the attribute's value
list) or null. Null is both the missing-value marker of the source data and
the masking marker used when a feature configuration hides an attribute from
a deployed model; downstream code never distinguishes the two.

The canonical in-memory encoding is a float64 matrix with NaN for null and
category indices for nominal cells, plus an int label vector. The Instance
view keeps python types (float / int / None).
"""
from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .configuration import FeatureConfiguration
from .errors import (
    EmptyDatasetError,
    MissingLabelError,
    RaggedRowsError,
    SchemaMismatchError,
    ValidationError,
)

NUMERIC = "numeric"
NOMINAL = "nominal"


@dataclass(frozen=True)
class AttributeSchema:
    name: str
    kind: str
    values: tuple[str, ...] | None = None  # nominal category names, None for numeric

    def __post_init__(self) -> None:
        if self.kind not in (NUMERIC, NOMINAL):
            raise ValidationError(f"unknown attribute kind {self.kind!r}")
        if self.kind == NOMINAL:
            if not self.values:
                raise ValidationError(f"nominal attribute {self.name!r} needs values")
            if len(set(self.values)) != len(self.values):
                raise ValidationError(f"duplicate values for attribute {self.name!r}")
        elif self.values is not None:
            raise ValidationError(f"numeric attribute {self.name!r} cannot list values")


@dataclass(frozen=True)
class Instance:
    """One example: attribute values plus an optional class index."""

    values: tuple
    label: int | None = None

    def is_null(self, j: int) -> bool:
        return self.values[j] is None

    def all_null(self) -> bool:
        return all(v is None for v in self.values)


class Dataset:
    """Immutable labelled dataset.

    Exposes both the instance view (`instances`) and the matrix encoding
    (`X` float64 with NaN nulls, `y` int64), which stay consistent.
    """

    def __init__(
        self,
        schema: tuple[AttributeSchema, ...],
        classes: tuple[str, ...],
        instances: tuple[Instance, ...],
        name: str = "dataset",
    ) -> None:
        schema = tuple(schema)
        classes = tuple(classes)
        instances = tuple(instances)
        names = [a.name for a in schema]
        if len(set(names)) != len(names):
            raise ValidationError("attribute names must be unique")
        if len(set(classes)) != len(classes):
            raise ValidationError("class names must be unique")
        if not classes:
            raise ValidationError("class list must be non-empty")
        m = len(schema)
        for i, inst in enumerate(instances):
            if len(inst.values) != m:
                raise SchemaMismatchError(
                    f"instance {i} has {len(inst.values)} values, schema has {m}"
                )
            if inst.label is not None and not 0 <= inst.label < len(classes):
                raise ValidationError(f"instance {i} label {inst.label} out of range")
        self.schema = schema
        self.classes = classes
        self.instances = instances
        self.name = name
        self._X: np.ndarray | None = None
        self._y: np.ndarray | None = None

    @property
    def m(self) -> int:
        return len(self.schema)

    @property
    def n(self) -> int:
        return len(self.instances)

    @property
    def c(self) -> int:
        return len(self.classes)

    @property
    def labelled(self) -> bool:
        return all(inst.label is not None for inst in self.instances)

    @property
    def X(self) -> np.ndarray:
        if self._X is None:
            X = np.full((self.n, self.m), np.nan)
            for i, inst in enumerate(self.instances):
                for j, v in enumerate(inst.values):
                    if v is not None:
                        X[i, j] = float(v)
            X.setflags(write=False)
            self._X = X
        return self._X

    @property
    def y(self) -> np.ndarray:
        if self._y is None:
            if not self.labelled:
                raise ValidationError(f"dataset {self.name!r} is not fully labelled")
            y = np.array([inst.label for inst in self.instances], dtype=np.int64)
            y.setflags(write=False)
            self._y = y
        return self._y

    @property
    def is_nominal(self) -> np.ndarray:
        return np.array([a.kind == NOMINAL for a in self.schema])

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.y, minlength=self.c)

    def subset(self, indices, name: str | None = None) -> "Dataset":
        inst = tuple(self.instances[i] for i in indices)
        return Dataset(self.schema, self.classes, inst, name or self.name)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Dataset({self.name!r}, n={self.n}, m={self.m}, c={self.c})"


def mask_instance(x: Instance, cfg: FeatureConfiguration) -> Instance:
    """Null out every attribute outside cfg; nulls stay null."""
    if cfg.width != len(x.values):
        raise SchemaMismatchError(
            f"configuration width {cfg.width} != instance width {len(x.values)}"
        )
    vals = tuple(v if cfg.contains(j) else None for j, v in enumerate(x.values))
    return Instance(vals, x.label)


def mask_matrix(X: np.ndarray, cfg: FeatureConfiguration) -> np.ndarray:
    """Matrix counterpart of mask_instance (rows masked column-wise)."""
    if cfg.width != X.shape[1]:
        raise SchemaMismatchError(
            f"configuration width {cfg.width} != matrix width {X.shape[1]}"
        )
    out = np.array(X, dtype=np.float64, copy=True)
    hidden = [j for j in range(cfg.width) if not cfg.contains(j)]
    if hidden:
        out[:, hidden] = np.nan
    return out


def _parse_number(cell: str) -> float | None:
    try:
        v = float(cell)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _infer_kinds(columns: list[list[str]], missing_token: str) -> list[str]:
    kinds = []
    for col in columns:
        seen = [c for c in col if c != missing_token]
        numeric = bool(seen) and all(_parse_number(c) is not None for c in seen)
        kinds.append(NUMERIC if numeric else NOMINAL)
    return kinds


def _load_sidecar(path: str) -> dict | None:
    sidecar = path + ".schema.json"
    if not os.path.exists(sidecar):
        return None
    with open(sidecar, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_csv(
    path: str,
    missing_token: str = "?",
    label_column: str | int = -1,
) -> Dataset:
    """Load a header-bearing CSV into a Dataset.

    Column kinds are inferred (all cells parse as numbers -> numeric, else
    nominal) unless a `<path>.schema.json` sidecar pins names, kinds and the
    class list. Classes and nominal values are indexed in first-appearance
    order. `label_column` picks the class column by header name or position
    (default: last).
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]  # blank lines carry no data
    if not rows:
        raise EmptyDatasetError(f"{path}: no header row")
    header, data = rows[0], rows[1:]
    if not data:
        raise EmptyDatasetError(f"{path}: header only, no data rows")
    width = len(header)
    for i, row in enumerate(data):
        if len(row) != width:
            raise RaggedRowsError(
                f"{path}: row {i + 2} has {len(row)} cells, header has {width}"
            )

    if isinstance(label_column, int):
        if not -width <= label_column < width:
            raise MissingLabelError(f"{path}: label column {label_column} out of range")
        label_idx = label_column % width
    else:
        if label_column not in header:
            raise MissingLabelError(f"{path}: no column named {label_column!r}")
        label_idx = header.index(label_column)

    attr_idx = [j for j in range(width) if j != label_idx]
    columns = [[row[j].strip() for row in data] for j in attr_idx]
    label_cells = [row[label_idx].strip() for row in data]
    if any(c == missing_token for c in label_cells):
        raise ValidationError(f"{path}: missing value in label column")

    sidecar = _load_sidecar(path)
    if sidecar is not None:
        schema, classes = _schema_from_sidecar(sidecar, [header[j] for j in attr_idx])
    else:
        kinds = _infer_kinds(columns, missing_token)
        schema = []
        for j, kind in enumerate(kinds):
            if kind == NUMERIC:
                schema.append(AttributeSchema(header[attr_idx[j]], NUMERIC))
            else:
                vals = _first_appearance(columns[j], missing_token)
                schema.append(AttributeSchema(header[attr_idx[j]], NOMINAL, tuple(vals)))
        classes = _first_appearance(label_cells, missing_token=None)

    class_index = {cname: i for i, cname in enumerate(classes)}
    value_index = [
        {v: i for i, v in enumerate(a.values)} if a.kind == NOMINAL else None
        for a in schema
    ]
    instances = []
    for r, row_label in enumerate(label_cells):
        if row_label not in class_index:
            raise ValidationError(f"{path}: row {r + 2} label {row_label!r} not in class list")
        vals: list = []
        for j, a in enumerate(schema):
            cell = columns[j][r]
            if cell == missing_token:
                vals.append(None)
            elif a.kind == NUMERIC:
                num = _parse_number(cell)
                if num is None:
                    raise ValidationError(
                        f"{path}: row {r + 2}, column {a.name!r}: {cell!r} is not numeric"
                    )
                vals.append(num)
            else:
                if cell not in value_index[j]:
                    raise ValidationError(
                        f"{path}: row {r + 2}, column {a.name!r}: {cell!r} not in declared values"
                    )
                vals.append(value_index[j][cell])
        instances.append(Instance(tuple(vals), class_index[row_label]))

    name = os.path.splitext(os.path.basename(path))[0]
    return Dataset(tuple(schema), tuple(classes), tuple(instances), name=name)


def _first_appearance(cells, missing_token) -> list[str]:
    seen: dict[str, None] = {}
    for c in cells:
        if c != missing_token and c not in seen:
            seen[c] = None
    return list(seen)


def _schema_from_sidecar(sidecar: dict, attr_names: list[str]):
    try:
        attrs = sidecar["attributes"]
        classes = tuple(sidecar["classes"])
    except KeyError as exc:
        raise ValidationError(f"schema sidecar missing key {exc}") from exc
    if len(attrs) != len(attr_names):
        raise SchemaMismatchError(
            f"schema sidecar lists {len(attrs)} attributes, CSV has {len(attr_names)}"
        )
    schema = []
    for spec, name in zip(attrs, attr_names):
        if spec.get("name", name) != name:
            raise SchemaMismatchError(
                f"schema sidecar attribute {spec.get('name')!r} does not match CSV column {name!r}"
            )
        kind = spec.get("kind", NUMERIC)
        values = tuple(spec["values"]) if kind == NOMINAL else None
        schema.append(AttributeSchema(name, kind, values))
    return schema, classes


def _largest_remainder(weights: list[float], total: int) -> list[int]:
    """Integer allocation of `total` proportional to weights; ties go to the
    lower index."""
    exact = [w * total for w in weights]
    floors = [int(math.floor(e)) for e in exact]
    leftover = total - sum(floors)
    order = sorted(range(len(weights)), key=lambda i: (-(exact[i] - floors[i]), i))
    for i in order[:leftover]:
        floors[i] += 1
    return floors


def split_dataset(
    d: Dataset, fractions: tuple[float, ...], seed: int
) -> tuple[Dataset, ...]:
    """Random stratified partition into len(fractions) parts.

    Part sizes follow the fractions by largest-remainder rounding on the
    global totals; within each class, floor quotas are topped up in remainder
    order subject to those totals, so stratification is exact up to rounding.
    """
    fractions = tuple(float(f) for f in fractions)
    if not fractions:
        raise ValidationError("fractions must be non-empty")
    if any(f <= 0 for f in fractions):
        raise ValidationError(f"fractions must be positive, got {fractions}")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValidationError(f"fractions must sum to 1, got sum={sum(fractions)!r}")
    if not d.labelled:
        raise ValidationError("split requires a fully labelled dataset")
    parts = len(fractions)
    if parts == 1:
        return (d.subset(range(d.n), name=f"{d.name}[0]"),)

    counts = d.class_counts()
    present = [k for k in range(d.c) if counts[k] > 0]
    for k in present:
        if counts[k] < parts:
            raise ValidationError(
                f"class {d.classes[k]!r} has {counts[k]} members, fewer than {parts} parts"
            )

    global_sizes = _largest_remainder(list(fractions), d.n)
    floors = {}
    need = {}
    for k in present:
        exact = [f * counts[k] for f in fractions]
        fl = [int(math.floor(e)) for e in exact]
        floors[k] = fl
        need[k] = counts[k] - sum(fl)
    capacity = [global_sizes[p] - sum(floors[k][p] for k in present) for p in range(parts)]

    # Remainder-ordered seat assignment constrained to the global part sizes.
    alloc = {k: list(floors[k]) for k in present}
    seats = sorted(
        ((fractions[p] * counts[k]) - floors[k][p], k, p)
        for k in present
        for p in range(parts)
    )
    for rem, k, p in sorted(seats, key=lambda t: (-t[0], t[1], t[2])):
        if need[k] > 0 and capacity[p] > 0:
            alloc[k][p] += 1
            need[k] -= 1
            capacity[p] -= 1
    for k in present:  # repair: capacities can exhaust out of remainder order
        while need[k] > 0:
            p = next(q for q in range(parts) if capacity[q] > 0)
            alloc[k][p] += 1
            need[k] -= 1
            capacity[p] -= 1

    rng = np.random.default_rng(seed)
    member_lists = {k: np.where(d.y == k)[0] for k in present}
    part_indices: list[list[int]] = [[] for _ in range(parts)]
    for k in present:
        members = member_lists[k]
        rng.shuffle(members)
        start = 0
        for p in range(parts):
            take = alloc[k][p]
            part_indices[p].extend(members[start : start + take].tolist())
            start += take
    out = []
    for p in range(parts):
        part_indices[p].sort()
        out.append(d.subset(part_indices[p], name=f"{d.name}[{p}]"))
    return tuple(out)
