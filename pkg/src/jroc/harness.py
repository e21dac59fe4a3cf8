"""End-to-end comparison protocol and report emission.

Per dataset and repetition: split into 2/3 working + 1/3 held-out test, halve
the working set into a training half and a validation half, train every
model on the first half, let each method build its point cloud on the second
half, then for each alpha of the grid pick the best pooled (model,
configuration) pair and price that choice on the held-out third. Test joint
costs averaged over repetitions feed the rank statistics.
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import _backend
from .classifiers import ClassifierSpec, train
from .configuration import FeatureConfiguration
from .cost import CostContext, random_context, uniform_context
from .data import Dataset, load_csv, split_dataset
from .errors import ValidationError
from .hull import lower_hull, select_best
from .lattice import (
    DEFAULT_CEILING,
    ConfigurationEvaluator,
    EvalPoint,
    enumerate_full_lattice,
)
from .plot import render_plot
from .search import backward_budget, backward_search, random_search, sample_configurations
from .stats import ResultMatrix, comparison_report, report_to_json

METHODS = ("full", "bmc", "btc", "bjc", "rnd")
METHOD_LABELS = {"full": "Full", "bmc": "BMC", "btc": "BTC", "bjc": "BJC", "rnd": "RND"}
CONTEXT_MODES = ("uniform", "variable")

DEFAULT_ALPHA_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple[str, ...]
    models: tuple[ClassifierSpec, ...]
    context_mode: str = "uniform"
    beta: float = 10.0
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID
    repetitions: int = 4
    methods: tuple[str, ...] = METHODS
    seed: int = 0
    lattice_ceiling: int = DEFAULT_CEILING
    missing_token: str = "?"
    label_column: str | int = -1

    def __post_init__(self) -> None:
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "models", tuple(self.models))
        object.__setattr__(self, "alpha_grid", tuple(float(a) for a in self.alpha_grid))
        object.__setattr__(
            self, "methods", tuple(m.lower() for m in self.methods)
        )
        if not self.datasets:
            raise ValidationError("experiment needs at least one dataset")
        if not self.models:
            raise ValidationError("experiment needs at least one model")
        labels = [spec.label() for spec in self.models]
        if len(set(labels)) != len(labels):
            raise ValidationError(f"model labels must be unique, got {labels}")
        if self.context_mode not in CONTEXT_MODES:
            raise ValidationError(
                f"context_mode must be one of {CONTEXT_MODES}, got {self.context_mode!r}"
            )
        if self.beta < 0:
            raise ValidationError(f"beta must be >= 0, got {self.beta}")
        if not self.alpha_grid:
            raise ValidationError("alpha_grid must be non-empty")
        for a in self.alpha_grid:
            if not 0.0 <= a <= 1.0:
                raise ValidationError(f"alpha {a} outside [0, 1]")
        if self.repetitions < 1:
            raise ValidationError(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.methods:
            raise ValidationError("methods must be non-empty")
        for m in self.methods:
            if m not in METHODS:
                raise ValidationError(f"unknown method {m!r}, choose from {METHODS}")
        if len(set(self.methods)) != len(self.methods):
            raise ValidationError("methods must be distinct")
        if self.lattice_ceiling < 1:
            raise ValidationError("lattice_ceiling must be >= 1")

    def to_dict(self) -> dict:
        return {
            "datasets": list(self.datasets),
            "models": [spec.to_dict() for spec in self.models],
            "context_mode": self.context_mode,
            "beta": self.beta,
            "alpha_grid": list(self.alpha_grid),
            "repetitions": self.repetitions,
            "methods": list(self.methods),
            "seed": self.seed,
            "lattice_ceiling": self.lattice_ceiling,
            "missing_token": self.missing_token,
            "label_column": self.label_column,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentConfig":
        if not isinstance(payload, dict):
            raise ValidationError("experiment config must be a JSON object")
        kw = dict(payload)
        models = kw.pop("models", None)
        if models is None:
            raise ValidationError("experiment config needs 'models'")
        kw["models"] = tuple(ClassifierSpec.from_dict(mp) for mp in models)
        if "datasets" not in kw:
            raise ValidationError("experiment config needs 'datasets'")
        try:
            return cls(**kw)
        except TypeError as exc:
            raise ValidationError(f"bad experiment config: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"experiment config is not valid JSON: {exc}") from exc
        return cls.from_dict(payload)


@dataclass(frozen=True)
class ExperimentCell:
    """One (dataset, method, alpha, repetition) outcome."""

    dataset: str
    method: str
    alpha: float
    repetition: int
    model_id: str
    cfg_bits: str
    validation_jc: float
    test_jc: float


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    cells: tuple[ExperimentCell, ...]
    matrix: ResultMatrix
    stats: dict
    budgets: dict  # dataset -> method -> per-model evaluation count
    clouds: dict  # dataset -> model_id -> tuple[EvalPoint] (repetition 0)
    backend: str

    def cell(self, dataset: str, method: str, alpha: float, repetition: int) -> ExperimentCell:
        for c in self.cells:
            if (
                c.dataset == dataset
                and c.method == method
                and c.alpha == alpha
                and c.repetition == repetition
            ):
                return c
        raise KeyError((dataset, method, alpha, repetition))


def _derived_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def _make_context(config: ExperimentConfig, d: Dataset, seed: int) -> CostContext:
    if config.context_mode == "uniform":
        return uniform_context(d.m, d.c)
    return random_context(d.m, d.c, beta=config.beta, seed=seed)


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    datasets = [
        load_csv(path, config.missing_token, config.label_column)
        for path in config.datasets
    ]
    names = [d.name for d in datasets]
    if len(set(names)) != len(names):
        raise ValidationError(f"dataset names must be unique, got {names}")
    if "full" in config.methods:
        for d in datasets:
            if d.m > config.lattice_ceiling:
                raise ValidationError(
                    f"dataset {d.name!r} has m={d.m} > lattice ceiling "
                    f"{config.lattice_ceiling}; drop the full method or raise it"
                )

    cells: list[ExperimentCell] = []
    budgets: dict[str, dict[str, int]] = {}
    clouds: dict[str, dict[str, tuple[EvalPoint, ...]]] = {}

    for di, d in enumerate(datasets):
        budgets[d.name] = {}
        for rep in range(config.repetitions):
            work, test = split_dataset(
                d, (2.0 / 3.0, 1.0 / 3.0), _derived_seed(config.seed, di, rep, 0)
            )
            train_half, valid_half = split_dataset(
                work, (0.5, 0.5), _derived_seed(config.seed, di, rep, 1)
            )
            ctx = _make_context(config, d, _derived_seed(config.seed, di, rep, 2))
            models = [(spec.label(), train(spec, train_half)) for spec in config.models]
            valid_eval = {
                mid: ConfigurationEvaluator(model, valid_half, ctx, mid)
                for mid, model in models
            }
            test_eval = {
                mid: ConfigurationEvaluator(model, test, ctx, mid)
                for mid, model in models
            }
            rnd_cfgs = None
            if "rnd" in config.methods:
                rnd_cfgs = sample_configurations(
                    d.m, backward_budget(d.m), _derived_seed(config.seed, di, rep, 3)
                )
            rep_clouds: dict[str, list[EvalPoint]] = {mid: [] for mid, _ in models}
            for method in config.methods:
                pooled: list[EvalPoint] = []
                for mid, model in models:
                    if method == "full":
                        pts = enumerate_full_lattice(
                            model,
                            valid_half,
                            ctx,
                            ceiling=config.lattice_ceiling,
                            model_id=mid,
                            evaluator=valid_eval[mid],
                        )
                    elif method == "rnd":
                        trace = random_search(
                            model,
                            valid_half,
                            ctx,
                            budget=backward_budget(d.m),
                            model_id=mid,
                            evaluator=valid_eval[mid],
                            configurations=rnd_cfgs,
                        )
                        pts = list(trace.visited)
                    else:
                        trace = backward_search(
                            model,
                            valid_half,
                            ctx,
                            criterion=method[1:],  # bmc/btc/bjc -> mc/tc/jc
                            alpha_for_jc=ctx.alpha if method == "bjc" else None,
                            model_id=mid,
                            evaluator=valid_eval[mid],
                        )
                        pts = list(trace.visited)
                    budgets[d.name][METHOD_LABELS[method]] = len(pts)
                    pooled.extend(pts)
                    if rep == 0:
                        known = {p.cfg.mask for p in rep_clouds[mid]}
                        rep_clouds[mid].extend(
                            p for p in pts if p.cfg.mask not in known
                        )
                for alpha in config.alpha_grid:
                    best = select_best(pooled, alpha)
                    test_point = test_eval[best.model_id](best.cfg)
                    cells.append(
                        ExperimentCell(
                            dataset=d.name,
                            method=METHOD_LABELS[method],
                            alpha=alpha,
                            repetition=rep,
                            model_id=best.model_id,
                            cfg_bits=best.cfg.bits(),
                            validation_jc=best.joint(alpha),
                            test_jc=test_point.joint(alpha),
                        )
                    )
            if rep == 0:
                clouds[d.name] = {
                    mid: tuple(sorted(pts, key=lambda p: p.cfg.mask))
                    for mid, pts in rep_clouds.items()
                }

    matrix = _result_matrix(config, names, cells)
    stats = comparison_report(matrix) if matrix is not None else {}
    return ExperimentReport(
        config=config,
        cells=tuple(cells),
        matrix=matrix,
        stats=stats,
        budgets=budgets,
        clouds=clouds,
        backend=_backend.BACKEND_NAME,
    )


def _result_matrix(config, names, cells) -> ResultMatrix | None:
    """Rows = dataset x alpha (test JC averaged over repetitions)."""
    if len(config.methods) < 2 or len(names) * len(config.alpha_grid) < 2:
        return None
    method_labels = [METHOD_LABELS[m] for m in config.methods]
    index: dict[tuple[str, str, float], list[float]] = {}
    for c in cells:
        index.setdefault((c.dataset, c.method, c.alpha), []).append(c.test_jc)
    rows = []
    labels = []
    for name in names:
        for alpha in config.alpha_grid:
            rows.append(
                [
                    float(np.mean(index[(name, ml, alpha)]))
                    for ml in method_labels
                ]
            )
            labels.append(f"{name}@a{alpha:g}")
    return ResultMatrix(tuple(method_labels), np.array(rows), tuple(labels))


def _summaries(report: ExperimentReport):
    method_labels = [METHOD_LABELS[m] for m in report.config.methods]
    by_dataset = []
    for name in sorted({c.dataset for c in report.cells}):
        for ml in method_labels:
            vals = [
                c.test_jc for c in report.cells if c.dataset == name and c.method == ml
            ]
            by_dataset.append((name, ml, float(np.mean(vals)), float(np.std(vals))))
    by_alpha = []
    for alpha in report.config.alpha_grid:
        for ml in method_labels:
            vals = [
                c.test_jc for c in report.cells if c.alpha == alpha and c.method == ml
            ]
            by_alpha.append((alpha, ml, float(np.mean(vals)), float(np.std(vals))))
    return by_dataset, by_alpha


def emit_report(report: ExperimentReport, out_dir: str) -> list[str]:
    """Write the report artifacts; returns the created paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []

    def _write(name: str, text: str) -> None:
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        [
            "dataset",
            "method",
            "alpha",
            "repetition",
            "model_id",
            "cfg",
            "validation_jc",
            "test_jc",
        ]
    )
    for c in report.cells:
        w.writerow(
            [
                c.dataset,
                c.method,
                repr(c.alpha),
                c.repetition,
                c.model_id,
                c.cfg_bits,
                repr(c.validation_jc),
                repr(c.test_jc),
            ]
        )
    _write("cells.csv", buf.getvalue())

    by_dataset, by_alpha = _summaries(report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dataset", "method", "mean_test_jc", "std_test_jc"])
    for row in by_dataset:
        w.writerow([row[0], row[1], repr(row[2]), repr(row[3])])
    _write("summary_by_dataset.csv", buf.getvalue())

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "method", "mean_test_jc", "std_test_jc"])
    for row in by_alpha:
        w.writerow([repr(row[0]), row[1], repr(row[2]), repr(row[3])])
    _write("summary_by_alpha.csv", buf.getvalue())

    if report.matrix is not None:
        _write("result_matrix.csv", report.matrix.to_csv())
        _write("stats.json", report_to_json(report.stats))

    meta = {
        "config": report.config.to_dict(),
        "backend": report.backend,
        "budgets": report.budgets,
    }
    _write("experiment.json", json.dumps(meta, indent=2))

    for name, model_clouds in report.clouds.items():
        hulls = {mid: lower_hull(pts) for mid, pts in model_clouds.items() if pts}
        svg = render_plot(
            {mid: list(pts) for mid, pts in model_clouds.items()},
            hulls,
            isometric_alphas=report.config.alpha_grid,
        )
        _write(f"plot_{name}.svg", svg)
    return written
