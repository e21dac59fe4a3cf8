"""Evaluating feature configurations on a validation set.

Each configuration maps to one point in (mean test cost, mean
misclassification cost) space; the full lattice of a model is the cloud of
all 2^m such points. Joint cost is never stored on a point: it is a function
of alpha applied at selection time.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .classifiers import TrainedModel
from .configuration import FeatureConfiguration
from .cost import CostContext, PerExampleContext, as_per_example, blend
from .data import Dataset, mask_matrix
from .errors import LatticeTooLargeError, ValidationError

DEFAULT_CEILING = 20

POINTS_HEADER = ("model_id", "cfg", "popcount", "mean_tc", "mean_mc")


@dataclass(frozen=True)
class EvalPoint:
    """One (model, configuration) evaluated on a dataset."""

    model_id: str
    cfg: FeatureConfiguration
    mean_tc: float
    mean_mc: float

    def joint(self, alpha: float) -> float:
        return blend(alpha, self.mean_mc, self.mean_tc)


def evaluate_configuration(
    model: TrainedModel,
    d: Dataset,
    context: CostContext | PerExampleContext,
    cfg: FeatureConfiguration,
    model_id: str | None = None,
) -> EvalPoint:
    """Deploy `model` on `d` seeing only the attributes in `cfg`.

    mean_mc averages M[predicted, actual]; mean_tc averages the per-instance
    acquisition cost (attributes in cfg that are non-null before masking).
    Pure: re-evaluation returns bit-identical numbers.
    """
    if d.n == 0:
        raise ValidationError("cannot evaluate on an empty dataset")
    if not d.labelled:
        raise ValidationError("evaluation requires labels")
    if cfg.width != d.m:
        raise ValidationError(f"configuration width {cfg.width} != dataset m {d.m}")
    pec = as_per_example(context)
    preds = model.predict_batch(mask_matrix(d.X, cfg))
    y = d.y
    cols = list(cfg.indices())
    nonnull = ~np.isnan(d.X)
    if pec.is_constant:
        ctx = pec.constant_context
        if ctx.m != d.m:
            raise ValidationError(f"context has {ctx.m} test costs, dataset m is {d.m}")
        mc = float(ctx.M[preds, y].mean())
        if cols:
            tc = float((nonnull[:, cols] @ ctx.T[cols]).mean())
        else:
            tc = 0.0
    else:
        mc_sum = 0.0
        tc_sum = 0.0
        for i in range(d.n):
            ctx = pec.context_for(i)
            if ctx.m != d.m:
                raise ValidationError(
                    f"context for instance {i} has {ctx.m} test costs, dataset m is {d.m}"
                )
            mc_sum += float(ctx.M[preds[i], y[i]])
            for j in cols:
                if nonnull[i, j]:
                    tc_sum += float(ctx.T[j])
        mc = mc_sum / d.n
        tc = tc_sum / d.n
    return EvalPoint(model_id or model.model_id, cfg, tc, mc)


class ConfigurationEvaluator:
    """Memoizing wrapper: one (model, dataset, context) triple, many cfgs.

    evaluate_configuration is pure, so caching is observationally invisible;
    it lets the searches and the full enumeration share work inside a run.
    """

    def __init__(
        self,
        model: TrainedModel,
        d: Dataset,
        context: CostContext | PerExampleContext,
        model_id: str | None = None,
    ) -> None:
        self.model = model
        self.d = d
        self.context = as_per_example(context)
        self.model_id = model_id or model.model_id
        self._cache: dict[int, EvalPoint] = {}

    def __call__(self, cfg: FeatureConfiguration) -> EvalPoint:
        point = self._cache.get(cfg.mask)
        if point is None:
            point = evaluate_configuration(
                self.model, self.d, self.context, cfg, self.model_id
            )
            self._cache[cfg.mask] = point
        return point


def enumerate_full_lattice(
    model: TrainedModel,
    d: Dataset,
    context: CostContext | PerExampleContext,
    ceiling: int = DEFAULT_CEILING,
    model_id: str | None = None,
    evaluator: ConfigurationEvaluator | None = None,
) -> list[EvalPoint]:
    """All 2^m configurations in ascending bitmask order.

    Exponential by design; refuses m > ceiling because the backward and
    random searches exist precisely to cover that regime.
    """
    if d.m > ceiling:
        raise LatticeTooLargeError(
            f"full lattice needs 2^{d.m} evaluations (ceiling 2^{ceiling}); "
            "use the backward or random searches for this many attributes"
        )
    if evaluator is None:
        evaluator = ConfigurationEvaluator(model, d, context, model_id)
    return [
        evaluator(FeatureConfiguration(d.m, mask)) for mask in range(1 << d.m)
    ]


def points_to_csv(points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(POINTS_HEADER)
    for p in points:
        w.writerow([p.model_id, p.cfg.bits(), p.cfg.popcount(),
                    repr(p.mean_tc), repr(p.mean_mc)])
    return buf.getvalue()


def points_from_csv(text: str) -> list[EvalPoint]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != POINTS_HEADER:
        raise ValidationError(
            f"point file must start with header {','.join(POINTS_HEADER)}"
        )
    points = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(POINTS_HEADER):
            raise ValidationError(f"point file row {i}: expected {len(POINTS_HEADER)} cells")
        model_id, bits, pop, tc, mc = row
        cfg = FeatureConfiguration.from_bits(bits)
        if cfg.popcount() != int(pop):
            raise ValidationError(f"point file row {i}: popcount {pop} != bits {bits}")
        points.append(EvalPoint(model_id, cfg, float(tc), float(mc)))
    return points
