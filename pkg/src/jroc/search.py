"""Quadratic approximations of the configuration lattice.

The backward searches start from the full configuration and greedily remove
one attribute at a time, evaluating every single-attribute removal at each
level; the descent criterion is mean MC, mean TC or their alpha-blend. That
visits exactly m(m+1)/2 + 1 configurations. The random baseline evaluates a
budget-matched uniform sample of the lattice instead.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .configuration import FeatureConfiguration
from .cost import CostContext, PerExampleContext
from .classifiers import TrainedModel
from .data import Dataset
from .errors import ValidationError
from .lattice import ConfigurationEvaluator, EvalPoint

CRITERIA = ("mc", "tc", "jc")

BMC, BTC, BJC, RND = "BMC", "BTC", "BJC", "RND"

_METHOD_BY_CRITERION = {"mc": BMC, "tc": BTC, "jc": BJC}


def backward_budget(m: int) -> int:
    """Configurations a backward search evaluates over m attributes."""
    return m * (m + 1) // 2 + 1


@dataclass(frozen=True)
class SearchTrace:
    """Everything a search touched: the cloud in evaluation order plus, for
    the backward methods, the greedy descent (full config down to empty)."""

    method: str
    visited: tuple[EvalPoint, ...]
    greedy_path: tuple[FeatureConfiguration, ...] = ()

    @property
    def budget(self) -> int:
        return len(self.visited)

    def to_json(self) -> str:
        payload = {
            "method": self.method,
            "budget": self.budget,
            "visited": [
                {
                    "model_id": p.model_id,
                    "cfg": p.cfg.bits(),
                    "mean_tc": p.mean_tc,
                    "mean_mc": p.mean_mc,
                }
                for p in self.visited
            ],
            "greedy_path": [cfg.bits() for cfg in self.greedy_path],
        }
        return json.dumps(payload, indent=2)


def _criterion_value(criterion: str, alpha: float | None, point: EvalPoint) -> float:
    if criterion == "mc":
        return point.mean_mc
    if criterion == "tc":
        return point.mean_tc
    return point.joint(alpha)


def backward_search(
    model: TrainedModel,
    d: Dataset,
    context: CostContext | PerExampleContext,
    criterion: str,
    alpha_for_jc: float | None = None,
    model_id: str | None = None,
    evaluator: ConfigurationEvaluator | None = None,
) -> SearchTrace:
    """Greedy backward descent under one criterion.

    At each level every single-attribute removal of the current configuration
    is evaluated (TC descent could shortcut to the most expensive attribute,
    but evaluating all removals records their MC at no extra budget). The
    best candidate by (criterion, mean_mc, mean_tc, bitmask) becomes current.
    """
    criterion = criterion.lower()
    if criterion not in CRITERIA:
        raise ValidationError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    if criterion == "jc":
        if alpha_for_jc is None:
            raise ValidationError("criterion 'jc' requires alpha_for_jc")
        if not 0.0 <= alpha_for_jc <= 1.0:
            raise ValidationError(f"alpha_for_jc must be in [0, 1], got {alpha_for_jc}")
    elif alpha_for_jc is not None:
        raise ValidationError(f"alpha_for_jc only applies to criterion 'jc'")
    if evaluator is None:
        evaluator = ConfigurationEvaluator(model, d, context, model_id)

    current = FeatureConfiguration.full(d.m)
    visited = [evaluator(current)]
    path = [current]
    while current.popcount() > 0:
        best_key = None
        best_cfg = None
        for j in current.indices():  # ascending attribute order
            cand = current.remove(j)
            point = evaluator(cand)
            visited.append(point)
            key = (
                _criterion_value(criterion, alpha_for_jc, point),
                point.mean_mc,
                point.mean_tc,
                cand.mask,
            )
            if best_key is None or key < best_key:
                best_key = key
                best_cfg = cand
        current = best_cfg
        path.append(current)
    return SearchTrace(_METHOD_BY_CRITERION[criterion], tuple(visited), tuple(path))


def random_search(
    model: TrainedModel,
    d: Dataset,
    context: CostContext | PerExampleContext,
    budget: int | None = None,
    seed: int | None = None,
    model_id: str | None = None,
    evaluator: ConfigurationEvaluator | None = None,
    configurations: list[FeatureConfiguration] | None = None,
) -> SearchTrace:
    """Budget-matched uniform sample of the lattice, without replacement.

    The empty configuration is always included (it anchors the zero-TC end of
    the cloud); the rest is drawn by seeded rejection sampling, which scales
    to attribute counts where the lattice itself is unenumerable. A caller
    may pin `configurations` to share one sample across models.
    """
    m = d.m
    if budget is None:
        budget = backward_budget(m)
    if configurations is None:
        configurations = sample_configurations(m, budget, seed)
    elif len(configurations) != budget:
        raise ValidationError(
            f"pinned sample has {len(configurations)} configurations, budget is {budget}"
        )
    if evaluator is None:
        evaluator = ConfigurationEvaluator(model, d, context, model_id)
    visited = tuple(evaluator(cfg) for cfg in configurations)
    return SearchTrace(RND, visited)


def sample_configurations(
    m: int, budget: int, seed: int | None
) -> list[FeatureConfiguration]:
    """The empty configuration plus budget-1 distinct uniform draws."""
    if budget < 1:
        raise ValidationError(f"budget must be >= 1, got {budget}")
    if m < 64 and budget > (1 << m):
        raise ValidationError(
            f"budget {budget} exceeds the {1 << m} configurations of an m={m} lattice"
        )
    rng = np.random.default_rng(seed)
    chosen: dict[int, None] = {0: None}
    while len(chosen) < budget:
        bits = rng.integers(0, 2, size=m)
        mask = 0
        for j in range(m):
            if bits[j]:
                mask |= 1 << j
        chosen.setdefault(mask, None)
    return [FeatureConfiguration(m, mask) for mask in chosen]
