"""Operating contexts: misclassification costs, test costs and their blend.

A context is a test-cost vector T (one entry per attribute, charged only for
attributes that are acquired and non-null), a misclassification cost matrix M
(rows = predicted class, columns = actual class, zero diagonal) and the
trade-off weight alpha. The joint cost of a deployment is

    JC = alpha * MC + (1 - alpha) * TC.

Contexts are normalized so that sum(T) = 1 and sum(M) = c^2, which calibrates
a uniformly random predictor on balanced classes to an expected MC of 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .configuration import FeatureConfiguration
from .data import Instance
from .errors import ValidationError


def _frozen_array(a, dtype=np.float64, ndim=1) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    if arr.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CostContext:
    """One operating context. T: per-attribute test costs; M: c x c
    misclassification costs with zero diagonal; alpha in [0, 1]."""

    T: np.ndarray
    M: np.ndarray
    alpha: float = 0.5

    def __post_init__(self) -> None:
        object.__setattr__(self, "T", _frozen_array(self.T, ndim=1))
        M = np.array(self.M, dtype=np.float64)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValidationError(f"M must be square, got shape {M.shape}")
        if M.shape[0] < 2:
            raise ValidationError("M needs at least two classes")
        if np.any(np.diagonal(M) != 0.0):
            raise ValidationError("M must have a zero diagonal")
        if np.any(M < 0) or np.any(self.T < 0):
            raise ValidationError("costs must be non-negative")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)
        if not 0.0 <= self.alpha <= 1.0:
            raise ValidationError(f"alpha must be in [0, 1], got {self.alpha}")

    @property
    def m(self) -> int:
        return int(self.T.shape[0])

    @property
    def c(self) -> int:
        return int(self.M.shape[0])


class PerExampleContext:
    """Maps an instance index to its operating context.

    The common case is one global context for every instance; that constant
    shape is kept explicit so evaluation can take a vectorized fast path.
    """

    def __init__(self, supplier, constant_context: CostContext | None = None) -> None:
        self._supplier = supplier
        self.constant_context = constant_context

    @classmethod
    def constant(cls, ctx: CostContext) -> "PerExampleContext":
        return cls(lambda i: ctx, constant_context=ctx)

    @property
    def is_constant(self) -> bool:
        return self.constant_context is not None

    def context_for(self, i: int) -> CostContext:
        return self._supplier(i)

    def __getitem__(self, i: int) -> CostContext:
        return self._supplier(i)


def as_per_example(context: CostContext | PerExampleContext) -> PerExampleContext:
    if isinstance(context, PerExampleContext):
        return context
    if isinstance(context, CostContext):
        return PerExampleContext.constant(context)
    raise ValidationError(f"not a context: {type(context).__name__}")


def misclassification_cost(ctx: CostContext, predicted: int, actual: int) -> float:
    """M[predicted, actual]; zero when they agree."""
    c = ctx.c
    if not (0 <= predicted < c and 0 <= actual < c):
        raise ValidationError(
            f"class index out of range: predicted={predicted}, actual={actual}, c={c}"
        )
    return float(ctx.M[predicted, actual])


def test_cost(ctx: CostContext, x: Instance, cfg: FeatureConfiguration) -> float:
    """Sum of T[j] over attributes that are acquired (in cfg) and non-null.

    Null attributes are free: a masked or missing value was never measured.
    """
    if cfg.width != len(x.values) or cfg.width != ctx.m:
        raise ValidationError(
            f"width mismatch: cfg={cfg.width}, instance={len(x.values)}, T={ctx.m}"
        )
    total = 0.0
    for j in cfg:
        if x.values[j] is not None:
            total += float(ctx.T[j])
    return total


def joint_cost(ctx: CostContext, mc: float, tc: float) -> float:
    """alpha-weighted blend; callers guarantee mc, tc >= 0."""
    return ctx.alpha * mc + (1.0 - ctx.alpha) * tc


def blend(alpha: float, mc, tc):
    """joint cost as a free function of alpha (arrays welcome)."""
    return alpha * mc + (1.0 - alpha) * tc


def normalize_context(ctx: CostContext) -> CostContext:
    """Rescale so sum(T) = 1 and sum(M) = c^2; alpha is untouched."""
    t_sum = float(ctx.T.sum())
    m_sum = float(ctx.M.sum())
    if t_sum <= 0 or m_sum <= 0:
        raise ValidationError("cannot normalize a context with zero total cost")
    return CostContext(ctx.T * (1.0 / t_sum), ctx.M * (ctx.c**2 / m_sum), ctx.alpha)


def uniform_context(m: int, c: int, alpha: float = 0.5) -> CostContext:
    """The reference context: T = (1/m, ...), off-diagonal M = c/(c-1).

    Already normalized by construction (sum T = 1, sum M = c^2); the value is
    still routed through normalize_context so generated contexts are bitwise
    comparable with it.
    """
    if m < 1 or c < 2:
        raise ValidationError(f"need m >= 1 and c >= 2, got m={m}, c={c}")
    T = np.full(m, 1.0 / m)
    M = np.full((c, c), c / (c - 1.0))
    np.fill_diagonal(M, 0.0)
    return normalize_context(CostContext(T, M, alpha))


def random_context(
    m: int, c: int, beta: float = 10.0, seed: int | None = None, alpha: float = 0.5
) -> CostContext:
    """Perturb the uniform context multiplicatively and renormalize.

    Every cost entry e becomes e * exp(beta * (u - 0.5)) with u ~ U(0, 1), so
    beta = 0 reproduces the uniform context exactly and beta = 10 spreads
    entries over about four orders of magnitude. The zero diagonal survives
    both the perturbation and the rescaling.
    """
    if beta < 0:
        raise ValidationError(f"beta must be >= 0, got {beta}")
    if m < 1 or c < 2:
        raise ValidationError(f"need m >= 1 and c >= 2, got m={m}, c={c}")
    rng = np.random.default_rng(seed)
    T = np.full(m, 1.0 / m) * np.exp(beta * (rng.random(m) - 0.5))
    M = np.full((c, c), c / (c - 1.0)) * np.exp(beta * (rng.random((c, c)) - 0.5))
    np.fill_diagonal(M, 0.0)
    return normalize_context(CostContext(T, M, alpha))


def expected_random_mc(ctx: CostContext, class_probs=None) -> float:
    """Expected MC of a uniformly random predictor.

    class_probs defaults to balanced classes; under the uniform context this
    evaluates to exactly 1, which is the discard threshold for models: any
    point with JC above it loses to random guessing.
    """
    c = ctx.c
    if class_probs is None:
        p = np.full(c, 1.0 / c)
    else:
        p = np.array(class_probs, dtype=np.float64)
        if p.shape != (c,):
            raise ValidationError(f"class_probs must have shape ({c},)")
    pred = np.full(c, 1.0 / c)
    return float(pred @ ctx.M @ p)


def context_to_json(ctx: CostContext, normalized: bool = True) -> str:
    payload = {
        "alpha": ctx.alpha,
        "test_costs": ctx.T.tolist(),
        "mc_matrix": ctx.M.tolist(),
        "normalized": normalized,
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def context_from_json(
    text: str, normalize: bool = True
) -> CostContext:
    """Parse a context file.

    Files carry a `normalized` flag describing their payload; unless the
    caller opts out, un-normalized payloads are normalized on load.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"context file is not valid JSON: {exc}") from exc
    try:
        ctx = CostContext(
            np.array(payload["test_costs"], dtype=np.float64),
            np.array(payload["mc_matrix"], dtype=np.float64),
            float(payload.get("alpha", 0.5)),
        )
    except KeyError as exc:
        raise ValidationError(f"context file missing key {exc}") from exc
    already = bool(payload.get("normalized", False))
    if normalize and not already:
        ctx = normalize_context(ctx)
    return ctx
