"""Geometry of the (TC, MC) plane.

With JC = alpha*MC + (1-alpha)*TC, the isometrics (equal-JC lines) have slope
-(1-alpha)/alpha, so the points that minimize JC for some alpha in [0, 1] are
exactly the vertices of the lower-left convex hull of the cloud. Sweeping
alpha across the hull partitions [0, 1] into dominance regions, one per
vertex.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ValidationError
from .lattice import EvalPoint


def isometric_slope(alpha: float) -> float:
    """Slope of the equal-JC line at alpha; vertical at alpha = 0."""
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha must be in [0, 1], got {alpha}")
    if alpha == 0.0:
        return float("-inf")
    return -(1.0 - alpha) / alpha


@dataclass(frozen=True)
class Hull:
    """Lower-left hull: strictly increasing TC, strictly decreasing MC,
    strictly increasing (negative) segment slopes."""

    vertices: tuple[EvalPoint, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def breakpoints(self) -> tuple[float, ...]:
        """Alphas where the optimal vertex hands over to the next one.

        Between consecutive vertices i and i+1 the handover happens at
        alpha = dTC / (dTC + dMC); convexity makes the sequence increasing.
        """
        out = []
        for a, b in zip(self.vertices[:-1], self.vertices[1:]):
            dt = b.mean_tc - a.mean_tc
            dm = a.mean_mc - b.mean_mc
            out.append(dt / (dt + dm))
        return tuple(out)

    def to_json(self) -> str:
        regions = dominance_regions([list(self.vertices)])
        payload = {
            "vertices": [_point_dict(p) for p in self.vertices],
            "breakpoints": list(self.breakpoints()),
            "regions": [
                {
                    "alpha_lo": r.alpha_lo,
                    "alpha_hi": r.alpha_hi,
                    "best": _point_dict(r.best),
                }
                for r in regions
            ],
        }
        return json.dumps(payload, indent=2)


@dataclass(frozen=True)
class OperatingRegion:
    """One cell of the alpha partition and the point that wins it."""

    alpha_lo: float
    alpha_hi: float
    best: EvalPoint


def _point_dict(p: EvalPoint) -> dict:
    return {
        "model_id": p.model_id,
        "cfg": p.cfg.bits(),
        "mean_tc": p.mean_tc,
        "mean_mc": p.mean_mc,
    }


def _point_order(p: EvalPoint):
    # deterministic identity order used to collapse coincident points
    return (p.model_id, p.cfg.width, p.cfg.mask)


def _cross(o: EvalPoint, a: EvalPoint, b: EvalPoint) -> float:
    return (a.mean_tc - o.mean_tc) * (b.mean_mc - o.mean_mc) - (
        a.mean_mc - o.mean_mc
    ) * (b.mean_tc - o.mean_tc)


def lower_hull(points) -> Hull:
    """Monotone-chain construction of the lower-left boundary.

    Points sharing a TC keep only the lowest MC; the Pareto staircase of what
    remains is convexified, dropping collinear interior points, so every
    vertex minimizes JC for some alpha and every such minimizer survives.
    """
    points = list(points)
    if not points:
        raise ValidationError("cannot build a hull from zero points")
    best_at_tc: dict[float, EvalPoint] = {}
    for p in sorted(points, key=lambda q: (q.mean_tc, q.mean_mc, _point_order(q))):
        cur = best_at_tc.get(p.mean_tc)
        if cur is None:
            best_at_tc[p.mean_tc] = p
    ordered = sorted(best_at_tc.values(), key=lambda q: q.mean_tc)
    stairs = []
    best_mc = float("inf")
    for p in ordered:
        if p.mean_mc < best_mc:
            stairs.append(p)
            best_mc = p.mean_mc
    chain: list[EvalPoint] = []
    for p in stairs:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0.0:
            chain.pop()
        chain.append(p)
    return Hull(tuple(chain))


def select_best(points, alpha: float) -> EvalPoint:
    """The JC-minimal point at `alpha`.

    Ties resolve toward lower TC, then lower MC (which makes alpha = 0 a
    lexicographic (TC, MC) minimization), then lower configuration bitmask,
    then model id.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha must be in [0, 1], got {alpha}")
    points = list(points)
    if not points:
        raise ValidationError("cannot select from zero points")
    return min(
        points,
        key=lambda p: (
            p.joint(alpha),
            p.mean_tc,
            p.mean_mc,
            p.cfg.mask,
            p.model_id,
        ),
    )


def dominance_regions(clouds) -> list[OperatingRegion]:
    """Partition alpha in [0, 1] by the pooled-hull winner.

    `clouds` is a sequence of point sequences (typically one per model); the
    pooled lower hull decides every region, so where two models' boundaries
    coincide the collapse order (lexicographically smaller model id) decides.
    """
    pooled = [p for cloud in clouds for p in cloud]
    hull = lower_hull(pooled)
    cuts = [0.0, *hull.breakpoints(), 1.0]
    return [
        OperatingRegion(lo, hi, vertex)
        for lo, hi, vertex in zip(cuts[:-1], cuts[1:], hull.vertices)
    ]
