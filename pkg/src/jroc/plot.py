"""Deterministic SVG rendering of point clouds, hulls and isometrics.

Hand-rolled XML: byte-identical output for identical input, no plotting
dependency. TC on the x axis, MC on the y axis, both from zero with a 5%
margin; one glyph/colour pair per model id; hull polylines; equal-JC
isometric lines through the selected best point for each requested alpha.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .hull import Hull, select_best

WIDTH, HEIGHT = 720, 520
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 168, 20, 48

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#17becf", "#7f7f7f")
GLYPHS = ("circle", "square", "diamond", "triangle")


def _fmt(v: float) -> str:
    # fixed decimals keep the byte stream stable across platforms
    return f"{v:.3f}".rstrip("0").rstrip(".")


def _fmt_tick(v: float) -> str:
    return f"{v:.4g}"


@dataclass
class _Frame:
    tc_max: float
    mc_max: float

    @property
    def plot_w(self) -> float:
        return WIDTH - MARGIN_L - MARGIN_R

    @property
    def plot_h(self) -> float:
        return HEIGHT - MARGIN_T - MARGIN_B

    def x(self, tc: float) -> float:
        return MARGIN_L + (tc / self.tc_max) * self.plot_w

    def y(self, mc: float) -> float:
        return MARGIN_T + (1.0 - mc / self.mc_max) * self.plot_h


def _glyph(kind: str, x: float, y: float, color: str) -> str:
    s = 4.0
    if kind == "circle":
        return f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(s)}" fill="{color}"/>'
    if kind == "square":
        return (
            f'<rect x="{_fmt(x - s)}" y="{_fmt(y - s)}" width="{_fmt(2 * s)}"'
            f' height="{_fmt(2 * s)}" fill="{color}"/>'
        )
    if kind == "diamond":
        pts = f"{_fmt(x)},{_fmt(y - s)} {_fmt(x + s)},{_fmt(y)} {_fmt(x)},{_fmt(y + s)} {_fmt(x - s)},{_fmt(y)}"
        return f'<polygon points="{pts}" fill="{color}"/>'
    pts = f"{_fmt(x)},{_fmt(y - s)} {_fmt(x + s)},{_fmt(y + s)} {_fmt(x - s)},{_fmt(y + s)}"
    return f'<polygon points="{pts}" fill="{color}"/>'


def _clip_line_to_box(x0, y0, slope, xmin, xmax, ymin, ymax):
    """Segment of the line through (x0, y0) with `slope` inside the box;
    slope -inf means vertical. Returns None when it misses the box."""
    if math.isinf(slope):
        if not xmin <= x0 <= xmax:
            return None
        return (x0, ymin, x0, ymax)
    candidates = []
    for x in (xmin, xmax):
        y = y0 + slope * (x - x0)
        if ymin - 1e-9 <= y <= ymax + 1e-9:
            candidates.append((x, min(max(y, ymin), ymax)))
    if slope != 0.0:
        for y in (ymin, ymax):
            x = x0 + (y - y0) / slope
            if xmin - 1e-9 <= x <= xmax + 1e-9:
                candidates.append((min(max(x, xmin), xmax), y))
    uniq = sorted(set(candidates))
    if len(uniq) < 2:
        return None
    (xa, ya), (xb, yb) = uniq[0], uniq[-1]
    return (xa, ya, xb, yb)


def render_plot(
    clouds: dict,
    hulls: dict | None = None,
    isometric_alphas=(),
    out: str | None = None,
) -> str:
    """Render model clouds to SVG text (optionally writing it to `out`).

    clouds: model_id -> sequence of EvalPoints; hulls: model_id -> Hull.
    Each isometric alpha draws the equal-JC line through the best pooled
    point at that alpha (vertical at alpha = 0).
    """
    if not clouds or all(len(pts) == 0 for pts in clouds.values()):
        raise ValidationError("nothing to plot: clouds are empty")
    hulls = hulls or {}
    for mid, h in hulls.items():
        if not isinstance(h, Hull):
            raise ValidationError(f"hull for {mid!r} is not a Hull")
    all_points = [p for pts in clouds.values() for p in pts]
    tc_max = max((p.mean_tc for p in all_points), default=0.0)
    mc_max = max((p.mean_mc for p in all_points), default=0.0)
    frame = _Frame(tc_max=1.05 * tc_max or 1.0, mc_max=1.05 * mc_max or 1.0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    x0, y0 = frame.x(0.0), frame.y(0.0)
    x1, y1 = frame.x(frame.tc_max), frame.y(frame.mc_max)
    parts.append(
        f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" '
        f'height="{_fmt(y0 - y1)}" fill="none" stroke="#333" stroke-width="1"/>'
    )
    for i in range(6):  # axis ticks
        f = i / 5.0
        tx = frame.x(f * frame.tc_max)
        parts.append(
            f'<line x1="{_fmt(tx)}" y1="{_fmt(y0)}" x2="{_fmt(tx)}" y2="{_fmt(y0 + 4)}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{_fmt(tx)}" y="{_fmt(y0 + 18)}" font-size="11" text-anchor="middle" '
            f'font-family="sans-serif">{_fmt_tick(f * frame.tc_max)}</text>'
        )
        ty = frame.y(f * frame.mc_max)
        parts.append(
            f'<line x1="{_fmt(x0 - 4)}" y1="{_fmt(ty)}" x2="{_fmt(x0)}" y2="{_fmt(ty)}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{_fmt(x0 - 8)}" y="{_fmt(ty + 4)}" font-size="11" text-anchor="end" '
            f'font-family="sans-serif">{_fmt_tick(f * frame.mc_max)}</text>'
        )
    parts.append(
        f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y0 + 36)}" font-size="13" '
        f'text-anchor="middle" font-family="sans-serif">TC</text>'
    )
    parts.append(
        f'<text x="{_fmt(x0 - 44)}" y="{_fmt((y0 + y1) / 2)}" font-size="13" '
        f'text-anchor="middle" font-family="sans-serif" '
        f'transform="rotate(-90 {_fmt(x0 - 44)} {_fmt((y0 + y1) / 2)})">MC</text>'
    )

    model_ids = sorted(clouds)
    style = {
        mid: (PALETTE[i % len(PALETTE)], GLYPHS[i % len(GLYPHS)])
        for i, mid in enumerate(model_ids)
    }
    # isometrics under the data
    for alpha in isometric_alphas:
        if not 0.0 <= alpha <= 1.0:
            raise ValidationError(f"isometric alpha {alpha} outside [0, 1]")
        best = select_best(all_points, alpha)
        px, py = frame.x(best.mean_tc), frame.y(best.mean_mc)
        if alpha == 0.0:
            seg = (px, y1, px, y0)
        else:
            # screen-space slope of the equal-JC line -(1-alpha)/alpha
            sslope = ((1.0 - alpha) / alpha) * (frame.plot_h / frame.mc_max) * (
                frame.tc_max / frame.plot_w
            )
            seg = _clip_line_to_box(px, py, sslope, x0, x1, y1, y0)
        if seg is not None:
            xa, ya, xb, yb = seg
            parts.append(
                f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}" '
                f'stroke="#aaaaaa" stroke-width="1" stroke-dasharray="5,4"/>'
            )
            lx = min(xa, xb) + 6
            ly = max(min(ya, yb) + 14, y1 + 14)
            parts.append(
                f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="10" fill="#888888" '
                f'font-family="sans-serif">a={_fmt_tick(alpha)}</text>'
            )
    for mid in model_ids:
        color, _ = style[mid]
        h = hulls.get(mid)
        if h is not None and len(h) >= 2:
            pts = " ".join(
                f"{_fmt(frame.x(v.mean_tc))},{_fmt(frame.y(v.mean_mc))}"
                for v in h.vertices
            )
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
    for mid in model_ids:
        color, glyph = style[mid]
        for p in clouds[mid]:
            parts.append(_glyph(glyph, frame.x(p.mean_tc), frame.y(p.mean_mc), color))
    # legend
    ly = MARGIN_T + 12
    for mid in model_ids:
        color, glyph = style[mid]
        lx = WIDTH - MARGIN_R + 16
        parts.append(_glyph(glyph, lx, ly - 4, color))
        parts.append(
            f'<text x="{_fmt(lx + 10)}" y="{_fmt(ly)}" font-size="11" '
            f'font-family="sans-serif">{_escape(mid)}</text>'
        )
        ly += 18
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return svg


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
