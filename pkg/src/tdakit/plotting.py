"""Standalone SVG renderings of diagrams, barcodes, and landscapes.

The output is deterministic: a fixed 640 x 640 canvas, a fixed palette keyed
by homology degree (or landscape level), and coordinates rounded to two
decimals, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import math

from .persistence import PersistenceDiagram
from .representations import Landscape

CANVAS = 640
MARGIN = 70
PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
)


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _open_svg(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f"<title>{title}</title>",
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>',
    ]


def _axes(lines: list[str], x_label: str, y_label: str):
    x0, y0 = MARGIN, CANVAS - MARGIN
    x1, y1 = CANVAS - MARGIN, MARGIN
    lines.append(
        f'<path d="M {x0} {y1} L {x0} {y0} L {x1} {y0}" fill="none" '
        'stroke="#333333" stroke-width="1.5"/>'
    )
    lines.append(
        f'<text x="{(x0 + x1) // 2}" y="{CANVAS - 18}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" fill="#333333">{x_label}</text>'
    )
    lines.append(
        f'<text x="20" y="{(y0 + y1) // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" fill="#333333" '
        f'transform="rotate(-90 20 {(y0 + y1) // 2})">{y_label}</text>'
    )


def _tick_labels(lines: list[str], lo: float, hi: float):
    x0, y0 = MARGIN, CANVAS - MARGIN
    x1, y1 = CANVAS - MARGIN, MARGIN
    for value, x, anchor in ((lo, x0, "start"), (hi, x1, "end")):
        lines.append(
            f'<text x="{x}" y="{y0 + 22}" text-anchor="{anchor}" '
            f'font-family="sans-serif" font-size="12" fill="#666666">{value:.3g}</text>'
        )
    for value, y in ((lo, y0), (hi, y1)):
        lines.append(
            f'<text x="{x0 - 8}" y="{y + 4}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12" fill="#666666">{value:.3g}</text>'
        )


def _value_range(values: list[float]) -> tuple[float, float]:
    if not values:
        return 0.0, 1.0
    lo = min(values)
    hi = max(values)
    if hi <= lo:
        pad = 1.0 if lo == 0.0 else abs(lo) * 0.5
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def plot_diagram(diagram: PersistenceDiagram) -> str:
    """Scatter of (birth, death) with the diagonal; essential points sit on
    the top edge as open markers."""
    finite = [v for p in diagram.points for v in (p.birth, p.death) if math.isfinite(v)]
    lo, hi = _value_range(finite)
    span = hi - lo
    inner = CANVAS - 2 * MARGIN

    def sx(v: float) -> float:
        return MARGIN + (v - lo) / span * inner

    def sy(v: float) -> float:
        return CANVAS - MARGIN - (v - lo) / span * inner

    lines = _open_svg("persistence diagram")
    _axes(lines, "birth", "death")
    _tick_labels(lines, lo, hi)
    lines.append(
        f'<line x1="{_fmt(sx(lo))}" y1="{_fmt(sy(lo))}" x2="{_fmt(sx(hi))}" y2="{_fmt(sy(hi))}" '
        'stroke="#999999" stroke-width="1" stroke-dasharray="5 4"/>'
    )
    seen_dims = []
    for p in diagram.points:
        color = PALETTE[p.dimension % len(PALETTE)]
        if p.dimension not in seen_dims:
            seen_dims.append(p.dimension)
        if math.isfinite(p.death):
            lines.append(
                f'<circle cx="{_fmt(sx(p.birth))}" cy="{_fmt(sy(p.death))}" r="4" '
                f'fill="{color}" fill-opacity="0.75"/>'
            )
        else:
            lines.append(
                f'<circle cx="{_fmt(sx(p.birth))}" cy="{MARGIN}" r="5" '
                f'fill="none" stroke="{color}" stroke-width="2"/>'
            )
    for slot, dim in enumerate(sorted(seen_dims)):
        color = PALETTE[dim % len(PALETTE)]
        x = MARGIN + 10 + 60 * slot
        lines.append(f'<circle cx="{x}" cy="{MARGIN - 26}" r="5" fill="{color}"/>')
        lines.append(
            f'<text x="{x + 10}" y="{MARGIN - 21}" font-family="sans-serif" '
            f'font-size="13" fill="#333333">H{dim}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def plot_barcode(diagram: PersistenceDiagram) -> str:
    """One horizontal bar per point, grouped by degree; essential bars run to
    the right edge."""
    finite = [v for p in diagram.points for v in (p.birth, p.death) if math.isfinite(v)]
    lo, hi = _value_range(finite)
    span = hi - lo
    inner = CANVAS - 2 * MARGIN

    def sx(v: float) -> float:
        return MARGIN + (v - lo) / span * inner

    lines = _open_svg("barcode")
    _axes(lines, "filtration value", "")
    _tick_labels(lines, lo, hi)
    n = len(diagram.points)
    if n:
        slot = min(18.0, (CANVAS - 2 * MARGIN) / n)
        height = max(1.5, slot * 0.6)
        for i, p in enumerate(diagram.points):
            color = PALETTE[p.dimension % len(PALETTE)]
            y = MARGIN + i * slot + (slot - height) / 2
            x_start = sx(p.birth)
            x_end = CANVAS - MARGIN if not math.isfinite(p.death) else sx(p.death)
            width = max(x_end - x_start, 0.75)
            lines.append(
                f'<rect x="{_fmt(x_start)}" y="{_fmt(y)}" width="{_fmt(width)}" '
                f'height="{_fmt(height)}" fill="{color}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def plot_landscape(landscape: Landscape) -> str:
    """Polyline per level, colored by level."""
    xs_all: list[float] = []
    ys_all: list[float] = []
    for level in landscape.levels:
        xs_all.extend(level[:, 0].tolist())
        ys_all.extend(level[:, 1].tolist())
    lo, hi = _value_range(xs_all)
    y_lo, y_hi = 0.0, max(ys_all) if ys_all else 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    span = hi - lo
    inner = CANVAS - 2 * MARGIN

    def sx(v: float) -> float:
        return MARGIN + (v - lo) / span * inner

    def sy(v: float) -> float:
        return CANVAS - MARGIN - (v - y_lo) / (y_hi - y_lo) * inner

    lines = _open_svg("persistence landscape")
    _axes(lines, "t", "value")
    _tick_labels(lines, lo, hi)
    for k, level in enumerate(landscape.levels, start=1):
        color = PALETTE[(k - 1) % len(PALETTE)]
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in level)
        lines.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(obj) -> str:
    if isinstance(obj, PersistenceDiagram):
        return plot_diagram(obj)
    if isinstance(obj, Landscape):
        return plot_landscape(obj)
    raise TypeError(f"cannot plot {type(obj).__name__}")
