"""Deterministic SVG line chart of a :class:`MetricTrace`."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from .trace import MetricTrace

WIDTH, HEIGHT = 720, 360
LEFT, RIGHT, TOP, BOTTOM = 50, 160, 20, 40
PLOT_W = WIDTH - LEFT - RIGHT
PLOT_H = HEIGHT - TOP - BOTTOM
INTERSECTION = "intersection"

_PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


def x_of(index: int, n_points: int) -> float:
    if n_points <= 1:
        return LEFT + PLOT_W / 2
    return LEFT + PLOT_W * index / (n_points - 1)


def y_of(value: Fraction | float) -> float:
    return TOP + PLOT_H * (1 - float(value))


def value_of_y(y: float) -> float:
    """Inverse of :func:`y_of`, for reading coordinates back."""
    return 1 - (y - TOP) / PLOT_H


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _series(trace: MetricTrace) -> list[tuple[str, list[Optional[Fraction]]]]:
    names: list[str] = []
    for p in trace.points:
        for n in p.coverage:
            if n not in names:
                names.append(n)
    out = [(n, [p.coverage.get(n) for p in trace.points]) for n in names]
    out.append((INTERSECTION, [p.intersection_ratio for p in trace.points]))
    return out


def _runs(values: list[Optional[Fraction]]) -> list[list[int]]:
    runs: list[list[int]] = []
    cur: list[int] = []
    for i, v in enumerate(values):
        if v is None:
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.append(i)
    if cur:
        runs.append(cur)
    return runs


def render_plot(trace: MetricTrace) -> bytes:
    if not trace.points:
        raise ValueError("cannot plot an empty trace")
    n = len(trace.points)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(trace.method)}: coverage per variable and slice intersection</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<g class="axes" stroke="black" stroke-width="1">'
        f'<line x1="{LEFT}" y1="{TOP + PLOT_H}" x2="{LEFT + PLOT_W}" y2="{TOP + PLOT_H}"/>'
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + PLOT_H}"/></g>',
    ]
    for tick in ("0", "0.5", "1"):
        y = _fmt(y_of(Fraction(tick)))
        out.append(f'<text x="{LEFT - 8}" y="{y}" font-size="10" text-anchor="end">{tick}</text>')
    out.append(f'<text x="{LEFT}" y="{HEIGHT - 10}" font-size="10">0</text>')
    out.append(f'<text x="{LEFT + PLOT_W}" y="{HEIGHT - 10}" font-size="10" '
               f'text-anchor="end">{n - 1}</text>')

    for k, (name, values) in enumerate(_series(trace)):
        color = "black" if name == INTERSECTION else _PALETTE[k % len(_PALETTE)]
        dash = ' stroke-dasharray="4,3"' if name == INTERSECTION else ""
        attr = quoteattr(name)
        out.append(f"<g data-series={attr}>")
        for run in _runs(values):
            if len(run) >= 2:
                pts = " ".join(f"{_fmt(x_of(i, n))},{_fmt(y_of(values[i]))}" for i in run)
                out.append(f'<polyline data-series={attr} fill="none" stroke="{color}" '
                           f'stroke-width="1.5"{dash} points="{pts}"/>')
            for i in run:
                out.append(f'<circle data-series={attr} data-index="{i}" cx="{_fmt(x_of(i, n))}" '
                           f'cy="{_fmt(y_of(values[i]))}" r="2.5" fill="{color}"/>')
        ly = TOP + 14 * k + 10
        lx = LEFT + PLOT_W + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" '
                   f'stroke-width="1.5"{dash}/>')
        out.append(f'<text class="legend" x="{lx + 26}" y="{ly + 4}" font-size="11">'
                   f"{escape(name)}</text>")
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
