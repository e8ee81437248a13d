"""Dependency-free SVG line charts for sweep records.

Fixed 800x600 viewport, data sampled at the sweep points only (no
smoothing), deterministic text output so files are diffable.
"""
from __future__ import annotations

import math

from .bounds import tournament_lower_bound
from .errors import FasboundError, MixedSweepError
from .experiments import ExperimentRecord

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 25, 25, 55

OVERLAY_KEYS = ("lower", "heuristic", "half_m", "tournament")

_SERIES = {
    "empirical": ("mean minimum feedback", "#000000"),
    "lower": ("lower bound", "#e07b00"),
    "heuristic": ("heuristic estimate", "#cc0000"),
    "half_m": ("m/2", "#808080"),
    "tournament": ("tournament bound", "#2060c0"),
}


def _value(record: ExperimentRecord, key: str) -> float:
    if key == "empirical":
        return record.ystar_mean
    if key == "lower":
        return record.lower_bound
    if key == "heuristic":
        return record.heuristic_est
    if key == "half_m":
        return record.half_m
    return tournament_lower_bound(record.n)


def _sweep_axis(records: list[ExperimentRecord]) -> str:
    ns = {r.n for r in records}
    ps = {r.p for r in records}
    if len(records) == 1:
        return "n"
    if len(ns) > 1 and len(ps) <= 1:
        return "n"
    if len(ns) == 1 and len(ps) > 1 and None not in ps:
        return "p"
    raise MixedSweepError("records do not share a single sweep variable")


def _ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = 10 * mag
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 else t)
        t += step
    return ticks


def _fmt_tick(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:g}"


def emit_plot(records: list[ExperimentRecord], path, overlays=("lower", "heuristic", "half_m")) -> None:
    """Write an SVG chart of the empirical curve plus the requested overlays."""
    if not records:
        raise FasboundError("no records to plot")
    for key in overlays:
        if key not in OVERLAY_KEYS:
            raise FasboundError(f"unknown overlay {key!r}; choose from {OVERLAY_KEYS}")
    axis = _sweep_axis(records)
    recs = sorted(records, key=lambda r: r.n if axis == "n" else r.p)
    series = ["empirical"] + [k for k in OVERLAY_KEYS if k in overlays]

    xs = [float(r.n) if axis == "n" else float(r.p) for r in recs]
    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    ys_all = [
        _value(r, key)
        for key in series
        for r in recs
        if not math.isnan(_value(r, key))
    ]
    if not ys_all:
        raise FasboundError("no finite values to plot")
    y_lo, y_hi = min(ys_all + [0.0]), max(ys_all)
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    px_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    px_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * px_w

    def sy(y: float) -> float:
        return MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * px_h

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">'
    )
    out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')
    # grid and ticks
    for t in _ticks(x_lo, x_hi):
        x = sx(t)
        out.append(
            f'<line x1="{x:.2f}" y1="{MARGIN_TOP}" x2="{x:.2f}" '
            f'y2="{HEIGHT - MARGIN_BOTTOM}" stroke="#e0e0e0"/>'
        )
        out.append(
            f'<text x="{x:.2f}" y="{HEIGHT - MARGIN_BOTTOM + 18}" '
            f'text-anchor="middle">{_fmt_tick(t)}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        y = sy(t)
        out.append(
            f'<line x1="{MARGIN_LEFT}" y1="{y:.2f}" x2="{WIDTH - MARGIN_RIGHT}" '
            f'y2="{y:.2f}" stroke="#e0e0e0"/>'
        )
        out.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" '
            f'text-anchor="end">{_fmt_tick(t)}</text>'
        )
    out.append(
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{px_w}" height="{px_h}" '
        f'fill="none" stroke="#000000"/>'
    )
    # axis labels
    out.append(
        f'<text x="{MARGIN_LEFT + px_w / 2:.2f}" y="{HEIGHT - 12}" '
        f'text-anchor="middle">{axis}</text>'
    )
    out.append(
        f'<text x="16" y="{MARGIN_TOP + px_h / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN_TOP + px_h / 2:.2f})">arcs</text>'
    )
    # series
    for key in series:
        label, color = _SERIES[key]
        pts = [
            (sx(x), sy(_value(r, key)))
            for x, r in zip(xs, recs)
            if not math.isnan(_value(r, key))
        ]
        if not pts:
            continue
        if len(pts) > 1:
            coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for x, y in pts:
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
    # legend
    lx, ly = MARGIN_LEFT + 12, MARGIN_TOP + 10
    out.append(
        f'<rect x="{lx - 6}" y="{ly - 4}" width="170" height="{16 * len(series) + 8}" '
        f'fill="#ffffff" stroke="#c0c0c0"/>'
    )
    for i, key in enumerate(series):
        label, color = _SERIES[key]
        y = ly + 16 * i + 8
        out.append(f'<line x1="{lx}" y1="{y - 4}" x2="{lx + 22}" y2="{y - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 28}" y="{y}">{label}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(out) + "\n")
