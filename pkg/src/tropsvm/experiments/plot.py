"""Result tables and a small deterministic SVG line plot with error bars."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

PALETTE = ("#c0392b", "#222222", "#2471a3", "#1e8449", "#7d3c98", "#b9770e")
WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 60


@dataclass
class Table:
    columns: tuple
    rows: list = field(default_factory=list)

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, table has {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        k = self.columns.index(name)
        return [r[k] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_cell(v) for v in r])
        return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


@dataclass(frozen=True)
class Series:
    y: str
    err: str | None = None
    label: str | None = None
    dashed: bool = False


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list:
    span = hi - lo
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _padded(lo: float, hi: float) -> tuple:
    if hi - lo <= 1e-12 * max(1.0, abs(lo)):
        pad = 0.5 if lo == 0 else 0.1 * abs(lo)
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _f(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    return format(v, ".6g")


def render_svg(table: Table, x: str, series, title: str = "", xlabel: str | None = None,
               ylabel: str = "", logx: bool = False) -> str:
    """Render ``series`` against column ``x`` as a standalone SVG document."""
    if not table.rows:
        raise ValueError("cannot plot an empty table")
    series = [s if isinstance(s, Series) else Series(s) for s in series]
    if not series:
        raise ValueError("no series to plot")
    xs = [float(v) for v in table.column(x)]
    if logx:
        if min(xs) <= 0:
            raise ValueError("log axis needs positive x values")
        xs = [math.log10(v) for v in xs]
    ys, lows, highs = [], [], []
    for s in series:
        y = [float(v) for v in table.column(s.y)]
        e = [float(v) for v in table.column(s.err)] if s.err else [0.0] * len(y)
        ys.append((y, e))
        lows += [a - b for a, b in zip(y, e)]
        highs += [a + b for a, b in zip(y, e)]
    x0, x1 = _padded(min(xs), max(xs))
    y0, y1 = _padded(min(lows), max(highs))
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(v):
        return LEFT + (v - x0) / (x1 - x0) * pw

    def py(v):
        return TOP + (y1 - v) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
           f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="14">{_esc(title)}</text>')
    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for t in _nice_ticks(x0, x1):
        X = px(t)
        lab = _label(10 ** t) if logx else _label(t)
        out.append(f'<line x1="{_f(X)}" y1="{TOP + ph}" x2="{_f(X)}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{_f(X)}" y="{TOP + ph + 18}" text-anchor="middle">{lab}</text>')
    for t in _nice_ticks(y0, y1):
        Y = py(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{_f(Y)}" x2="{LEFT}" y2="{_f(Y)}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{_f(Y + 4)}" text-anchor="end">{_label(t)}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">'
               f'{_esc(xlabel if xlabel is not None else x)}</text>')
    if ylabel:
        out.append(f'<text x="16" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {TOP + ph / 2:.2f})">{_esc(ylabel)}</text>')
    for k, (s, (y, e)) in enumerate(zip(series, ys)):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_f(px(a))},{_f(py(b))}" for a, b in zip(xs, y))
        dash = ' stroke-dasharray="5,4"' if s.dashed else ""
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"{dash}/>')
        for a, b, err in zip(xs, y, e):
            X = px(a)
            if err > 0:
                top, bot = py(b + err), py(b - err)
                out.append(f'<line x1="{_f(X)}" y1="{_f(top)}" x2="{_f(X)}" y2="{_f(bot)}" stroke="{color}"/>')
                for cap in (top, bot):
                    out.append(f'<line x1="{_f(X - 4)}" y1="{_f(cap)}" x2="{_f(X + 4)}" '
                               f'y2="{_f(cap)}" stroke="{color}"/>')
            out.append(f'<circle cx="{_f(X)}" cy="{_f(py(b))}" r="3" fill="{color}"/>')
        ly = TOP + 16 + 16 * k
        out.append(f'<line x1="{LEFT + pw - 150}" y1="{ly}" x2="{LEFT + pw - 125}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{LEFT + pw - 120}" y="{ly + 4}">{_esc(s.label or s.y)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return (str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def emit_plot(table: Table, path, x: str, series, **kw) -> tuple:
    """Write ``<path>.svg`` and ``<path>.csv`` (``path`` has no extension); returns both."""
    path = Path(path)
    svg = render_svg(table, x, series, **kw)
    svg_path = path.parent / (path.name + ".svg")
    csv_path = path.parent / (path.name + ".csv")
    svg_path.parent.mkdir(parents=True, exist_ok=True)
    with open(svg_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(svg)
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(table.to_csv())
    return svg_path, csv_path
