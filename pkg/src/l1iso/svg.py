"""Minimal self-contained SVG line plots (no external assets, stable output)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


@dataclass(frozen=True)
class Series:
    label: str
    xs: tuple[float, ...]
    ys: tuple[float | None, ...]


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _nice_range(lo: float, hi: float) -> tuple[float, float]:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return 0.0, 1.0
    if hi - lo < 1e-12 * max(1.0, abs(lo), abs(hi)):
        pad = 0.05 * max(abs(lo), 1e-3)
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _panel(series, title, xlabel, ylabel, x0, y0, w, h) -> list[str]:
    pts = [(x, y) for s in series for x, y in zip(s.xs, s.ys) if y is not None and math.isfinite(y)]
    out = [f'<g transform="translate({_fmt(x0)},{_fmt(y0)})">']
    out.append(f'<text x="{_fmt(w / 2)}" y="-12" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<rect x="0" y="0" width="{_fmt(w)}" height="{_fmt(h)}" fill="none" stroke="#444"/>')
    if not pts:
        out.append("</g>")
        return out
    xlo, xhi = _nice_range(min(p[0] for p in pts), max(p[0] for p in pts))
    ylo, yhi = _nice_range(min(p[1] for p in pts), max(p[1] for p in pts))

    def sx(x):
        return (x - xlo) / (xhi - xlo) * w

    def sy(y):
        return h - (y - ylo) / (yhi - ylo) * h

    for k in range(5):
        fx = xlo + (xhi - xlo) * k / 4
        fy = ylo + (yhi - ylo) * k / 4
        out.append(
            f'<text x="{_fmt(sx(fx))}" y="{_fmt(h + 16)}" text-anchor="middle" font-size="10">{_fmt(fx)}</text>'
        )
        out.append(
            f'<text x="-6" y="{_fmt(sy(fy) + 3)}" text-anchor="end" font-size="10">{_fmt(fy)}</text>'
        )
    out.append(
        f'<text x="{_fmt(w / 2)}" y="{_fmt(h + 34)}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text transform="translate(-52,{_fmt(h / 2)}) rotate(-90)" text-anchor="middle" '
        f'font-size="12">{escape(ylabel)}</text>'
    )
    for i, s in enumerate(series):
        colour = _COLOURS[i % len(_COLOURS)]
        xy = [(sx(x), sy(y)) for x, y in zip(s.xs, s.ys) if y is not None and math.isfinite(y)]
        if not xy:
            continue
        path = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in xy)
        out.append(f'<polyline points="{path}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
        for a, b in xy:
            out.append(f'<circle cx="{_fmt(a)}" cy="{_fmt(b)}" r="2.5" fill="{colour}"/>')
        out.append(
            f'<text x="{_fmt(w - 6)}" y="{_fmt(14 + 14 * i)}" text-anchor="end" font-size="11" '
            f'fill="{colour}">{escape(s.label)}</text>'
        )
    out.append("</g>")
    return out


def plot_panels(panels: list[tuple[str, str, str, list[Series]]]) -> str:
    """Stack ``(title, xlabel, ylabel, series)`` panels vertically into one SVG document."""
    w, h = 520, 240
    left, top, gap = 80, 40, 90
    total_h = top + len(panels) * (h + gap)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{left + w + 30}" height="{total_h}" '
        f'viewBox="0 0 {left + w + 30} {total_h}" font-family="sans-serif">',
        f'<rect width="{left + w + 30}" height="{total_h}" fill="white"/>',
    ]
    for k, (title, xlabel, ylabel, series) in enumerate(panels):
        parts += _panel(series, title, xlabel, ylabel, left, top + k * (h + gap), w, h)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
