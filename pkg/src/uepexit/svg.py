"""Minimal SVG 1.1 line-chart writer for EXIT charts."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f4e9c", "#2a9d3c", "#c0392b", "#7d3c98", "#b9770e")


def exit_chart(series, title: str = "", width: int = 520, height: int = 520,
               markers=(), x_label: str = "I_A", y_label: str = "I_E") -> str:
    """Render polylines on the unit square.

    ``series`` is a list of (label, x, y) triples drawn in order; ``markers``
    is a list of (x, y, label) points drawn as open circles.
    """
    left, right, top, bottom = 60, 20, 40 if title else 20, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + pw * np.asarray(x, dtype=float)

    def sy(y):
        return top + ph * (1.0 - np.asarray(y, dtype=float))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="14">{escape(title)}</text>')
    # axes, ticks and grid
    for v in np.linspace(0, 1, 6):
        gx, gy = sx(v), sy(v)
        out.append(f'<line x1="{gx:.2f}" y1="{top}" x2="{gx:.2f}" y2="{top + ph}" stroke="#e5e5e5"/>')
        out.append(f'<line x1="{left}" y1="{gy:.2f}" x2="{left + pw}" y2="{gy:.2f}" stroke="#e5e5e5"/>')
        out.append(f'<text x="{gx:.2f}" y="{top + ph + 16}" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{v:.1f}</text>')
        out.append(f'<text x="{left - 6}" y="{gy + 4:.2f}" text-anchor="end" font-family="sans-serif" '
                   f'font-size="11">{v:.1f}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12">{escape(x_label)}</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="12" transform="rotate(-90 16 {top + ph / 2:.1f})">{escape(y_label)}</text>')

    for k, (label, x, y) in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(sx(x), sy(y)))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6" points="{pts}"/>')
        ly = top + 16 + 16 * k
        out.append(f'<line x1="{left + pw - 150}" y1="{ly}" x2="{left + pw - 130}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw - 124}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="11">{escape(label)}</text>')
    for x, y, label in markers:
        out.append(f'<circle cx="{float(sx(x)):.2f}" cy="{float(sy(y)):.2f}" r="3" fill="white" '
                   f'stroke="black"><title>{escape(label)}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
