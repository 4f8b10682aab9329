"""SVG pictures of planar (sub-)CADs.

Curves are traced by isolating the real roots of each polynomial on a
fine set of vertical lines.  Cells are drawn at their sample points:
boxes for dimension 2, diamonds for dimension 1 and dots for points.
Sections are filled, sectors drawn in outline.  When truth values are
attached, true cells are green and false ones grey.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from .lifting import Cell
from .polynomial import Polynomial
from .roots import real_roots_over, to_float
from .subcad import SubCAD

__all__ = ["plot2d", "trace_curve"]

_COLOURS = ("#1f77b4", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22")


def trace_curve(p: Polynomial, xlo: float, xhi: float, steps: int = 240) -> List[List[Tuple[float, float]]]:
    """Polyline pieces of ``p = 0``; branches are matched by root rank between columns."""
    pieces: List[List[Tuple[float, float]]] = []
    open_: dict = {}
    if p.level == 1:
        rs = real_roots_over(p, 0, ()) or []
        return [[(to_float(r), -1e9), (to_float(r), 1e9)] for r in rs]
    for i in range(steps + 1):
        x = Fraction(xlo) + (Fraction(xhi) - Fraction(xlo)) * i / steps
        rs = real_roots_over(p, 1, (x,))
        ys = [to_float(r) for r in rs] if rs else []
        nxt = {}
        for k, y in enumerate(ys):
            prev = open_.get((len(ys), k))
            if prev is None:
                prev = []
                pieces.append(prev)
            prev.append((float(x), y))
            nxt[(len(ys), k)] = prev
        open_ = nxt
    return [pc for pc in pieces if len(pc) > 1]


def _window(cells: Sequence[Cell], window) -> Tuple[float, float, float, float]:
    if window is not None:
        return window
    xs = [to_float(c.sample[0]) for c in cells] or [0.0]
    ys = [to_float(c.sample[1]) for c in cells] or [0.0]
    pad = 0.5
    return (max(min(xs) - pad, -10), min(max(xs) + pad, 10), max(min(ys) - pad, -10), min(max(ys) + pad, 10))


def _marker(c: Cell, X: float, Y: float, colour: str) -> str:
    fill = colour if c.is_section else "none"
    r = 5
    attrs = f'fill="{fill}" stroke="{colour}" stroke-width="1.5"'
    title = f"<title>{list(c.index)} dim {c.dimension}</title>"
    if c.dimension == 2:
        return f'<rect x="{X - r:.2f}" y="{Y - r:.2f}" width="{2 * r}" height="{2 * r}" {attrs}>{title}</rect>'
    if c.dimension == 1:
        pts = f"{X:.2f},{Y - r - 1:.2f} {X + r + 1:.2f},{Y:.2f} {X:.2f},{Y + r + 1:.2f} {X - r - 1:.2f},{Y:.2f}"
        return f'<polygon points="{pts}" {attrs}>{title}</polygon>'
    return f'<circle cx="{X:.2f}" cy="{Y:.2f}" r="{r - 1}" {attrs}>{title}</circle>'


def plot2d(
    sub: SubCAD,
    polys: Optional[Sequence[Polynomial]] = None,
    window: Optional[Tuple[float, float, float, float]] = None,
    size: int = 480,
    title: Optional[str] = None,
    truth_key: str = "phi1",
) -> str:
    """SVG text for a (sub-)CAD of ``R^2``.

    ``polys`` defaults to the input polynomials (the top tier of the
    run's inputs, if recorded, else every projection polynomial).
    """
    if sub.n != 2:
        raise ValueError("plot2d needs a CAD of R^2")
    if polys is None:
        polys = []
        for f in sub.formulas:
            polys.extend(p for p in f.polynomials() if p not in polys)
        if not polys:
            polys = sub.run.all_polys()
    xlo, xhi, ylo, yhi = _window(sub.cells, window)
    margin = 30
    w = h = size

    def sx(x):
        return margin + (x - xlo) / (xhi - xlo) * (w - 2 * margin)

    def sy(y):
        return h - margin - (y - ylo) / (yhi - ylo) * (h - 2 * margin)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        f'<defs><clipPath id="plot"><rect x="{margin}" y="{margin}" width="{w - 2 * margin}" height="{h - 2 * margin}"/></clipPath></defs>',
        f'<rect x="{margin}" y="{margin}" width="{w - 2 * margin}" height="{h - 2 * margin}" fill="none" stroke="#888"/>',
    ]
    if xlo < 0 < xhi:
        out.append(f'<line x1="{sx(0):.2f}" y1="{margin}" x2="{sx(0):.2f}" y2="{h - margin}" stroke="#ddd"/>')
    if ylo < 0 < yhi:
        out.append(f'<line x1="{margin}" y1="{sy(0):.2f}" x2="{w - margin}" y2="{sy(0):.2f}" stroke="#ddd"/>')
    out.append('<g clip-path="url(#plot)">')
    for k, p in enumerate(polys):
        colour = _COLOURS[k % len(_COLOURS)]
        for piece in trace_curve(p, xlo, xhi):
            ys = [min(max(y, ylo - 1), yhi + 1) for _, y in piece]
            pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for (x, _), y in zip(piece, ys))
            out.append(f'<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="1.2"><title>{escape(str(p))}</title></polyline>')
    out.append("</g>")
    for c in sub.cells:
        X, Y = to_float(c.sample[0]), to_float(c.sample[1])
        if not (xlo <= X <= xhi and ylo <= Y <= yhi):
            continue
        t = c.truth.get(truth_key)
        colour = "#000" if t is None else ("#2ca02c" if t else "#999")
        out.append(_marker(c, sx(X), sy(Y), colour))
    label = title if title is not None else f"{sub.kind}: {len(sub.cells)} cells"
    out.append(f'<text x="{margin}" y="{margin - 10}" font-family="sans-serif" font-size="13">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
