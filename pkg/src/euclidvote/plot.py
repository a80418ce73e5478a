"""Deterministic SVG rendering of a planar voter set and its verdict.

Floats appear only here, for drawing; every coordinate is printed with a
fixed number of decimals and elements are emitted in a fixed order, so equal
inputs give byte-identical files.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import UnsupportedDimensionError
from .geometry import Hyperplane, Line, VoterSet

SIZE = 480
PAD = 30


class _View:
    def __init__(self, pts: Sequence[Sequence[Fraction]]):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y) or Fraction(1)
        # square box around the data with a 10% margin
        cx, cy = (lo_x + hi_x) / 2, (lo_y + hi_y) / 2
        half = span * Fraction(11, 20)
        self.x0, self.x1 = cx - half, cx + half
        self.y0, self.y1 = cy - half, cy + half
        self.k = Fraction(SIZE - 2 * PAD) / (2 * half)

    def xy(self, p) -> tuple[str, str]:
        x = PAD + (Fraction(p[0]) - self.x0) * self.k
        y = SIZE - PAD - (Fraction(p[1]) - self.y0) * self.k
        return f"{float(x):.3f}", f"{float(y):.3f}"

    def clip(self, base, d) -> Optional[tuple]:
        """Part of the line ``base + t*d`` inside the view box (exact clipping)."""
        lo, hi = None, None
        for b, v, a, z in ((base[0], d[0], self.x0, self.x1), (base[1], d[1], self.y0, self.y1)):
            if v == 0:
                if not a <= b <= z:
                    return None
                continue
            t1, t2 = sorted(((a - b) / v, (z - b) / v))
            lo = t1 if lo is None else max(lo, t1)
            hi = t2 if hi is None else min(hi, t2)
        if lo is None or lo >= hi:
            return None
        return tuple(b + lo * v for b, v in zip(base, d)), tuple(b + hi * v for b, v in zip(base, d))


def _segment(view: _View, p, q, color: str, width: str, dash: str = "") -> str:
    (x1, y1), (x2, y2) = view.xy(p), view.xy(q)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"{extra}/>'


def _line(view: _View, l: Line, color: str) -> Optional[str]:
    seg = view.clip(l.base, l.dir)
    return None if seg is None else _segment(view, seg[0], seg[1], color, "1.5", "6 4")


def _hyperplane(view: _View, h: Hyperplane, color: str) -> Optional[str]:
    c1, c2 = h.normal
    base = (h.offset / c1, Fraction(0)) if c1 else (Fraction(0), h.offset / c2)
    seg = view.clip(base, (-c2, c1))
    return None if seg is None else _segment(view, seg[0], seg[1], color, "1.5", "2 3")


def render_svg(s: VoterSet, verdict=None, title: str = "") -> str:
    """SVG text for a 2-dimensional voter set, optionally with a solver verdict."""
    if s.dim != 2:
        raise UnsupportedDimensionError("plotting supports d = 2 only")
    extra = []
    if verdict is not None:
        if verdict.winning_point is not None:
            extra.append(verdict.winning_point)
        if verdict.winning_segment is not None:
            extra.extend(verdict.winning_segment)
        if verdict.witness is not None:
            extra.append(verdict.witness.candidate)
    view = _View(list(s) + extra)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        t = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f'<text x="{PAD}" y="{PAD - 10}" font-family="sans-serif" font-size="13">{t}</text>')
    if verdict is not None and verdict.witness is not None:
        w = verdict.witness
        for l in ((w.line,) if w.line is not None else ()) + tuple(w.lines):
            el = _line(view, l, "#d62728")
            if el:
                out.append(el)
        if w.hyperplane is not None:
            el = _hyperplane(view, w.hyperplane, "#d62728")
            if el:
                out.append(el)
    for p in s:
        x, y = view.xy(p)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="#1f77b4"/>')
    if verdict is not None:
        if verdict.winning_segment is not None:
            p, q = verdict.winning_segment
            out.append(_segment(view, p, q, "#2ca02c", "4"))
        if verdict.winning_point is not None:
            x, y = view.xy(verdict.winning_point)
            out.append(f'<circle cx="{x}" cy="{y}" r="7" fill="none" stroke="#2ca02c" stroke-width="3"/>')
        if verdict.witness is not None:
            x, y = view.xy(verdict.witness.candidate)
            out.append(f'<circle cx="{x}" cy="{y}" r="6" fill="none" stroke="#d62728" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
