"""
SVG drawings of presentations.

Every edge is subdivided twice, which turns loops and parallel edges into
simple paths. The chosen outer face (the annotated infinite face, or the
largest face) is pinned to a circle, and every other vertex is placed at
the average of its neighbours by solving one linear system (a Tutte
barycentric layout). Components are drawn side by side.

Each edge becomes one ``<path class="edge">``. At a classical crossing the
edges on the minus pole stop short of the crossing, leaving the plus strand
unbroken; each crossing gets one ``<g class="crossing">`` glyph, and virtual
crossings are circled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .core import MINUS, VIRTUAL, LinkPresentation, components, mate, trace_faces


@dataclass
class RenderOptions:
    size: float = 240.0
    margin: float = 24.0
    gap: float = 7.0
    stroke: float = 2.0
    labels: bool = True


def _subdivided(p: LinkPresentation, names: set):
    """Vertices and adjacency of the twice-subdivided shadow of one component."""
    adj = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for e in p.edge_ids:
        if p.position((e, 0))[0] not in names:
            continue
        a, b = p.position((e, 0))[0], p.position((e, 1))[0]
        link(("c", a), ("s", e, 0))
        link(("s", e, 0), ("s", e, 1))
        link(("s", e, 1), ("c", b))
    return adj


def _boundary(p: LinkPresentation, face) -> list:
    """The subdivided vertices around a face, each listed once."""
    out = []
    for d in face.darts:
        e, side = d
        walk = [("c", p.position(d)[0]), ("s", e, side), ("s", e, 1 - side)]
        for v in walk:
            if v not in out:
                out.append(v)
    return out


def _layout(p: LinkPresentation, names: set) -> dict:
    adj = _subdivided(p, names)
    faces = [f for f in trace_faces(p) if p.position(f.darts[0])[0] in names]
    outer = None
    if p.infinite_face:
        outer = next((f for f in faces if f.matches(p.infinite_face)), None)
    if outer is None:
        outer = max(faces, key=len)
    ring = _boundary(p, outer)
    pos = {}
    for i, v in enumerate(ring):
        t = 2 * math.pi * i / len(ring)
        pos[v] = (math.cos(t), math.sin(t))
    inner = [v for v in adj if v not in pos]
    if inner:
        index = {v: i for i, v in enumerate(inner)}
        a = np.zeros((len(inner), len(inner)))
        rhs = np.zeros((len(inner), 2))
        for v in inner:
            i = index[v]
            for w in adj[v]:
                a[i, i] += 1
                if w in index:
                    a[i, index[w]] -= 1
                else:
                    rhs[i] += pos[w]
        sol = np.linalg.lstsq(a, rhs, rcond=None)[0]
        for v in inner:
            pos[v] = tuple(sol[index[v]])
    return pos


def _point(x, y) -> str:
    return f"{x:.2f},{y:.2f}"


def render_svg(p: LinkPresentation, options: RenderOptions | None = None) -> str:
    """An SVG 1.1 document drawing ``p``.

    Args:
        p: a valid presentation.
        options: sizes and label switch.

    Returns:
        The document text.
    """
    opt = options or RenderOptions()
    comps = components(p)
    cell = opt.size + 2 * opt.margin
    width, height = cell * max(1, len(comps)), cell
    body = []
    glyphs = []
    for slot, comp in enumerate(comps):
        names = set(comp)
        raw = _layout(p, names)
        ox, oy = slot * cell + opt.margin + opt.size / 2, opt.margin + opt.size / 2
        scale = opt.size / 2
        pos = {v: (ox + scale * x, oy + scale * y) for v, (x, y) in raw.items()}
        for e in p.edge_ids:
            if p.position((e, 0))[0] not in names:
                continue
            pts = [pos[("c", p.position((e, 0))[0])], pos[("s", e, 0)],
                   pos[("s", e, 1)], pos[("c", p.position((e, 1))[0])]]
            for side, (tip, nxt) in ((0, (0, 1)), (1, (3, 2))):
                name = p.position((e, side))[0]
                if p.kind(name) != VIRTUAL and p.end_of((e, side)).pole == MINUS:
                    pts[tip] = _shorten(pts[tip], pts[nxt], opt.gap)
            d = "M " + " L ".join(_point(*q) for q in pts)
            body.append(f'<path class="edge" data-edge="{e}" d="{d}" fill="none" '
                        f'stroke="black" stroke-width="{opt.stroke}"/>')
        for name in sorted(names):
            x, y = pos[("c", name)]
            parts = []
            if p.kind(name) == VIRTUAL:
                parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{opt.gap:.2f}" '
                             f'fill="none" stroke="black" stroke-width="1"/>')
            if opt.labels:
                parts.append(f'<text x="{x + opt.gap:.2f}" y="{y - opt.gap:.2f}" '
                             f'font-size="9" font-family="sans-serif">{escape(name)}</text>')
            kind = "virtual" if p.kind(name) == VIRTUAL else "classical"
            glyphs.append(f'<g class="crossing {kind}" data-name="{escape(name)}">'
                          + "".join(parts) + "</g>")
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width:.0f}" height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">')
    return "\n".join([head, *body, *glyphs, "</svg>"]) + "\n"


def _shorten(tip, toward, gap):
    dx, dy = toward[0] - tip[0], toward[1] - tip[1]
    length = math.hypot(dx, dy)
    if length == 0:
        return tip
    t = min(gap / length, 0.4)
    return (tip[0] + t * dx, tip[1] + t * dy)
