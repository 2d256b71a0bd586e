"""Deterministic SVG rendering of slices.

No floating point: a global common denominator turns every coordinate into
an integer, and the pixel scale is an integer number of pixels per lattice
step. Identical input therefore yields byte-identical SVG.

The viewport of each panel is the bounding box of the vertices of its
nonempty cells, expanded by 2 units in every coordinate direction in which
some tail ray points; unbounded cells are clipped to it. The rule and the
exact bounds are stated in the document metadata. Ambient rank 1 and 2 are
drawn natively, rank 3 is projected onto the first two coordinates after
clipping, higher rank is refused.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .geom.polyhedron import TailedPolyhedron

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b4", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)

_TARGET = 320      # preferred panel extent in px
_MARGIN = 24
_HEADER = 22
_LEGEND = 22
_LANE = 18         # per-cell lane height for rank-1 panels


def _esc(s: str) -> str:
    return (str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def _label_markup(idx: int) -> str:
    return f'D<tspan baseline-shift="super" font-size="9">{idx}</tspan>'


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_cycle(pts):
    """Boundary cycle of the convex hull, counterclockwise, collinear
    interior points dropped. Handles the degenerate 0- and 1-dimensional
    hulls by returning 1 or 2 points."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 3:
        # all points on one line
        return [pts[0], pts[-1]]
    return cycle


def _centroid(pts):
    n = len(pts)
    dim = len(pts[0])
    return tuple(sum(p[i] for p in pts) / n for i in range(dim))


def _viewport(cells, dim):
    """Bounding box of all vertices, widened by 2 per tail direction."""
    verts = [v for c in cells for v in c.vertices]
    if not verts:
        return [(Fraction(0), Fraction(1))] * dim
    lo = [min(v[i] for v in verts) for i in range(dim)]
    hi = [max(v[i] for v in verts) for i in range(dim)]
    for c in cells:
        for r in c.tail.rays:
            for i in range(dim):
                if r[i] < 0:
                    lo[i] = min(lo[i], lo[i] - 2)
                elif r[i] > 0:
                    hi[i] = max(hi[i], hi[i] + 2)
    out = []
    for i in range(dim):
        a, b = lo[i], hi[i]
        if a == b:
            a, b = a - 1, b + 1
        out.append((a, b))
    return out


def _box_poly(box):
    dim = len(box)
    corners = [()]
    for a, b in box:
        corners = [c + (x,) for c in corners for x in (a, b)]
    return TailedPolyhedron.proper(corners)


def _clip(cell, box):
    return cell.intersect(_box_poly(box))


class _Panel:
    def __init__(self, title, cells, labels, dim):
        self.title = title
        self.dim = dim
        self.items = [(i, c) for (i, c) in zip(labels, cells) if not c.is_empty]
        vis = [c for _, c in self.items]
        self.box = _viewport(vis, dim) if vis else [(Fraction(0), Fraction(1))] * max(dim, 1)
        self.clipped = [(i, _clip(c, self.box)) for i, c in self.items]


def _denoms(panels):
    ds = [1]
    for p in panels:
        for a, b in p.box:
            ds += [a.denominator, b.denominator]
        for _, c in p.clipped:
            for v in c.vertices:
                ds += [x.denominator for x in v]
    out = 1
    for d in ds:
        out = out * d // gcd(out, d)
    return out


def render_slices(slices, titles, *, notes=()) -> str:
    """SVG document with one panel per slice. slices are fan.Slice values
    (or anything with .cells and .labels); titles parallel them."""
    if len(slices) != len(titles):
        raise ValueError("one title per slice required")
    if not slices:
        raise ValueError("nothing to render")
    dims = set()
    for s in slices:
        for c in s.cells:
            dims.add(c.ambient_dim)
    if len(dims) > 1:
        raise ValueError("mixed ambient dimensions across slices")
    dim = dims.pop() if dims else 1
    if dim > 3:
        raise ValueError("rendering supports ambient rank up to 3")

    project = dim == 3
    panels = []
    for s, t in zip(slices, titles):
        idx = list(range(len(s.cells)))
        panels.append(_Panel(t, list(s.cells), idx, dim))

    L = _denoms(panels)
    draw_dim = 2 if dim >= 2 else 1

    # widest panel extent in 1/L steps fixes the global pixel scale
    max_steps = 1
    for p in panels:
        for i in range(min(p.dim, 2)):
            a, b = p.box[i]
            max_steps = max(max_steps, int((b - a) * L))
    K = max(1, _TARGET // max_steps)

    def px(x, lo):
        return int((x - lo) * L) * K

    body = []
    meta = ["viewport: bounding box of all vertices expanded by 2 units in each tail direction",
            f"scale: {K} px per 1/{L} unit"]
    if project:
        meta.append("projection: coordinates 1,2 of 3 (cells clipped in rank 3, then projected)")
    meta.extend(notes)

    x_cursor = _MARGIN
    total_h = 0
    for pi, p in enumerate(panels):
        (x0, x1) = p.box[0]
        w = px(x1, x0)
        if draw_dim == 2 and p.dim >= 2:
            (y0, y1) = p.box[1]
            h = px(y1, y0)
        else:
            y0 = y1 = Fraction(0)
            h = _LANE * max(1, len(p.clipped))
        ptop = _MARGIN + _HEADER
        meta.append(f"panel {pi}: " + ", ".join(
            f"{'xyz'[i]} in [{a}, {b}]" for i, (a, b) in enumerate(p.box)))

        g = [f'<g transform="translate({x_cursor},{ptop})">']
        g.append(f'<text x="0" y="-6" font-size="13" font-family="monospace">{_esc(p.title)}</text>')
        g.append(f'<rect x="0" y="0" width="{w}" height="{h}" fill="none" stroke="#cccccc"/>')

        seen_labels = []
        if not p.clipped:
            g.append(f'<text x="8" y="{h // 2 + 4}" font-size="12" '
                     f'font-family="monospace" fill="#888888">empty slice</text>')
        elif draw_dim == 1:
            for lane, (li, c) in enumerate(p.clipped):
                yy = _LANE * lane + _LANE // 2
                xs = sorted(px(v[0], x0) for v in c.vertices)
                color = PALETTE[li % len(PALETTE)]
                if li not in seen_labels:
                    seen_labels.append(li)
                if xs[0] == xs[-1]:
                    g.append(f'<circle cx="{xs[0]}" cy="{yy}" r="4" fill="{color}"/>')
                else:
                    g.append(f'<line x1="{xs[0]}" y1="{yy}" x2="{xs[-1]}" y2="{yy}" '
                             f'stroke="{color}" stroke-width="5"/>')
                mid = (xs[0] + xs[-1]) // 2
                g.append(f'<text x="{mid}" y="{yy - 7}" font-size="11" text-anchor="middle" '
                         f'font-family="monospace">{_label_markup(li)}</text>')
        else:
            flat = []
            for li, c in p.clipped:
                pts = [(v[0], v[1]) for v in c.vertices]
                cyc = _hull_cycle(pts)
                flat.append((li, cyc))
                if li not in seen_labels:
                    seen_labels.append(li)
            # regions first, then edges and points on top
            for li, cyc in flat:
                if len(cyc) < 3:
                    continue
                color = PALETTE[li % len(PALETTE)]
                pstr = " ".join(f"{px(a, x0)},{h - px(b, y0)}" for a, b in cyc)
                g.append(f'<polygon points="{pstr}" fill="{color}" fill-opacity="0.55" '
                         f'stroke="#333333" stroke-width="1"/>')
                cx, cy = _centroid(cyc)
                g.append(f'<text x="{px(cx, x0)}" y="{h - px(cy, y0) + 4}" font-size="12" '
                         f'text-anchor="middle" font-family="monospace">{_label_markup(li)}</text>')
            for li, cyc in flat:
                if len(cyc) == 2:
                    (ax, ay), (bx, by) = cyc
                    g.append(f'<line x1="{px(ax, x0)}" y1="{h - px(ay, y0)}" '
                             f'x2="{px(bx, x0)}" y2="{h - px(by, y0)}" '
                             f'stroke="#333333" stroke-width="2"/>')
            for li, cyc in flat:
                if len(cyc) == 1:
                    (ax, ay), = cyc
                    g.append(f'<circle cx="{px(ax, x0)}" cy="{h - px(ay, y0)}" r="3" '
                             f'fill="#333333"/>')

        ly = h + _LEGEND - 6
        lx = 0
        for li in seen_labels:
            color = PALETTE[li % len(PALETTE)]
            g.append(f'<rect x="{lx}" y="{ly - 9}" width="10" height="10" fill="{color}"/>')
            g.append(f'<text x="{lx + 14}" y="{ly}" font-size="11" '
                     f'font-family="monospace">{_label_markup(li)}</text>')
            lx += 14 + 12 * (len(str(li)) + 1) + 10
        body.append("\n".join(g) + "\n</g>")
        x_cursor += w + _MARGIN
        total_h = max(total_h, ptop + h + _LEGEND + _MARGIN)

    width = x_cursor
    height = total_h
    meta_text = "\n".join(_esc(m) for m in meta)
    doc = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<metadata>\n{meta_text}\n</metadata>",
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        *body,
        "</svg>",
    ]
    return "\n".join(doc) + "\n"
