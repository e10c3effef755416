"""Hexagons in the standard apartment of SL_3.

The vertex labelled w is the retraction of gI relative to w^{-1} U_1 w, placed
at x.p for a base point p of the base alcove (the barycenter P0 by default).
The convexity and cone statements below hold for the special vertex ORIGIN,
where x.p is the translation part of x; at the barycenter the six points can
be off by a fraction of an alcove.  Sides join w and s w for a simple reflection s (six pairs); the side
from w heads along w^{-1} applied to -alpha_1 or -alpha_2, so the whole hexagon lies
in the 120 degree cone z_w + w^{-1}.C with C spanned by (-1,1,0) and (0,-1,1).
"""
import json
import math
from fractions import Fraction

from .coset import retract
from .weyl import (ETA, NAMES3, ORIGIN, ApartmentPoint, AffineWeylElt, P0, act_on_point,
                   coxeter_length, parse_weyl, perm_compose, perm_from_name,
                   perm_inverse, perm_name, render_weyl)

# cyclic order around the hexagon; consecutive labels differ by a left reflection
CYCLE = ("1", "s1", "s2s1", "s1s2s1", "s1s2", "s2")
SIDES = tuple((CYCLE[t], CYCLE[(t + 1) % 6]) for t in range(6))
ROOT_DIRECTIONS = ((1, -1, 0), (0, 1, -1), (1, 0, -1))


class Hexagon:
    """Six labelled vertices: label -> (extended affine Weyl element, point)."""

    def __init__(self, elements, base=None):
        self.base = P0 if base is None else ApartmentPoint(base)
        self.vertices = {}
        for name in NAMES3:
            x = elements[name]
            self.vertices[name] = (x, act_on_point(x, self.base))

    @classmethod
    def from_strings(cls, table, base=None):
        return cls({name: parse_weyl(text) for name, text in table.items()}, base)

    def at(self, base):
        """Same vertex elements, points taken as images of another base point."""
        return Hexagon(self.elements(), base)

    def elt(self, name):
        return self.vertices[name][0]

    def point(self, name):
        return self.vertices[name][1]

    def points(self):
        return [self.vertices[name][1] for name in NAMES3]

    def elements(self):
        return {name: self.vertices[name][0] for name in NAMES3}

    def translate(self, mu):
        t = AffineWeylElt.translation(mu)
        return Hexagon({name: t * x for name, (x, _) in self.vertices.items()}, self.base)

    def __eq__(self, other):
        return isinstance(other, Hexagon) and self.elements() == other.elements()

    def __hash__(self):
        return hash(tuple(self.elements()[n] for n in NAMES3))

    def __repr__(self):
        inner = ", ".join(f"{n}: {render_weyl(self.elt(n))}" for n in NAMES3)
        return f"Hexagon({inner})"

    def is_point(self):
        return len(set(self.points())) == 1

    def adjacent_pairs(self):
        """Label pairs whose lengths differ by one (eight pairs, six of them sides)."""
        out = []
        for a_i, a in enumerate(NAMES3):
            for b in NAMES3[a_i + 1:]:
                la = coxeter_length(perm_from_name(a))
                lb = coxeter_length(perm_from_name(b))
                if abs(la - lb) == 1:
                    out.append((a, b))
        return out

    def to_json(self):
        out = []
        for name in NAMES3:
            x, pt = self.vertices[name]
            out.append({"w": name, "element": render_weyl(x),
                        "point": [[c.numerator, c.denominator] for c in pt]})
        return out

    @classmethod
    def from_json(cls, data, base=None):
        return cls({item["w"]: parse_weyl(item["element"]) for item in data}, base)


def hexagon_of(g, base=None):
    return Hexagon({name: retract(g, perm_from_name(name)) for name in NAMES3}, base)


# -- exact planar geometry -------------------------------------------------
# (x1, x2, x3) with x3 = -x1 - x2 is handled through the linear chart (x1, x2),
# which preserves orientation-independent notions: hulls, segments, containment.

def _chart(p):
    return (Fraction(p[0]), Fraction(p[1]))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Extreme points in counterclockwise order (monotone chain, exact)."""
    pts = sorted(set(_chart(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _on_segment(p, a, b):
    if _cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def point_in_hull(p, hull):
    p = _chart(p) if len(p) == 3 else p
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        return _on_segment(p, hull[0], hull[1])
    for t in range(len(hull)):
        if _cross(hull[t], hull[(t + 1) % len(hull)], p) < 0:
            return False
    return True


def hexagon_contains(outer, inner):
    """Every vertex of inner lies in the convex hull of the vertices of outer."""
    hull = convex_hull(outer.points())
    return all(point_in_hull(_chart(p), hull) for p in inner.points())


def shares_opposite_vertices(h1, h2, w1):
    if isinstance(w1, str):
        w1 = perm_from_name(w1)
    a = perm_name(w1)
    b = perm_name(perm_compose(ETA, w1))
    return h1.elt(a) == h2.elt(a) and h1.elt(b) == h2.elt(b)


def side_vectors(h):
    return {(a, b): h.point(b) - h.point(a) for a, b in SIDES}


def _parallel_to_root(v):
    if all(c == 0 for c in v):
        return True
    for r in ROOT_DIRECTIONS:
        if v[0] * r[1] - v[1] * r[0] == 0 and v[1] * r[2] - v[2] * r[1] == 0 \
                and v[0] * r[2] - v[2] * r[0] == 0:
            return True
    return False


def sides_parallel_to_roots(h):
    return all(_parallel_to_root(v) for v in side_vectors(h).values())


def _on_boundary(p, hull):
    k = len(hull)
    return any(_on_segment(p, hull[t], hull[(t + 1) % k]) for t in range(k))


def is_convex_position(h):
    """Vertices in convex position, allowing coincident or collinear degenerations.

    Walking the cyclic label order, every distinct point lies on the hull
    boundary, no turn goes against the others and the walk winds once.
    """
    pts = []
    for name in CYCLE:
        p = _chart(h.point(name))
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    hull = convex_hull(pts)
    if len(hull) <= 2:
        return True
    if not all(_on_boundary(p, hull) for p in pts):
        return False
    k = len(pts)
    signs = set()
    for t in range(k):
        c = _cross(pts[t], pts[(t + 1) % k], pts[(t + 2) % k])
        if c:
            signs.add(c > 0)
    return len(signs) == 1 and _winding_once(pts)


def _winding_once(pts):
    total = 0.0
    k = len(pts)
    for t in range(k):
        a, b, c = pts[t], pts[(t + 1) % k], pts[(t + 2) % k]
        u = (float(b[0] - a[0]), float(b[1] - a[1]))
        v = (float(c[0] - b[0]), float(c[1] - b[1]))
        total += math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1])
    return abs(abs(total) - 2 * math.pi) < 1e-6


def in_cone(p, z, w):
    """p in z + w^{-1}.C for the vertex labelled w, C spanned by (-1,1,0), (0,-1,1).

    With u = w^{-1}: u^{-1}(p - z) = (-a, a - b, b) with a, b >= 0, i.e.
    (p-z)_{u(1)} <= 0 and (p-z)_{u(3)} >= 0.
    """
    if isinstance(w, str):
        w = perm_from_name(w)
    u = perm_inverse(w)
    v = tuple(Fraction(a) - Fraction(b) for a, b in zip(p, z))
    return v[u[0]] <= 0 and v[u[2]] >= 0


def cone_constraint(h, labels=NAMES3):
    """Each vertex hull point sits in the cone at every listed vertex."""
    return all(in_cone(p, h.point(name), name) for name in labels for p in h.points())


def within_shared_cones(h, z1, w1, z2, w2):
    return all(in_cone(p, z1, w1) and in_cone(p, z2, w2) for p in h.points())


# -- SVG rendering ----------------------------------------------------------

def project(p):
    """Planar embedding of a sum-zero triple: e1-e2 and e2-e3 meet at 120 degrees."""
    x1, x2, x3 = (float(c) for c in p)
    a, b = x1 - x2, x2 - x3
    return (a + 0.5 * b, math.sqrt(3) / 2 * b)


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def render_svg(hexagons, scale=40.0, margin=40.0, labels=True, colors=None):
    colors = colors or PALETTE
    coords = [project(p) for h in hexagons for p in h.points()]
    if coords:
        xs = [c[0] for c in coords]
        ys = [c[1] for c in coords]
        minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    else:
        minx = maxx = miny = maxy = 0.0
    width = (maxx - minx) * scale + 2 * margin
    height = (maxy - miny) * scale + 2 * margin

    def xy(p):
        x, y = project(p)
        return ((x - minx) * scale + margin, (maxy - y) * scale + margin)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{width:.2f}" height="{height:.2f}" '
           f'viewBox="0 0 {width:.2f} {height:.2f}">']
    for idx, h in enumerate(hexagons):
        color = colors[idx % len(colors)]
        out.append(f'<g id="hexagon-{idx}" stroke="{color}" fill="{color}">')
        for a, b in SIDES:
            (x1, y1), (x2, y2) = xy(h.point(a)), xy(h.point(b))
            if (x1, y1) != (x2, y2):
                out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" '
                           f'y2="{y2:.3f}" stroke-width="1.5"/>')
        seen = {}
        for name in NAMES3:
            x, y = xy(h.point(name))
            key = (round(x, 6), round(y, 6))
            seen.setdefault(key, []).append(name)
        for (x, y), names in seen.items():
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3"/>')
            if labels:
                out.append(f'<text x="{x + 5:.3f}" y="{y - 5:.3f}" font-size="10" '
                           f'stroke="none">{",".join(names)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def dumps_hexagon(h):
    return json.dumps(h.to_json(), sort_keys=True)
