"""Straight-line planar drawings over plane graphs, with exact validation.

A drawing pairs a plane graph with exact rational coordinates.  Validation
is fully exact: pairwise segment checks, point-on-segment checks, cyclic
angular order versus the stored rotation system, and a geometric
identification of the unbounded face.

The vertex kernel (the set of alternative placements of one vertex that
keep the drawing planar) is materialized as an intersection of half-planes.
For an internal vertex of degree >= 3 whose neighbors enclose it with an
otherwise empty cycle polygon, this is exactly the polygon kernel; in the
remaining low-degree or obstructed situations the half-plane region is a
sound convex under-approximation, and contractibility tests fall back to an
exact sliding criterion instead (see is_contractible_onto).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .angles import angle_cmp
from .errors import (
    ContractNotSafeError,
    DegenerateInputError,
    InternalInvariantViolation,
)
from .geometry import Polygon, orientation, segments_properly_disjoint, _on_segment
from .plane_graph import (
    DirEdge,
    PlaneGraph,
    Vertex,
    contract,
    is_quasi_contractible,
)
from .rational import Point, bbox, cross, dot, lerp, vec_sub


@dataclass(frozen=True)
class Violation:
    kind: str
    items: tuple
    detail: str = ""


@dataclass(frozen=True)
class Drawing:
    graph: PlaneGraph
    pos: Dict[Vertex, Point]

    def __post_init__(self):
        if set(self.pos) != set(self.graph.rotations):
            raise DegenerateInputError("position map does not match vertex set")

    def point(self, v: Vertex) -> Point:
        return self.pos[v]

    def with_position(self, v: Vertex, p: Point) -> "Drawing":
        np = dict(self.pos)
        np[v] = p
        return Drawing(self.graph, np)

    def restricted(self, base: PlaneGraph) -> "Drawing":
        return Drawing(base, {v: self.pos[v] for v in base.rotations})

    def segment(self, e) -> Tuple[Point, Point]:
        a, b = tuple(e)
        return self.pos[a], self.pos[b]

    def positions_equal(self, other: "Drawing") -> bool:
        return self.pos == other.pos


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(d: Drawing) -> List[Violation]:
    """Exhaustive exact check of the Drawing invariants; empty list means Ok."""
    out: List[Violation] = []
    g = d.graph
    pts = d.pos
    verts = g.vertices
    # distinct positions
    seen: Dict[Point, Vertex] = {}
    for v in verts:
        p = pts[v]
        if p in seen:
            out.append(Violation("coincident-vertices", (seen[p], v)))
        seen[p] = v
    edges = [tuple(sorted(e)) for e in g.edges()]
    # vertices on foreign edges
    for a, b in edges:
        pa, pb = pts[a], pts[b]
        if pa == pb:
            continue
        for v in verts:
            if v in (a, b):
                continue
            if _on_segment(pa, pb, pts[v]):
                out.append(Violation("vertex-on-edge", (v, (a, b))))
    # pairwise segment checks
    for i in range(len(edges)):
        a, b = edges[i]
        pa, pb = pts[a], pts[b]
        for j in range(i + 1, len(edges)):
            c, e = edges[j]
            shared = {a, b} & {c, e}
            pc, pe = pts[c], pts[e]
            if not shared:
                if not segments_properly_disjoint(pa, pb, pc, pe):
                    out.append(Violation("edge-crossing", ((a, b), (c, e))))
            else:
                for p, q, r, rv in ((pa, pb, pc, c), (pa, pb, pe, e)):
                    if rv not in (a, b) and _on_segment(p, q, r):
                        out.append(Violation("edge-overlap", ((a, b), (c, e))))
                for p, q, r, rv in ((pc, pe, pa, a), (pc, pe, pb, b)):
                    if rv not in (c, e) and _on_segment(p, q, r):
                        out.append(Violation("edge-overlap", ((a, b), (c, e))))
    if out:
        return out
    # rotation consistency: geometric clockwise order must match the stored one
    for v in verts:
        ns = g.rotations[v]
        if len(ns) <= 2:
            continue
        dirs = {w: vec_sub(pts[w], pts[v]) for w in ns}
        geo = sorted(ns, key=lambda w: _AngleKey(dirs[w]))  # ccw order
        geo_cw = tuple(reversed(geo))
        if not _cyclic_equal(geo_cw, ns):
            out.append(Violation("rotation-mismatch", (v,), f"expected {ns}, saw {geo_cw}"))
    if out:
        return out
    # outer face: the walk leaving the lexicographic minimum through its
    # maximum-angle neighbor bounds the unbounded region
    if len(verts) >= 2:
        v0 = min(verts, key=lambda v: (pts[v][0], pts[v][1]))
        ns = g.rotations[v0]
        u_max = max(ns, key=lambda w: _HalfPlaneAngleKey(vec_sub(pts[w], pts[v0])))
        if (v0, u_max) not in g.outer_face().walk:
            out.append(Violation("outer-face-mismatch", (v0, u_max)))
    return out


class _AngleKey:
    __slots__ = ("v",)

    def __init__(self, v: Point):
        self.v = v

    def __lt__(self, other: "_AngleKey") -> bool:
        return angle_cmp(self.v, other.v) < 0


class _HalfPlaneAngleKey:
    """Orders directions within the half-plane {dx>0 or (dx==0 and dy>0)}."""

    __slots__ = ("v",)

    def __init__(self, v: Point):
        self.v = v

    def __lt__(self, other: "_HalfPlaneAngleKey") -> bool:
        return cross(self.v, other.v) > 0


def _cyclic_equal(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    if a[0] not in b:
        return False
    k = b.index(a[0])
    n = len(a)
    return all(a[i] == b[(k + i) % n] for i in range(n))


# ---------------------------------------------------------------------------
# convex regions (half-plane intersections)
# ---------------------------------------------------------------------------


@dataclass
class ConvexRegion:
    """Intersection of open half-planes a*x + b*y + c > 0.

    The polygon field materializes the region clipped to a bounding box (4x
    the drawing's box for unbounded kernels) purely for sampling; membership
    tests use the half-planes and are exact.
    """

    halfplanes: List[Tuple[object, object, object]]
    clip_polygon: Optional[List[Point]] = None
    bounded: bool = True
    empty: bool = False

    def contains(self, p: Point) -> bool:
        if self.empty:
            return False
        return all(a * p[0] + b * p[1] + c > 0 for a, b, c in self.halfplanes)

    def on_boundary(self, p: Point) -> bool:
        if self.empty:
            return False
        tight = False
        for a, b, c in self.halfplanes:
            s = a * p[0] + b * p[1] + c
            if s < 0:
                return False
            if s == 0:
                tight = True
        return tight

    def interior_samples(self, k: int) -> List[Point]:
        poly = self.clip_polygon
        if self.empty or not poly or len(poly) < 3:
            return []
        cx = sum(p[0] for p in poly) / len(poly)
        cy = sum(p[1] for p in poly) / len(poly)
        out = []
        i = 0
        step = 0
        while len(out) < k and step < 8 * k:
            step += 1
            v = poly[i % len(poly)]
            w = poly[(i + 1) % len(poly)]
            t = mpq(2 * (step % 7) + 1, 16)
            edge_pt = lerp(v, w, t)
            cand = lerp((cx, cy), edge_pt, mpq(2 * (step % 11) + 1, 24))
            if self.contains(cand):
                out.append(cand)
            i += 1
        return out


def clip_halfplanes(halfplanes, box) -> Optional[List[Point]]:
    """Sutherland-Hodgman over exact rationals; None when the region is empty."""
    x0, y0, x1, y1 = box
    poly: List[Point] = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    for a, b, c in halfplanes:
        if not poly:
            return None
        nxt: List[Point] = []
        n = len(poly)
        vals = [a * p[0] + b * p[1] + c for p in poly]
        for i in range(n):
            p, q = poly[i], poly[(i + 1) % n]
            vp, vq = vals[i], vals[(i + 1) % n]
            if vp >= 0:
                nxt.append(p)
            if (vp > 0 > vq) or (vp < 0 < vq):
                t = vp / (vp - vq)
                nxt.append(lerp(p, q, t))
        poly = []
        for p in nxt:  # dedupe consecutive
            if not poly or poly[-1] != p:
                poly.append(p)
        if poly and poly[0] == poly[-1]:
            poly.pop()
    if len(poly) < 3:
        return None
    area2 = mpq(0)
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        area2 += p[0] * q[1] - p[1] * q[0]
    if area2 == 0:
        return None
    return poly


_EMPTY_REGION = ConvexRegion(halfplanes=[(mpq(0), mpq(0), mpq(-1))], empty=True)


# ---------------------------------------------------------------------------
# vertex kernels
# ---------------------------------------------------------------------------


def _inner_halfplane(p: Point, q: Point):
    """Half-plane left of the directed line p->q (holds for CCW polygon interiors)."""
    a = -(q[1] - p[1])
    b = q[0] - p[0]
    c = -(a * p[0] + b * p[1])
    return (a, b, c)


def _clip_box_for(d: Drawing, factor: int = 4):
    x0, y0, x1, y1 = bbox(d.pos.values())
    w = (x1 - x0) or mpq(1)
    h = (y1 - y0) or mpq(1)
    return (x0 - factor * w, y0 - factor * h, x1 + factor * w, y1 + factor * h)


def kernel(d: Drawing, v: Vertex) -> ConvexRegion:
    """Convex region of safe placements for v.

    Degree >= 3 with an enclosing, otherwise empty neighbor polygon yields
    the exact polygon kernel.  Degree 1 and 2 use the incident-face wall and
    attachment-wedge half-planes on the side of v's current position, a
    conservative convex subset of the true placement set.  Obstructed or
    non-enclosing configurations return the empty region.
    """
    g = d.graph
    deg = g.degree(v)
    if deg > 5:
        raise DegenerateInputError("kernel restricted to degree <= 5")
    if deg >= 3:
        return _kernel_enclosed(d, v)
    return _kernel_low_degree(d, v)


def _kernel_enclosed(d: Drawing, v: Vertex) -> ConvexRegion:
    g = d.graph
    pts = d.pos
    ring = g.rotations[v]  # clockwise; polygon orientation handled below
    corners = [pts[w] for w in ring]
    if len(set(corners)) != len(corners):
        return _EMPTY_REGION
    try:
        poly = Polygon(corners)  # normalizes to CCW
    except DegenerateInputError:
        return _EMPTY_REGION
    if not poly.is_simple():
        return _EMPTY_REGION
    vs = poly.vertices
    n = len(vs)
    # v must see every corner from inside (star triangles cover the polygon)
    pv = pts[v]
    for i in range(n):
        if orientation(pv, vs[i], vs[(i + 1) % n]) <= 0:
            return _EMPTY_REGION
    # the polygon interior must contain nothing but v's own star
    ring_set = set(ring) | {v}
    for w in g.vertices:
        if w in ring_set:
            continue
        if _point_in_polygon(pts[w], vs) != "outside":
            return _EMPTY_REGION
    ring_edges = {frozenset((ring[i], ring[(i + 1) % len(ring)])) for i in range(len(ring))}
    for e in g.edges():
        a, b = tuple(e)
        if v in e or e in ring_edges:
            continue
        if _segment_enters_polygon(pts[a], pts[b], vs):
            return _EMPTY_REGION
    hps = [_inner_halfplane(vs[i], vs[(i + 1) % n]) for i in range(n)]
    clip = clip_halfplanes(hps, bbox(vs))
    return ConvexRegion(halfplanes=hps, clip_polygon=clip, bounded=True, empty=clip is None)


def _kernel_low_degree(d: Drawing, v: Vertex) -> ConvexRegion:
    g = d.graph
    pts = d.pos
    pv = pts[v]
    ns = g.rotations[v]
    hps: List[Tuple[object, object, object]] = []

    def side_of(a: Point, b: Point):
        """Half-plane through line ab containing pv strictly; None if pv is on it."""
        o = orientation(a, b, pv)
        if o == 0:
            return None
        hp = _inner_halfplane(a, b)
        if o < 0:
            hp = (-hp[0], -hp[1], -hp[2])
        return hp

    # walls: edges bounding the faces incident to v, excluding v's own edges
    for f in g.faces():
        if v not in f.vertices():
            continue
        for a, b in f.walk:
            if v in (a, b):
                continue
            if pts[a] == pts[b]:
                continue
            hp = side_of(pts[a], pts[b])
            if hp is not None:
                hps.append(hp)
    # attachment wedges at each neighbor
    for u in ns:
        urot = g.rotations[u]
        if len(urot) < 3:
            continue
        i = urot.index(v)
        for w in (urot[i - 1], urot[(i + 1) % len(urot)]):
            if pts[w] == pts[u]:
                continue
            hp = side_of(pts[u], pts[w])
            if hp is not None:
                hps.append(hp)
    if len(ns) == 2:
        w, z = ns[0], ns[1]
        if pts[w] != pts[z]:
            hp = side_of(pts[w], pts[z])
            if hp is not None:
                hps.append(hp)
    clip = clip_halfplanes(hps, _clip_box_for(d))
    return ConvexRegion(
        halfplanes=hps, clip_polygon=clip, bounded=False, empty=clip is None
    )


def _point_in_polygon(p: Point, vs: Sequence[Point]) -> str:
    n = len(vs)
    for i in range(n):
        if _on_segment(vs[i], vs[(i + 1) % n], p):
            return "boundary"
    crossings = 0
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if (a[1] <= p[1] < b[1]) or (b[1] <= p[1] < a[1]):
            # x at intersection with horizontal line through p
            t = (p[1] - a[1]) / (b[1] - a[1])
            x = a[0] + (b[0] - a[0]) * t
            if x > p[0]:
                crossings += 1
    return "inside" if crossings % 2 == 1 else "outside"


def _segment_enters_polygon(a: Point, b: Point, vs: Sequence[Point]) -> bool:
    """Does closed segment ab meet the open interior of simple CCW polygon vs?"""
    n = len(vs)
    if _point_in_polygon(a, vs) == "inside" or _point_in_polygon(b, vs) == "inside":
        return True
    hits = []
    for i in range(n):
        c, e = vs[i], vs[(i + 1) % n]
        o1 = orientation(a, b, c)
        o2 = orientation(a, b, e)
        o3 = orientation(c, e, a)
        o4 = orientation(c, e, b)
        if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
            return True  # proper crossing of the boundary
    # remaining risk: segment slips through touching only at corners; test midpoints
    touch_ts = [mpq(0), mpq(1)]
    for i in range(n):
        c = vs[i]
        if _on_segment(a, b, c):
            if a == b:
                continue
            if b[0] != a[0]:
                touch_ts.append((c[0] - a[0]) / (b[0] - a[0]))
            else:
                touch_ts.append((c[1] - a[1]) / (b[1] - a[1]))
    touch_ts = sorted(set(touch_ts))
    for t0, t1 in zip(touch_ts, touch_ts[1:]):
        mid = lerp(a, b, (t0 + t1) / 2)
        if _point_in_polygon(mid, vs) == "inside":
            return True
    return False


# ---------------------------------------------------------------------------
# contractibility and drawing-level contraction
# ---------------------------------------------------------------------------


def is_contractible_onto(d: Drawing, v: Vertex, x: Vertex) -> bool:
    """True iff x lies on the boundary of v's kernel.

    Exact for enclosed vertices via the polygon-kernel half-planes.  For
    degree 1 the answer is always true; for the other low-degree or
    obstructed cases the criterion is an exact slide test: v can be placed
    on the segment toward x, arbitrarily close to x, through a planar slide
    (equivalent to the boundary condition whenever the kernel is convex,
    which is the regime the morphing pipeline guarantees).
    """
    g = d.graph
    if not g.has_edge(v, x):
        raise DegenerateInputError(f"({v},{x}) is not an edge")
    if g.degree(v) == 1:
        return True
    if g.degree(v) >= 3:
        r = kernel(d, v)
        if not r.empty:
            return r.on_boundary(d.pos[x])
    return _slide_contractible(d, v, x)


def _slide_contractible(d: Drawing, v: Vertex, x: Vertex) -> bool:
    from .steps import LinearMorphStep, verify_step  # local import, cycle-free at runtime

    px = d.pos[x]
    pv = d.pos[v]
    for k in (16, 32):
        delta = mpq(1, 1 << k)
        cand = lerp(px, pv, delta)
        end = d.with_position(v, cand)
        step = LinearMorphStep(start=d, end=end)
        if verify_step(step).ok:
            return True
    return False


def contract_drawing(d: Drawing, v: Vertex, x: Vertex) -> Drawing:
    """Contract v onto x keeping every surviving position unchanged."""
    g = d.graph
    if not is_contractible_onto(d, v, x):
        raise ContractNotSafeError(f"{v} is not {x}-contractible here")
    g2 = contract(g, v, x)
    pos2 = {u: p for u, p in d.pos.items() if u != v}
    d2 = Drawing(g2, pos2)
    _check_contraction_locally(d, d2, v, x)
    return d2


def _check_contraction_locally(d: Drawing, d2: Drawing, v: Vertex, x: Vertex) -> None:
    """Exact checks on the elements the contraction touched."""
    g2 = d2.graph
    pts = d2.pos
    new_edges = [
        (x, w) for w in g2.rotations[x] if not d.graph.has_edge(x, w)
    ]
    all_edges = [tuple(sorted(e)) for e in g2.edges()]
    for a, b in new_edges:
        pa, pb = pts[a], pts[b]
        if pa == pb:
            raise InternalInvariantViolation("contracted edge collapsed", (d, v, x))
        for c, e in all_edges:
            if {a, b} == {c, e}:
                continue
            pc, pe = pts[c], pts[e]
            shared = {a, b} & {c, e}
            if not shared:
                if not segments_properly_disjoint(pa, pb, pc, pe):
                    raise InternalInvariantViolation(
                        "contraction produced crossing", (d, v, x, (a, b), (c, e))
                    )
            else:
                checks = (
                    (pa, pb, pc, c),
                    (pa, pb, pe, e),
                    (pc, pe, pa, a),
                    (pc, pe, pb, b),
                )
                for p, q, r, rv in checks:
                    if rv not in shared and _on_segment(p, q, r):
                        raise InternalInvariantViolation(
                            "contraction produced overlap", (d, v, x, (a, b), (c, e))
                        )
        for w in g2.vertices:
            if w in (a, b):
                continue
            if _on_segment(pa, pb, pts[w]):
                raise InternalInvariantViolation(
                    "vertex on contracted edge", (d, v, x, w, (a, b))
                )
    # rotation consistency around x after the splice
    ns = g2.rotations[x]
    if len(ns) > 2:
        dirs = {w: vec_sub(pts[w], pts[x]) for w in ns}
        geo_cw = tuple(reversed(sorted(ns, key=lambda w: _AngleKey(dirs[w]))))
        if not _cyclic_equal(geo_cw, ns):
            raise InternalInvariantViolation("contraction broke rotation at x", (d, v, x))
