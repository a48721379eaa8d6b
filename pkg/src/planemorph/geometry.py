"""Exact planar geometry: predicates, monotone paths, and direction search.

Directions and points are pairs of exact rationals.  The central nontrivial
piece is the constructive search for a direction making a short path or a
small polygon monotone.  The existence condition for a 4-vertex path is that
the two clockwise sweep angles at its interior vertices sum to a value in
the open interval (pi, 3*pi); that condition, although phrased over
transcendental angles, is decided *exactly* here by working with scaled
(cosine, sine) pairs, which are rational, and comparing angles through
octant bookkeeping and cross products.  The constructions then produce
rational direction vectors via scaled rotations, and every returned
direction is re-verified with exact sign predicates before being accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from gmpy2 import mpq, mpz

from .angles import Angle, angle_cmp, clockwise_angle_vectors
from .errors import DegenerateInputError, InternalInvariantViolation
from .rational import Point, cross, dot, sign, vec_sub

Direction = Point  # nonzero rational vector


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p); +1 is counter-clockwise."""
    return sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def positive_projection(arc_from: Point, arc_to: Point, d: Direction) -> bool:
    """True iff the arc advances strictly along d (exact dot product test)."""
    if arc_from == arc_to:
        raise DegenerateInputError("degenerate arc: equal endpoints")
    return dot(vec_sub(arc_to, arc_from), d) > 0


def is_monotone_path(path: Sequence[Point], d: Direction) -> bool:
    if len(path) < 2:
        raise DegenerateInputError("path needs at least two points")
    for a, b in zip(path, path[1:]):
        if a == b:
            raise DegenerateInputError("repeated consecutive path points")
        if dot(vec_sub(b, a), d) <= 0:
            return False
    return True


def clockwise_angle(a: Point, pivot: Point, b: Point) -> Angle:
    """Angle in [0, 2*pi) sweeping ray pivot->a clockwise onto pivot->b."""
    if a == pivot or b == pivot:
        raise DegenerateInputError("degenerate ray for clockwise angle")
    return clockwise_angle_vectors(vec_sub(a, pivot), vec_sub(b, pivot))


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polygon:
    """Cyclic vertex sequence, normalized to counter-clockwise on construction."""

    vertices: tuple

    def __init__(self, vertices: Iterable[Point]):
        vs = tuple(vertices)
        if len(vs) < 3:
            raise DegenerateInputError("polygon needs at least 3 vertices")
        if _signed_area2(vs) < 0:
            vs = tuple(reversed(vs))
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def is_simple(self) -> bool:
        return _polygon_is_simple(self.vertices)

    def is_convex(self) -> bool:
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            if orientation(vs[i - 1], vs[i], vs[(i + 1) % n]) <= 0:
                return False
        return True


def _signed_area2(vs: Sequence[Point]):
    s = mpq(0)
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        s += a[0] * b[1] - a[1] * b[0]
    return s


def segments_properly_disjoint(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff closed segments ab and cd share no point at all."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return False
    for p, q, r in ((a, b, c), (a, b, d), (c, d, a), (c, d, b)):
        if _on_segment(p, q, r):
            return False
    return True


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    """p lies on the closed segment ab."""
    if orientation(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _polygon_is_simple(vs: Sequence[Point]) -> bool:
    n = len(vs)
    if len(set(vs)) != n:
        return False
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = vs[j], vs[(j + 1) % n]
            shared = len({a, b} & {c, d})
            if shared == 0:
                if not segments_properly_disjoint(a, b, c, d):
                    return False
            elif shared == 1:
                # adjacent edges may only touch at the shared vertex
                for p in (c, d):
                    if p != common and _on_segment(a, b, p):
                        return False
                for p in (a, b):
                    if p != common and _on_segment(c, d, p):
                        return False
            else:
                return False
    return True


# ---------------------------------------------------------------------------
# exact scaled trigonometry for clockwise sweep angles
# ---------------------------------------------------------------------------
#
# The clockwise sweep angle from ray direction A to ray direction B has
# cosine dot(A,B) and sine -cross(A,B), both up to one positive scale |A||B|.
# A scaled (cos, sin) pair doubles as a direction vector whose angle in
# [0, 2*pi) *is* the represented angle, so exact angle comparison reduces to
# the vector comparator from the angles module.


def _cw_scaled(A: Point, B: Point):
    return (dot(A, B), -cross(A, B))


def _angle_is_zero(cs) -> bool:
    return cs[1] == 0 and cs[0] > 0


def _sum_scaled(ab, cd):
    c = ab[0] * cd[0] - ab[1] * cd[1]
    s = ab[1] * cd[0] + ab[0] * cd[1]
    return (c, s)


def _path4_angles(path: Sequence[Point]):
    u1, u2, u3, u4 = path
    alpha = _cw_scaled(vec_sub(u1, u2), vec_sub(u3, u2))
    beta = _cw_scaled(vec_sub(u2, u3), vec_sub(u4, u3))
    return alpha, beta


def _path4_condition(path: Sequence[Point]) -> bool:
    """Exact decision of the monotone-path angle condition for a 4-path."""
    alpha, beta = _path4_angles(path)
    sigma = _sum_scaled(alpha, beta)
    # wrap: does alpha + beta reach 2*pi?
    if _angle_is_zero(alpha) or _angle_is_zero(beta):
        wrapped = False
    else:
        # alpha >= 2*pi - beta, comparing directions (cos, sin) exactly
        neg_beta = (beta[0], -beta[1])
        wrapped = angle_cmp(alpha, neg_beta) >= 0
    if not wrapped and sigma[1] >= 0:
        return False  # sum in [0, pi]
    if wrapped and (sigma[1] < 0 or (sigma[1] == 0 and sigma[0] < 0)):
        return False  # sum in [3*pi, 4*pi)
    return True


def _rotate_by_scaled(v: Point, c, s) -> Point:
    """Rotate v counter-clockwise by the angle with scaled (cos, sin) = (c, s)."""
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def _mirror(p: Point) -> Point:
    return (p[0], -p[1])


def _construct_path4_direction(path: Sequence[Point]) -> Direction:
    """Direction for a 4-path already known to satisfy the angle condition.

    Implements the two constructive cases (middle-segment direction when the
    first sweep exceeds a quarter turn; otherwise an offset orthogonal line
    with a deterministic dyadic epsilon), after normalizing with mirror and
    reverse+mirror reductions so that the sweep sum is at most 2*pi and the
    first sweep is the smaller one.
    """
    alpha, beta = _path4_angles(path)
    sigma = _sum_scaled(alpha, beta)
    if _angle_is_zero(alpha) or _angle_is_zero(beta):
        wrapped = False
    else:
        wrapped = angle_cmp(alpha, (beta[0], -beta[1])) >= 0
    strictly_above = wrapped and not (sigma[1] == 0 and sigma[0] > 0)
    if strictly_above:
        # mirror: sweeps become 2*pi-complements, sum drops below 2*pi
        d = _construct_path4_direction([_mirror(p) for p in path])
        return _mirror(d)
    # now alpha + beta <= 2*pi; ensure alpha <= beta via reverse+mirror
    if angle_cmp(alpha, beta) > 0:
        d = _construct_path4_direction([_mirror(p) for p in reversed(path)])
        return (-d[0], d[1])
    u1, u2, u3, u4 = path
    mid = vec_sub(u3, u2)
    alpha_gt_quarter = alpha[1] < 0 or alpha[0] < 0
    if alpha_gt_quarter:
        return mid
    # alpha <= pi/2: find dyadic epsilon with (alpha + beta - pi) > eps,
    # then take d orthogonal to the line through u3 obtained by rotating
    # the ray u3->u2 clockwise by (pi - alpha + eps).
    phi = (-sigma[0], -sigma[1])  # scaled (cos, sin) of sigma - pi, in (0, pi]
    t = None
    for k in range(3, 512):
        tk = mpq(1, mpz(1) << k)
        eps_vec = (1 - tk * tk, 2 * tk)  # direction at angle 2*atan(t)
        if angle_cmp(phi, eps_vec) > 0:
            t = tk
            break
    if t is None:
        raise InternalInvariantViolation("no dyadic epsilon fits the angle margin", path)
    one_m_t2 = 1 - t * t
    two_t = 2 * t
    # scaled cos/sin of (pi - alpha + eps)
    c_rot = -(alpha[0] * one_m_t2 + alpha[1] * two_t)
    s_rot = alpha[1] * one_m_t2 - alpha[0] * two_t
    ray = vec_sub(u2, u3)
    l3 = _rotate_by_scaled(ray, c_rot, -s_rot)  # clockwise rotation
    d = (-l3[1], l3[0])
    if dot(mid, d) < 0:
        d = (l3[1], -l3[0])
    elif dot(mid, d) == 0:
        raise InternalInvariantViolation("orthogonal direction degenerate", path)
    return d


def monotone_direction_path4(path: Sequence[Point]) -> Optional[Direction]:
    """A direction making the 4-point path monotone, or None if none exists.

    The existence condition is decided exactly; any constructed direction is
    re-verified with exact predicates before being returned.
    """
    if len(path) != 4:
        raise DegenerateInputError("expected exactly 4 points")
    for a, b in zip(path, path[1:]):
        if a == b:
            raise DegenerateInputError("repeated consecutive path points")
    if not _path4_condition(path):
        return None
    d = _construct_path4_direction(path)
    if is_monotone_path(path, d):
        return d
    # The construction is backed by the proof; a failure here would be a bug,
    # but a sampled direction keeps the answer honest before we give up.
    d = _sampled_monotone_direction(path)
    if d is not None:
        return d
    raise InternalInvariantViolation("angle condition holds but no direction verified", path)


def _sampled_monotone_direction(path: Sequence[Point], k: int = 720) -> Optional[Direction]:
    for i in range(k):
        t = mpq(2 * i + 1, 2 * k) * 4 - 2  # tan half-angle parameter in (-2, 2]
        d = (1 - t * t, 2 * t)
        if d == (0, 0):
            continue
        if is_monotone_path(path, d):
            return d
        if is_monotone_path(path, (-d[0], -d[1])):
            return (-d[0], -d[1])
    return None


# ---------------------------------------------------------------------------
# monotone directions for small polygons
# ---------------------------------------------------------------------------


def polygon_monotone_split(vs: Sequence[Point], d: Direction):
    """For distinct projections, the two boundary paths between the extreme
    vertices; returns None if the polygon is not d-monotone."""
    n = len(vs)
    proj = [dot(v, d) for v in vs]
    if len(set(proj)) != n:
        return None
    a = min(range(n), key=lambda i: proj[i])
    b = max(range(n), key=lambda i: proj[i])
    path1 = [vs[(a + i) % n] for i in range(((b - a) % n) + 1)]
    path2 = [vs[(a - i) % n] for i in range(((a - b) % n) + 1)]
    if is_monotone_path(path1, d) and is_monotone_path(path2, d):
        return path1, path2
    return None


def is_monotone_polygon(poly: Polygon, d: Direction) -> bool:
    return polygon_monotone_split(poly.vertices, d) is not None


def monotone_direction_polygon(poly: Polygon) -> Direction:
    """A verified monotone direction for a simple polygon with <= 5 vertices.

    Triangles and convex polygons admit every direction that is not
    perpendicular to a vertex-pair line; larger simple polygons contain a
    4-vertex subpath satisfying the angle condition, whose direction then
    works for the whole boundary after a stabilizing perturbation.
    """
    vs = poly.vertices
    n = len(vs)
    if n > 5:
        raise DegenerateInputError("monotone direction search limited to 5 vertices")
    if not poly.is_simple():
        raise DegenerateInputError("polygon is not simple")
    forbidden = _vertex_pair_directions(vs)

    def verify(d: Direction) -> bool:
        return polygon_monotone_split(vs, d) is not None

    if poly.is_convex():
        return perturb_direction((mpq(1), mpq(0)), forbidden, verify)
    candidates = []
    orders = [vs, tuple(reversed(vs))]
    for order in orders:
        for start in range(n):
            candidates.append([order[(start + i) % n] for i in range(4)])
    for cand in candidates:
        if any(a == b for a, b in zip(cand, cand[1:])):
            continue
        if not _path4_condition(cand):
            continue
        d = _construct_path4_direction(cand)
        try:
            return perturb_direction(d, forbidden, verify)
        except InternalInvariantViolation:
            continue
    raise InternalInvariantViolation("no monotone direction found for small polygon", poly)


def _vertex_pair_directions(vs: Sequence[Point]):
    dirs = []
    n = len(vs)
    for i in range(n):
        for j in range(i + 1, n):
            if vs[i] != vs[j]:
                dirs.append(vec_sub(vs[j], vs[i]))
    return dirs


def perturb_direction(
    d: Direction,
    forbidden_perpendiculars: Iterable[Direction],
    verify: Optional[Callable[[Direction], bool]] = None,
) -> Direction:
    """Rationally nudge d off every forbidden perpendicular.

    The caller's verification callback re-checks whatever exact property d
    was chosen for; the perturbation magnitude shrinks by powers of two
    until both the perpendicularity scan and the callback pass.
    """
    forb = [f for f in forbidden_perpendiculars]
    if d == (0, 0):
        raise DegenerateInputError("zero direction")

    def ok(c: Direction) -> bool:
        if c == (0, 0):
            return False
        if any(dot(c, f) == 0 for f in forb):
            return False
        return verify(c) if verify is not None else True

    if ok(d):
        return d
    perp = (-d[1], d[0])
    for k in range(10, 530, 10):
        delta = mpq(1, mpz(1) << k)
        for s in (delta, -delta):
            c = (d[0] + perp[0] * s, d[1] + perp[1] * s)
            if ok(c):
                return c
    raise InternalInvariantViolation("perturbation failed to stabilize", (d, forb))
