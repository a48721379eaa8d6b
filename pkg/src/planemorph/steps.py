"""Linear morphing steps and their exact planarity verification.

A linear step moves every vertex at constant speed between two drawings of
the same plane graph.  Continuous planarity of such a step is decided
exactly: because endpoints share one embedding, the first violation in time
must be a local contact between a vertex and an edge (or two vertices) that
share a face, so only co-facial pairs are examined.  For each pair the
orientation of the triple is a quadratic polynomial in time with rational
coefficients; its roots live in a quadratic field Q(sqrt(D)), where the
collinearity parameter conditions are evaluated by exact sign arithmetic on
p + q*sqrt(D) numbers.  No tolerance enters anywhere; a contact at a stray
instant, including grazing contact at t in {0, 1}, is rejected.

The screens (all-static triples, shared-displacement triples, disjoint
sweep boxes) are exact and only skip pairs that provably cannot collide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional

from gmpy2 import mpq

from .drawing import Drawing
from .errors import DegenerateInputError, EmbeddingMismatchError
from .rational import Point, sign

CERT_NONE = "NONE"
CERT_LEVEL = "LEVEL-EQUIVALENCE"
CERT_VERIFIED = "VERIFIED"


@dataclass
class LinearMorphStep:
    start: Drawing
    end: Drawing
    certificate: str = CERT_NONE
    direction: Optional[Point] = None  # unidirectional trajectory direction

    def __post_init__(self):
        if self.start.graph is not self.end.graph and not self.start.graph.same_embedding(
            self.end.graph
        ):
            raise EmbeddingMismatchError("step endpoints use different embeddings")
        if self.direction is not None:
            if self.direction == (0, 0):
                raise DegenerateInputError("zero unidirectional direction")
            dx, dy = self.direction
            for v in self.start.graph.vertices:
                p0, p1 = self.start.pos[v], self.end.pos[v]
                if (p1[0] - p0[0]) * dy != (p1[1] - p0[1]) * dx:
                    raise DegenerateInputError(
                        f"displacement of {v} is not parallel to the step direction"
                    )

    def displacement(self, v) -> Point:
        p0, p1 = self.start.pos[v], self.end.pos[v]
        return (p1[0] - p0[0], p1[1] - p0[1])

    def is_identity(self) -> bool:
        return self.start.pos == self.end.pos

    def reversed(self) -> "LinearMorphStep":
        return LinearMorphStep(
            start=self.end, end=self.start, certificate=self.certificate, direction=self.direction
        )

    def at(self, t) -> Dict:
        return {
            v: (
                p0[0] + (self.end.pos[v][0] - p0[0]) * t,
                p0[1] + (self.end.pos[v][1] - p0[1]) * t,
            )
            for v, p0 in self.start.pos.items()
        }


def is_unidirectional(step: LinearMorphStep) -> bool:
    """Exact test: all displacements pairwise parallel (zero moves allowed)."""
    base: Optional[Point] = step.direction
    for v in step.start.graph.vertices:
        d = step.displacement(v)
        if d == (0, 0):
            continue
        if base is None:
            base = d
        elif base[0] * d[1] - base[1] * d[0] != 0:
            return False
    return True


@dataclass
class Morph:
    steps: List[LinearMorphStep]

    def __post_init__(self):
        for s, t in zip(self.steps, self.steps[1:]):
            if s.end.pos != t.start.pos:
                raise DegenerateInputError("morph junction drawings differ")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def start(self) -> Drawing:
        return self.steps[0].start

    @property
    def end(self) -> Drawing:
        return self.steps[-1].end

    def junctions(self) -> List[Drawing]:
        if not self.steps:
            return []
        return [self.steps[0].start] + [s.end for s in self.steps]


@dataclass
class StepViolation:
    kind: str
    items: tuple
    t_approx: float

    def __str__(self) -> str:
        return f"{self.kind} involving {self.items} near t={self.t_approx:.4f}"


@dataclass
class VerifyResult:
    ok: bool
    violation: Optional[StepViolation] = None


# ---------------------------------------------------------------------------
# exact sign arithmetic in Q(sqrt(D))
# ---------------------------------------------------------------------------


def _field_sign(p, q, disc) -> int:
    """Sign of p + q*sqrt(disc), disc > 0, all rational."""
    if q == 0:
        return sign(p)
    if p == 0:
        return sign(q)
    sp, sq = sign(p), sign(q)
    if sp == sq:
        return sp
    cmp2 = sign(p * p - q * q * disc)
    return cmp2 if sp > 0 else -cmp2


def _field_eval(coeffs, p, q, disc):
    """Evaluate c2*t^2 + c1*t + c0 at t = p + q*sqrt(disc) as (P, Q)."""
    c2, c1, c0 = coeffs
    t2p = p * p + q * q * disc
    t2q = 2 * p * q
    return (c2 * t2p + c1 * p + c0, c2 * t2q + c1 * q)


def _quad_always_neg(c2, c1, c0) -> bool:
    """c2 t^2 + c1 t + c0 < 0 for all t in [0, 1]?"""
    if c0 >= 0 or c2 + c1 + c0 >= 0:
        return False
    if c2 != 0:
        tv = -c1 / (2 * c2)
        if 0 < tv < 1 and c2 * tv * tv + c1 * tv + c0 >= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# step verification
# ---------------------------------------------------------------------------


def _cofacial_pairs(g):
    ve_pairs = set()
    vv_pairs = set()
    for f in g.faces():
        verts = []
        seen = set()
        for a, _ in f.walk:
            if a not in seen:
                seen.add(a)
                verts.append(a)
        eset = {tuple(sorted(e)) for e in (tuple(d) for d in f.walk)}
        for u in verts:
            for e in eset:
                if u not in e:
                    ve_pairs.add((u, e))
        for i, u in enumerate(verts):
            for w in verts[i + 1 :]:
                vv_pairs.add((u, w) if u < w else (w, u))
    return ve_pairs, vv_pairs


def verify_step(step: LinearMorphStep) -> VerifyResult:
    """Exact continuous-planarity decision for one linear step."""
    g = step.start.graph
    p0 = step.start.pos
    p1 = step.end.pos
    disp = {v: (p1[v][0] - p0[v][0], p1[v][1] - p0[v][1]) for v in p0}
    moved = {v for v, d in disp.items() if d != (0, 0)}
    boxes = {}
    for v in p0:
        a, b = p0[v], p1[v]
        boxes[v] = (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))
    ve_pairs, vv_pairs = _cofacial_pairs(g)

    for u, w in vv_pairs:
        if u not in moved and w not in moved:
            continue
        if disp[u] == disp[w]:
            continue
        rx = p0[u][0] - p0[w][0]
        ry = p0[u][1] - p0[w][1]
        dx = disp[u][0] - disp[w][0]
        dy = disp[u][1] - disp[w][1]
        t = None
        if dx != 0:
            cand = -rx / dx
            if ry + cand * dy == 0:
                t = cand
        elif rx == 0:
            if dy != 0:
                t = -ry / dy
            elif ry == 0:
                t = mpq(0)
        if t is not None and 0 <= t <= 1:
            return VerifyResult(False, StepViolation("vertex-coincidence", (u, w), float(t)))

    for u, e in ve_pairs:
        a, b = e
        du, da, db = disp[u], disp[a], disp[b]
        if u not in moved and a not in moved and b not in moved:
            continue
        if du == da == db:
            continue
        bu = boxes[u]
        ba = boxes[a]
        bb = boxes[b]
        if (
            bu[2] < min(ba[0], bb[0])
            or bu[0] > max(ba[2], bb[2])
            or bu[3] < min(ba[1], bb[1])
            or bu[1] > max(ba[3], bb[3])
        ):
            continue
        hit = _vertex_edge_contact(p0[u], du, p0[a], da, p0[b], db)
        if hit is not None:
            return VerifyResult(False, StepViolation("vertex-edge-contact", (u, e), hit))
    return_result = VerifyResult(True)
    step.certificate = CERT_VERIFIED
    return return_result


def _vertex_edge_contact(u0, du, a0, da, b0, db) -> Optional[float]:
    """First-principles exact contact test; returns an approximate contact
    time if vertex u ever lies on closed segment ab during t in [0, 1]."""
    # P(t) = a - u, Q(t) = b - u, E(t) = b - a as linear polynomials
    P0 = (a0[0] - u0[0], a0[1] - u0[1])
    Pd = (da[0] - du[0], da[1] - du[1])
    Q0 = (b0[0] - u0[0], b0[1] - u0[1])
    Qd = (db[0] - du[0], db[1] - du[1])
    E0 = (b0[0] - a0[0], b0[1] - a0[1])
    Ed = (db[0] - da[0], db[1] - da[1])
    # orientation polynomial f = cross(P, Q)
    fC = P0[0] * Q0[1] - P0[1] * Q0[0]
    fB = P0[0] * Qd[1] - P0[1] * Qd[0] + Pd[0] * Q0[1] - Pd[1] * Q0[0]
    fA = Pd[0] * Qd[1] - Pd[1] * Qd[0]
    # N = dot(u - a, b - a) = dot(-P, E); D = dot(E, E); both quadratic
    nC = -(P0[0] * E0[0] + P0[1] * E0[1])
    nB = -(P0[0] * Ed[0] + P0[1] * Ed[1] + Pd[0] * E0[0] + Pd[1] * E0[1])
    nA = -(Pd[0] * Ed[0] + Pd[1] * Ed[1])
    dC = E0[0] * E0[0] + E0[1] * E0[1]
    dB = 2 * (E0[0] * Ed[0] + E0[1] * Ed[1])
    dA = Ed[0] * Ed[0] + Ed[1] * Ed[1]

    def param_ok_rational(t) -> bool:
        nv = nA * t * t + nB * t + nC
        dv = dA * t * t + dB * t + dC
        return nv >= 0 and dv - nv >= 0

    if fA == 0 and fB == 0 and fC == 0:
        # collinear throughout; safe only if the parameter stays off [0, 1]
        if _quad_always_neg(nA, nB, nC):
            return None
        if _quad_always_neg(-(nA - dA), -(nB - dB), -(nC - dC)):
            return None  # N - D > 0 throughout
        return 0.5
    roots_rational = []
    roots_field = []
    if fA == 0:
        if fB != 0:
            roots_rational.append(-fC / fB)
    else:
        disc = fB * fB - 4 * fA * fC
        if disc == 0:
            roots_rational.append(-fB / (2 * fA))
        elif disc > 0:
            inv = 1 / (2 * fA)
            for s in (1, -1):
                roots_field.append((-fB * inv, s * inv, disc))
    for t in roots_rational:
        if 0 <= t <= 1 and param_ok_rational(t):
            return float(t)
    for p, q, disc in roots_field:
        if _field_sign(p, q, disc) < 0:
            continue
        if _field_sign(p - 1, q, disc) > 0:
            continue
        nP, nQ = _field_eval((nA, nB, nC), p, q, disc)
        if _field_sign(nP, nQ, disc) < 0:
            continue
        mP, mQ = _field_eval((dA - nA, dB - nB, dC - nC), p, q, disc)
        if _field_sign(mP, mQ, disc) < 0:
            continue
        return float(p) + float(q) * math.sqrt(float(disc))
    return None
