"""Certified angles: float nominal value plus exact rational bracket of theta/pi.

Strict angle inequalities (the monotone-path condition, rotation audits)
cannot be decided in floating point, and the quantities involved are
transcendental, so exact rationals alone do not represent them either.  The
compromise used throughout: every angle carries an enclosing interval
[lo, hi] of rationals, in units of pi, tight enough (width < 2**-30) that
all decisions the pipeline needs either resolve from the interval or are
recognized as exact quarter-turn cases and resolved symbolically.

The brackets come from alternating arctangent series evaluated over exact
rationals, with dyadic outward rounding to keep bit lengths bounded, plus a
Machin bracket for pi itself.  No floating point enters any bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gmpy2 import mpq, mpz

from .errors import DegenerateInputError
from .rational import Point, cross, dot, dyadic_round

# ---------------------------------------------------------------------------
# series brackets
# ---------------------------------------------------------------------------


def _atan_series_bracket(w, tol):
    """Exact rational (lo, hi) enclosing atan(w), |w| < 1, alternating series.

    The remainder after a partial sum has the sign and at most the magnitude
    of the first omitted term, which yields the bracket directly.
    """
    if w < 0:
        lo, hi = _atan_series_bracket(-w, tol)
        return -hi, -lo
    s = mpq(0)
    wsq = w * w
    p = w
    k = 0
    while True:
        term = p / (2 * k + 1)
        if term < tol and k > 0:
            # remainder sign = sign of this omitted term
            if k % 2 == 0:
                return s, s + term
            return s - term, s
        if k % 2 == 0:
            s += term
        else:
            s -= term
        p *= wsq
        k += 1


def _pi_bracket():
    # pi = 16 atan(1/5) - 4 atan(1/239)
    tol = mpq(1, mpz(1) << 110)
    a5_lo, a5_hi = _atan_series_bracket(mpq(1, 5), tol)
    a239_lo, a239_hi = _atan_series_bracket(mpq(1, 239), tol)
    return 16 * a5_lo - 4 * a239_hi, 16 * a5_hi - 4 * a239_lo


PI_LO, PI_HI = _pi_bracket()

# Reduction threshold near tan(pi/8); any value in (0.41, 0.42) keeps both
# series branches fast, exactness does not depend on it.
_REDUCE_AT = mpq(4142, 10000)


def _atan_bracket_core(u, bits: int):
    """(lo, hi) rationals enclosing atan(u) in radians, 0 <= u <= 1."""
    tol = mpq(1, mpz(1) << (bits + 25))
    grid = mpq(1, mpz(1) << (bits + 20))
    if u > _REDUCE_AT:
        # atan(u) = pi/4 + atan((u-1)/(u+1)), argument in (-0.3, 0]
        w = (u - 1) / (u + 1)
        wr = dyadic_round(w, bits + 20)
        lo1, _ = _atan_series_bracket(wr - grid, tol)
        _, hi1 = _atan_series_bracket(wr + grid, tol)
        return PI_LO / 4 + lo1, PI_HI / 4 + hi1
    wr = dyadic_round(u, bits + 20)
    w_lo = wr - grid
    if w_lo < 0:
        w_lo = mpq(0)
    lo1, _ = _atan_series_bracket(w_lo, tol)
    _, hi1 = _atan_series_bracket(wr + grid, tol)
    return lo1, hi1


def atan_over_pi_bracket(u, bits: int = 50):
    """(lo, hi) rationals enclosing atan(u)/pi; u rational with |u| <= 1."""
    if u < 0:
        lo, hi = atan_over_pi_bracket(-u, bits)
        return -hi, -lo
    r_lo, r_hi = _atan_bracket_core(u, bits)
    return r_lo / PI_HI, r_hi / PI_LO


# ---------------------------------------------------------------------------
# Angle values
# ---------------------------------------------------------------------------

_WIDTH_LIMIT = mpq(1, mpz(1) << 30)
_TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Angle:
    """An angle with float nominal value and certified theta/pi bracket."""

    radians: float
    lo: object  # rational, theta/pi lower bound
    hi: object  # rational, theta/pi upper bound

    def __post_init__(self):
        assert self.lo <= self.hi
        assert self.hi - self.lo < _WIDTH_LIMIT

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __add__(self, other: "Angle") -> "Angle":
        return Angle(self.radians + other.radians, self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Angle") -> "Angle":
        return Angle(self.radians - other.radians, self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Angle":
        return Angle(-self.radians, -self.hi, -self.lo)

    def abs_below(self, q) -> bool:
        """Certified |theta| < q*pi (q rational)."""
        return -q < self.lo and self.hi < q

    def abs_above(self, q) -> bool:
        """Certified |theta| > q*pi."""
        return self.lo > q or self.hi < -q


def exact_angle(q) -> Angle:
    """Angle that is exactly q*pi (used for quarter-turn cases)."""
    q = mpq(q)
    return Angle(float(q) * math.pi, q, q)


def angle_of_vector(v: Point, bits: int = 50) -> Angle:
    """Direction angle of a nonzero rational vector, in [0, 2*pi).

    Exact multiples of pi/4 (axis-aligned or diagonal vectors) produce exact
    degenerate brackets, everything else a series bracket.
    """
    x, y = v
    if x == 0 and y == 0:
        raise DegenerateInputError("angle of zero vector")
    if y == 0:
        return exact_angle(0 if x > 0 else 1)
    if x == 0:
        return exact_angle(mpq(1, 2) if y > 0 else mpq(3, 2))
    if x == y:
        return exact_angle(mpq(1, 4) if x > 0 else mpq(5, 4))
    if x == -y:
        return exact_angle(mpq(7, 4) if x > 0 else mpq(3, 4))
    ax, ay = abs(x), abs(y)
    if ay <= ax:
        a_lo, a_hi = atan_over_pi_bracket(ay / ax, bits)
        if x > 0 and y > 0:
            lo, hi = a_lo, a_hi
        elif x < 0 and y > 0:
            lo, hi = 1 - a_hi, 1 - a_lo
        elif x < 0 and y < 0:
            lo, hi = 1 + a_lo, 1 + a_hi
        else:
            lo, hi = 2 - a_hi, 2 - a_lo
    else:
        a_lo, a_hi = atan_over_pi_bracket(ax / ay, bits)
        if x > 0 and y > 0:
            lo, hi = mpq(1, 2) - a_hi, mpq(1, 2) - a_lo
        elif x < 0 and y > 0:
            lo, hi = mpq(1, 2) + a_lo, mpq(1, 2) + a_hi
        elif x < 0 and y < 0:
            lo, hi = mpq(3, 2) - a_hi, mpq(3, 2) - a_lo
        else:
            lo, hi = mpq(3, 2) + a_lo, mpq(3, 2) + a_hi
    return Angle(math.atan2(float(y), float(x)) % _TWO_PI, lo, hi)


def clockwise_angle_vectors(ra: Point, rb: Point, bits: int = 50) -> Angle:
    """Clockwise sweep in [0, 2*pi) taking ray direction ra onto rb."""
    if (ra[0] == 0 and ra[1] == 0) or (rb[0] == 0 and rb[1] == 0):
        raise DegenerateInputError("clockwise angle with zero-length ray")
    c = cross(ra, rb)
    d = dot(ra, rb)
    if c == 0:
        return exact_angle(0) if d > 0 else exact_angle(1)
    if d == 0:
        # rb is a quarter turn from ra; the clockwise quarter of ra is (y, -x)
        if dot(rb, (ra[1], -ra[0])) > 0:
            return exact_angle(mpq(1, 2))
        return exact_angle(mpq(3, 2))
    for b in (bits, 2 * bits, 4 * bits, 8 * bits):
        ta = angle_of_vector(ra, b)
        tb = angle_of_vector(rb, b)
        lo = ta.lo - tb.hi
        hi = ta.hi - tb.lo
        for shift in (0, 2, -2):
            if 0 < lo + shift and hi + shift < 2:
                rad = (ta.radians - tb.radians) % _TWO_PI
                return Angle(rad, lo + shift, hi + shift)
    raise DegenerateInputError("clockwise angle bracket did not stabilize")


def ccw_delta_bracket(v0: Point, v1: Point, bits: int = 50):
    """Signed rotation v0 -> v1 as a theta/pi bracket inside (-1, 1), or None.

    None means the rotation could not be certified strictly smaller than a
    half turn at this precision (exactly opposite vectors in particular);
    callers subdivide time until every piece resolves.
    """
    c = cross(v0, v1)
    d = dot(v0, v1)
    if c == 0:
        if d > 0:
            return mpq(0), mpq(0)
        return None
    t0 = angle_of_vector(v0, bits)
    t1 = angle_of_vector(v1, bits)
    lo = t1.lo - t0.hi
    hi = t1.hi - t0.lo
    for shift in (0, 2, -2):
        slo, shi = lo + shift, hi + shift
        if -1 < slo and shi < 1:
            return slo, shi
    return None


def angle_cmp(a: Point, b: Point) -> int:
    """Exact comparison of direction angles in [0, 2*pi) of nonzero vectors."""
    qa = _octant(a)
    qb = _octant(b)
    if qa != qb:
        return -1 if qa < qb else 1
    c = cross(a, b)
    return 0 if c == 0 else (-1 if c > 0 else 1)


def _octant(v: Point) -> int:
    x, y = v
    if x == 0 and y == 0:
        raise DegenerateInputError("octant of zero vector")
    if y == 0:
        return 0 if x > 0 else 4
    if x == 0:
        return 2 if y > 0 else 6
    if x > 0 and y > 0:
        return 1
    if x < 0 and y > 0:
        return 3
    if x < 0 and y < 0:
        return 5
    return 7
