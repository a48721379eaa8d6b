"""Exact rational scalars and small numeric helpers.

All coordinates in this package are arbitrary-precision rationals backed by
gmpy2's ``mpq``.  Geometry predicates never round; the helpers here exist to
*deliberately* coarsen numbers (dyadic snapping) where a result only has to
satisfy exactly re-verified constraints, which keeps bit lengths bounded
across long pipelines.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Tuple

import gmpy2
from gmpy2 import mpq, mpz

Scalar = type(mpq())  # runtime alias; annotations use "Scalar" loosely
Point = Tuple[Scalar, Scalar]

Q0 = mpq(0)
Q1 = mpq(1)


def rat(x, y=None):
    """Build an exact rational from ints, strings like '3/4', floats, or pairs."""
    if y is not None:
        return mpq(x, y)
    if isinstance(x, float):
        return mpq(Fraction(x))
    return mpq(x)


def is_rational(x) -> bool:
    return isinstance(x, (type(Q0), int, mpz))


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def dyadic_round(x, bits: int):
    """Nearest multiple of 2**-bits to x."""
    scale = mpz(1) << bits
    n = gmpy2.mpz(gmpy2.floor(x * scale + mpq(1, 2)))
    return mpq(n, scale)


def sqrt_lower(x, bits: int = 64):
    """A rational r with r >= 0 and r*r <= x (x >= 0), within 2**-bits of sqrt(x)."""
    if x < 0:
        raise ValueError("sqrt of negative rational")
    if x == 0:
        return Q0
    scale = mpz(1) << (2 * bits)
    n = gmpy2.isqrt(mpz(x.numerator) * scale // mpz(x.denominator))
    return mpq(n, mpz(1) << bits)


def sqrt_upper(x, bits: int = 64):
    """A rational r with r*r >= x (x >= 0)."""
    lo = sqrt_lower(x, bits)
    step = mpq(1, mpz(1) << bits)
    r = lo + step
    while r * r < x:  # at most one extra bump in practice
        r += step
    return r


def vec_sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def vec_add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def vec_scale(a: Point, k) -> Point:
    return (a[0] * k, a[1] * k)


def cross(a: Point, b: Point):
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Point, b: Point):
    return a[0] * b[0] + a[1] * b[1]


def dist2(a: Point, b: Point):
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


def point(x, y) -> Point:
    return (rat(x), rat(y))


def lerp(a: Point, b: Point, t) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def bbox(points: Iterable[Point]):
    xs = []
    ys = []
    for p in points:
        xs.append(p[0])
        ys.append(p[1])
    return min(xs), min(ys), max(xs), max(ys)
