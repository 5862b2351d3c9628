"""
Newton polygons of polynomials over Q and root counting in p-adic disks.

Slope convention: a segment of slope ``s`` and horizontal length ``L`` certifies
exactly ``L`` roots (with multiplicity, in C_p) of valuation ``-s``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroPolynomial
from .exact_scalar import INF, LogRadius, as_scalar, valuation
from .poly import ExactPoly

__all__ = [
    "NewtonPolygon",
    "newton_polygon",
    "root_valuations",
    "count_roots_in_disk",
    "is_squarefree",
    "polygon_csv",
]


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points ``(i, v_p(a_i))``.

    ``vertices`` are the hull corners from left to right; ``segments`` are
    ``(slope, length)`` pairs with strictly increasing slopes.
    """

    prime: int
    zero_order: int
    vertices: tuple
    segments: tuple

    @property
    def degree(self) -> int:
        return self.zero_order + sum(length for _, length in self.segments)

    def root_valuations(self) -> list:
        """``[(valuation, multiplicity), ...]``; the root 0 appears with valuation INF."""
        out = [(-slope, length) for slope, length in self.segments]
        out.sort(key=lambda t: t[0])
        if self.zero_order:
            out.append((INF, self.zero_order))
        return out

    def ordinate(self, x: Fraction) -> Fraction:
        """Height of the polygon above abscissa x (within the vertex range)."""
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (Fraction(x) - x0) / (x1 - x0)
        if self.vertices and x == self.vertices[0][0]:
            return self.vertices[0][1]
        raise ValueError(f"abscissa {x} outside the polygon")


def _lower_hull(points: list) -> list:
    hull: list = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(f: ExactPoly, p: int) -> NewtonPolygon:
    """Newton polygon of ``f`` at the prime ``p``.

    >>> newton_polygon(ExactPoly([2, 2, 1]), 2).segments
    ((Fraction(-1, 2), 2),)
    """
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    z0 = f.zero_order()
    pts = [(i, Fraction(valuation(c, p))) for i, c in enumerate(f.coeffs) if i >= z0 and c]
    hull = _lower_hull(pts)
    segs = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segs.append((Fraction(y1 - y0, x1 - x0), x1 - x0))
    return NewtonPolygon(p, z0, tuple(hull), tuple(segs))


def root_valuations(f: ExactPoly, p: int) -> list:
    return newton_polygon(f, p).root_valuations()


def count_roots_in_disk(f: ExactPoly, p: int, center, radius: LogRadius) -> int:
    """Number of roots of ``f`` (with multiplicity, in C_p) in a disk about ``center``.

    ``radius`` gives the exponent and polarity: open disks count roots ``x``
    with ``v(x - center) > exponent``, closed ones ``>=``.

    >>> count_roots_in_disk(ExactPoly([1, 0, 1]), 2, 1, LogRadius.open(0))
    2
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    g = f.taylor_shift(as_scalar(center))
    return sum(mult for v, mult in newton_polygon(g, p).root_valuations()
               if radius.contains_valuation(v))


_MODULAR_PRIMES = (1000003, 998244353, 2147483647, 4294967291, 1000000007)


def _fp_gcd_degree(a: list, b: list, q: int) -> int:
    a, b = _fp_trim([x % q for x in a]), _fp_trim([x % q for x in b])
    while b:
        inv = pow(b[-1], -1, q)
        while len(a) >= len(b):
            c = a[-1] * inv % q
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % q
            _fp_trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _fp_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def is_squarefree(f: ExactPoly) -> bool:
    """True iff gcd(f, f') is constant.

    A modular gcd of degree 0 at a prime not dividing the leading coefficient
    certifies squarefreeness; if every sampled prime is unlucky the exact
    rational gcd decides.
    """
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if f.degree <= 1:
        return True
    g = f.primitive()
    cs = g.int_coeffs()
    dcs = [i * c for i, c in enumerate(cs)][1:]
    for q in _MODULAR_PRIMES:
        if cs[-1] % q == 0:
            continue
        if _fp_gcd_degree(cs, dcs, q) == 0:
            return True
    return g.gcd(g.derivative()).is_constant()


def polygon_csv(f: ExactPoly, p: int) -> str:
    """CSV rows ``i, valuation, on_hull`` for every nonzero coefficient."""
    poly = newton_polygon(f, p)
    corners = {x for x, _ in poly.vertices}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "valuation", "on_hull"])
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        v = Fraction(valuation(c, p))
        on = 0
        if i >= poly.zero_order and (i in corners or poly.ordinate(i) == v):
            on = 1
        w.writerow([i, str(v), on])
    return buf.getvalue()
