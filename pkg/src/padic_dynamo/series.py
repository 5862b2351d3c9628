"""
Gauss norms, Weierstrass degrees, copolygons, distortion and disk images of
truncated power series about 0, plus the basin classification used for
attracting fixed points.

All norms are base-p exponents: ``||h||_{zeta(0, p^-rho)} = p^(-e)`` with
``e = min_n (v_p(a_n) + n*rho)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ConstantSeries, Inconclusive, TailNotDominated
from .exact_scalar import INF, LogRadius, as_scalar, valuation
from .newton import newton_polygon
from .poly import ExactPoly

__all__ = [
    "TailBound",
    "TruncatedSeries",
    "Breakpoint",
    "Copolygon",
    "ImageDisk",
    "Lemma52Certificate",
    "gauss_norm_exponent",
    "weierstrass_degree",
    "copolygon",
    "distortion",
    "distortion_right_slope",
    "image_disk",
    "lemma52_classify",
    "copolygon_csv",
]


@dataclass(frozen=True)
class TailBound:
    """Guarantee ``v_p(a_n) + n*reference >= bound`` for every index past the truncation."""

    reference: Fraction
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "reference", as_scalar(self.reference))
        object.__setattr__(self, "bound", as_scalar(self.bound))


@dataclass(frozen=True)
class TruncatedSeries:
    """``a_0 + a_1 z + ... + a_T z^T`` plus an optional certificate on the tail.

    Without a tail certificate the object is an exact polynomial.
    """

    poly: ExactPoly
    tail: Optional[TailBound] = None

    @classmethod
    def from_coeffs(cls, coeffs, tail: Optional[TailBound] = None) -> "TruncatedSeries":
        return cls(ExactPoly(coeffs), tail)

    @classmethod
    def polynomial(cls, f: ExactPoly) -> "TruncatedSeries":
        return cls(f, None)

    @property
    def truncation(self) -> int:
        return self.poly.degree

    def is_polynomial(self) -> bool:
        return self.tail is None

    def derivative(self) -> "TruncatedSeries":
        # n a_n z^(n-1): v(n a_n) + (n-1) rho >= B - rho at reference rho
        tail = None
        if self.tail is not None:
            tail = TailBound(self.tail.reference, self.tail.bound - self.tail.reference)
        return TruncatedSeries(self.poly.derivative(), tail)

    def minus_constant(self) -> "TruncatedSeries":
        return TruncatedSeries(self.poly - self.poly[0], self.tail)

    def __call__(self, x):
        if self.tail is not None:
            raise TailNotDominated("cannot evaluate a series with an uncertified tail exactly")
        return self.poly(as_scalar(x))


def _terms(h: TruncatedSeries, p: int, rho: Fraction) -> list:
    """``[(n, v(a_n) + n*rho)]`` over nonzero stored terms, after certifying the tail."""
    terms = [(n, valuation(c, p) + n * rho) for n, c in enumerate(h.poly.coeffs) if c]
    if h.tail is not None:
        if rho < h.tail.reference:
            raise TailNotDominated(
                f"tail certified only for exponents >= {h.tail.reference}, asked {rho}")
        if not terms:
            raise TailNotDominated("no stored term to dominate the tail")
        tail_low = h.tail.bound + (h.truncation + 1) * (rho - h.tail.reference)
        if tail_low <= min(e for _, e in terms):
            raise TailNotDominated(
                f"tail bound {tail_low} does not dominate the truncation at exponent {rho}")
    elif not terms:
        raise ValueError("the zero series has no norm")
    return terms


def gauss_norm_exponent(h: TruncatedSeries, p: int, rho) -> Fraction:
    """Exponent ``e`` with ``||h||_{zeta(0,r)} = p^-e`` on the closed disk of exponent ``rho``."""
    rho = as_scalar(rho)
    return Fraction(min(e for _, e in _terms(h, p, rho)))


def weierstrass_degree(h: TruncatedSeries, p: int, radius: LogRadius) -> int:
    """Smallest minimiser for open disks, greatest for closed ones."""
    terms = _terms(h, p, radius.exponent)
    low = min(e for _, e in terms)
    hits = [n for n, e in terms if e == low]
    return max(hits) if radius.closed else min(hits)


@dataclass(frozen=True)
class Breakpoint:
    exponent: Fraction
    value: Fraction
    right_slope: int


@dataclass(frozen=True)
class Copolygon:
    """Piecewise-linear ``log r -> log ||h||`` in exponent form.

    Breakpoints are listed by increasing exponent (decreasing radius);
    ``right_slope`` is the slope towards larger radii, i.e. the closed-disk
    Weierstrass degree.
    """

    prime: int
    breakpoints: tuple

    def value(self, rho) -> Fraction:
        rho = as_scalar(rho)
        bps = self.breakpoints
        if not bps[0].exponent <= rho <= bps[-1].exponent:
            raise ValueError("exponent outside the computed interval")
        for a, b in zip(bps, bps[1:]):
            if a.exponent <= rho <= b.exponent:
                # moving to larger exponents (smaller radii) the value rises by
                # slope * distance, where slope is b's right slope
                return a.value + b.right_slope * (rho - a.exponent)
        return bps[0].value

    def slopes(self) -> list:
        return [b.right_slope for b in self.breakpoints]


def copolygon(h: TruncatedSeries, p: int, lo, hi) -> Copolygon:
    """Copolygon of ``h`` on exponents ``[lo, hi]`` (radii ``p^-hi .. p^-lo``)."""
    lo, hi = as_scalar(lo), as_scalar(hi)
    if lo > hi:
        raise ValueError("empty interval")
    # certify at the largest radius; the tail margin only grows towards smaller radii
    _terms(h, p, lo)
    f = h.poly
    inner = set()
    if not f.is_zero():
        for v, _ in newton_polygon(f, p).root_valuations():
            if v is not INF and lo < v < hi:
                inner.add(Fraction(v))
    pts = [lo] + sorted(inner) + ([hi] if hi != lo else [])
    return Copolygon(p, tuple(
        Breakpoint(rho, gauss_norm_exponent(h, p, rho),
                   weierstrass_degree(h, p, LogRadius(rho, True))) for rho in pts))


def copolygon_csv(poly: Copolygon) -> str:
    rows = ["exponent,value,right_slope"]
    rows += [f"{b.exponent},{b.value},{b.right_slope}" for b in poly.breakpoints]
    return "\n".join(rows) + "\n"


def distortion(h: TruncatedSeries, p: int, rho) -> Fraction:
    """``log_p`` of the distortion on the closed disk of exponent ``rho``.

    >>> distortion(TruncatedSeries.from_coeffs([0, 0, 1]), 2, 5)
    Fraction(-1, 1)
    """
    rho = as_scalar(rho)
    return -rho + gauss_norm_exponent(h, p, rho) - gauss_norm_exponent(h.derivative(), p, rho)


def distortion_right_slope(h: TruncatedSeries, p: int, rho) -> int:
    """Slope of ``log r -> delta`` just to the right of ``log r``: ``1 + l - m``."""
    rad = LogRadius(as_scalar(rho), True)
    return 1 + weierstrass_degree(h.derivative(), p, rad) - weierstrass_degree(h, p, rad)


@dataclass(frozen=True)
class ImageDisk:
    center: Fraction
    radius: LogRadius
    multiplicity: int


def image_disk(h: TruncatedSeries, p: int, radius: LogRadius) -> ImageDisk:
    """Image of the disk about 0 with the given radius, and the covering degree."""
    g = h.minus_constant()
    if g.poly.is_zero() and g.tail is None:
        raise ConstantSeries("a constant series maps every disk to a point")
    e = gauss_norm_exponent(g, p, radius.exponent)
    m = weierstrass_degree(g, p, radius)
    return ImageDisk(h.poly[0], LogRadius(e, radius.closed), m)


# -- basin classification ----------------------------------------------------

GAMMA_MAPS_TO_ZERO = "GammaMapsToZero"
GAMMA_WANDERS = "GammaWanders"
CRITICAL_POINT_WANDERS = "CriticalPointWanders"
HYPOTHESIS_FAILS = "HypothesisFails"


@dataclass(frozen=True)
class Lemma52Certificate:
    verdict: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"verdict": self.verdict,
                           "witness": {k: _jsonable(v) for k, v in self.witness.items()}},
                          sort_keys=True)


def _jsonable(v):
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return str(v)
    if v is INF:
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _max_m_vm(p: int, d: int) -> int:
    return max(m * valuation(m, p) for m in range(1, d + 1))


def _closed_count(f: ExactPoly, p: int, sigma: Fraction) -> int:
    """Roots of f (with multiplicity) of valuation >= sigma."""
    return sum(mult for v, mult in newton_polygon(f, p).root_valuations() if v >= sigma)


def _solve_image_radius(h: TruncatedSeries, p: int, lo: Fraction, hi: Fraction,
                        target: Fraction) -> Fraction:
    """sigma in [lo, hi] with gauss_norm_exponent(h, sigma) == target (increasing in sigma)."""
    knots = [lo, hi] + [Fraction(v) for v, _ in newton_polygon(h.poly, p).root_valuations()
                        if v is not INF and lo < v < hi]
    knots = sorted(set(knots))
    for a, b in zip(knots, knots[1:]):
        ea, eb = gauss_norm_exponent(h, p, a), gauss_norm_exponent(h, p, b)
        if ea <= target <= eb:
            if ea == eb:
                return a
            return a + (b - a) * (target - ea) / (eb - ea)
    raise Inconclusive("no radius maps onto the target disk")


def lemma52_classify(h: TruncatedSeries, gamma, p: int, r_exponent=0,
                     budget: int = 64, height_cap: int = 4096) -> Lemma52Certificate:
    """Certify one of the three basin conclusions for ``h`` fixing 0 on ``D(0, R)``.

    ``r_exponent`` is the exponent of the radius R of the open disk.  The
    verdict is one of ``GammaMapsToZero``, ``GammaWanders``,
    ``CriticalPointWanders`` or ``HypothesisFails``; every non-failing verdict
    is backed by an exact computation recorded in ``witness``.
    """
    gamma = as_scalar(gamma)
    rho_R = as_scalar(r_exponent)
    f = h.poly
    if f[0] != 0:
        raise ValueError("h must fix 0")
    if f.is_zero():
        raise ValueError("h must be nontrivial")
    ell = f.zero_order()
    A_ell = f[ell]
    d = weierstrass_degree(h, p, LogRadius(rho_R, False))
    bound = _max_m_vm(p, d)
    lhs = valuation(A_ell, p) + (ell - 1) * rho_R
    witness = {"ell": ell, "weierstrass_degree": d, "lhs_exponent": lhs,
               "rhs_exponent": bound}
    if not lhs > bound:
        return Lemma52Certificate(HYPOTHESIS_FAILS, witness)

    image_e = gauss_norm_exponent(h, p, rho_R)
    if image_e < rho_R:
        raise ValueError("h does not map D(0,R) into itself")
    vg = valuation(gamma, p)
    if not (vg is INF or vg > rho_R):
        raise ValueError("gamma must lie in D(0,R)")
    if not h.is_polynomial():
        raise TailNotDominated("basin classification needs exact evaluation; pass a polynomial")

    # r: smallest radius with a nonzero root of h in the closed disk
    inner = [v for v, _ in newton_polygon(f, p).root_valuations()
             if v is not INF and v > rho_R]
    rho_r = Fraction(max(inner)) if inner else rho_R
    witness["r_exponent"] = rho_r

    y = f(gamma)
    witness["h_gamma"] = y
    if y == 0:
        return Lemma52Certificate(GAMMA_MAPS_TO_ZERO, witness)
    if valuation(y, p) > rho_r:
        witness["steps"] = 1
        return Lemma52Certificate(GAMMA_WANDERS, witness)

    df = f.derivative()
    crit = [(v, mult) for v, mult in newton_polygon(df, p).root_valuations()
            if v is not INF and v > rho_r] if not df.is_zero() else []
    if crit:
        witness["critical_valuations"] = [v for v, _ in crit]
        return Lemma52Certificate(CRITICAL_POINT_WANDERS, witness)

    # bounded forward iteration of gamma into the contraction zone
    x = y
    for k in range(2, budget + 1):
        x = f(x)
        if x == 0 or max(abs(x.numerator), x.denominator).bit_length() > height_cap:
            break
        if valuation(x, p) > rho_r:
            witness["steps"] = k
            return Lemma52Certificate(GAMMA_WANDERS, witness)

    # distortion argument: locate S and a radius where L has positive slope
    rho_S = _solve_image_radius(h, p, Fraction(vg), rho_r, rho_r)
    m = weierstrass_degree(h, p, LogRadius(rho_S, True))
    witness["S_exponent"] = rho_S
    witness["m"] = m
    knots = {rho_S, rho_r}
    for g in (f, df):
        for v, _ in newton_polygon(g, p).root_valuations():
            if v is not INF and rho_S < v < rho_r:
                knots.add(Fraction(v))
    knots = sorted(knots)
    sq = f.squarefree_part()
    for a, b in zip(knots, knots[1:]):
        sigma = (a + b) / 2
        n_h = _closed_count(f, p, sigma)
        n_dh = _closed_count(df, p, sigma)
        slope = m + m * n_dh - (m - 1) * n_h
        if slope > 0:
            b_distinct = _closed_count(sq, p, sigma)
            a_count = n_dh - n_h + b_distinct
            witness.update({"rho_exponent": sigma, "L_slope": slope, "M": n_dh,
                            "a": a_count, "b": b_distinct})
            if a_count > 0:
                return Lemma52Certificate(CRITICAL_POINT_WANDERS, witness)
    raise Inconclusive("no radius with positive L-slope carries a wandering critical point")
