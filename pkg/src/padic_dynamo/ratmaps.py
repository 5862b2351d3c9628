"""
Rational maps over Q: iteration, critical points, multipliers, Mobius
conjugation, cross-ratios, explicit good reduction and residue-field orbits.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DegenerateQuadruple, NotFixed
from .exact_scalar import INF, as_scalar, valuation
from .finite_field import ResidueField
from .poly import ExactPoly, rational_roots

__all__ = [
    "oo",
    "ProjPoint",
    "RationalMap",
    "Mobius",
    "ReducedMap",
    "BAD",
    "OrbitData",
    "critical_points",
    "multiplier",
    "conjugate",
    "cross_ratio_lambda",
    "good_reduction",
    "reduce_point",
    "residue_orbit",
    "map_to_json",
    "map_from_json",
]


class _PointAtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    __str__ = __repr__

    def __reduce__(self):
        return (_PointAtInfinity, ())


oo = _PointAtInfinity()
ProjPoint = Union[Fraction, _PointAtInfinity]


def as_point(x) -> ProjPoint:
    if x is oo or (isinstance(x, str) and x.strip() in ("oo", "inf", "infinity")):
        return oo
    return as_scalar(x)


def _homog(x: ProjPoint) -> tuple:
    return (Fraction(1), Fraction(0)) if x is oo else (x, Fraction(1))


class RationalMap:
    """``f = num/den`` with coprime numerator and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, ExactPoly) else ExactPoly(num)
        den = ExactPoly([1]) if den is None else (den if isinstance(den, ExactPoly) else ExactPoly(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, ExactPoly([1])
            return
        g = num.gcd(den)
        if not g.is_constant():
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.leading
        self.num, self.den = num * (1 / lc), den.monic()

    @classmethod
    def polynomial(cls, f: ExactPoly) -> "RationalMap":
        return cls(f)

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        return isinstance(other, RationalMap) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalMap(({self.num.to_string()}) / ({self.den.to_string()}))"

    # evaluation --------------------------------------------------------
    def __call__(self, x):
        if isinstance(x, ExactPoly):
            raise TypeError("use compose() for polynomial arguments")
        x = as_point(x)
        if x is oo:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return oo
            if dn < dd:
                return Fraction(0)
            return self.num.leading / self.den.leading
        d = self.den(x)
        if d == 0:
            return oo
        return self.num(x) / d

    def iterate(self, x, n: int):
        for _ in range(n):
            x = self(x)
        return x

    def orbit(self, x, n: int) -> list:
        out = [as_point(x)]
        for _ in range(n):
            out.append(self(out[-1]))
        return out

    # algebra -------------------------------------------------------------
    def compose(self, inner: "RationalMap") -> "RationalMap":
        """self o inner."""
        d = self.degree
        G, H = inner.num, inner.den
        gp = [ExactPoly([1])]
        hp = [ExactPoly([1])]
        for _ in range(d):
            gp.append(gp[-1] * G)
            hp.append(hp[-1] * H)
        num = ExactPoly()
        den = ExactPoly()
        for i in range(d + 1):
            term = gp[i] * hp[d - i]
            if self.num[i]:
                num = num + term * self.num[i]
            if self.den[i]:
                den = den + term * self.den[i]
        return RationalMap(num, den)

    def __pow__(self, n: int) -> "RationalMap":
        if n < 1:
            raise ValueError("iterates start at 1")
        out = self
        for _ in range(n - 1):
            out = self.compose(out)
        return out

    def derivative(self) -> "RationalMap":
        P, Q = self.num, self.den
        return RationalMap(P.derivative() * Q - P * Q.derivative(), Q * Q)

    def wronskian(self) -> ExactPoly:
        return self.num.derivative() * self.den - self.num * self.den.derivative()


# -- Mobius transformations ---------------------------------------------------

@dataclass(frozen=True)
class Mobius:
    """``z -> (a z + b) / (c z + d)``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, as_scalar(getattr(self, k)))
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("singular Mobius transformation")

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, t) -> "Mobius":
        return cls(1, t, 0, 1)

    @classmethod
    def scaling(cls, s) -> "Mobius":
        return cls(s, 0, 0, 1)

    @classmethod
    def inversion(cls) -> "Mobius":
        return cls(0, 1, 1, 0)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        """self o other."""
        return Mobius(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def as_map(self) -> RationalMap:
        return RationalMap(ExactPoly([self.b, self.a]), ExactPoly([self.d, self.c]))

    def __call__(self, x):
        x, y = _homog(as_point(x))
        u, w = self.a * x + self.b * y, self.c * x + self.d * y
        return oo if w == 0 else u / w


def conjugate(f: RationalMap, h: Mobius) -> RationalMap:
    """``h^-1 o f o h``.

    >>> conjugate(RationalMap(ExactPoly([1, 0, 1])), Mobius.scaling(-1))
    RationalMap((-z^2 - 1) / (1))
    """
    return h.inverse().as_map().compose(f.compose(h.as_map()))


# -- critical points and multipliers -----------------------------------------

def critical_points(f: RationalMap) -> list:
    """Critical divisor ``[(point, multiplicity), ...]``.

    Each point is a Fraction (rational critical point), ``oo``, or a monic
    squarefree ExactPoly of degree >= 2 without rational roots, standing for
    all of its roots, each carrying the given multiplicity.  Counted with
    degrees, multiplicities sum to ``2d - 2``.
    """
    d = f.degree
    if d < 2:
        raise ValueError("critical points need degree >= 2")
    W = f.wronskian()
    out = []
    for factor, mult in W.squarefree_decomposition():
        for r in rational_roots(factor):
            out.append((r, mult))
            factor = factor.exact_div(ExactPoly([-r, 1]))
        if factor.degree >= 1:
            out.append((factor.monic(), mult))
    at_inf = 2 * d - 2 - W.degree
    if at_inf:
        out.append((oo, at_inf))
    return out


def multiplier(f: RationalMap, point) -> Fraction:
    """Derivative of ``f`` at a fixed point (in the chart ``1/z`` at infinity)."""
    point = as_point(point)
    image = f(point)
    if image is not point and (image is oo or point is oo or image != point):
        raise NotFixed(f"{point} is not fixed")
    if point is oo:
        g = conjugate(f, Mobius.inversion())
        return g.derivative()(Fraction(0))
    val = f.derivative()(point)
    if val is oo:
        raise NotFixed("derivative has a pole at the point")
    return val


def cross_ratio_lambda(b1, b2, b3, b4) -> Fraction:
    """``(b1-b2)(b3-b4) / ((b1-b4)(b3-b2))`` on the projective line."""
    pts = [_homog(as_point(b)) for b in (b1, b2, b3, b4)]

    def det(i, j):
        (x1, y1), (x2, y2) = pts[i], pts[j]
        return x1 * y2 - x2 * y1

    for i in range(4):
        for j in range(i + 1, 4):
            if det(i, j) == 0:
                raise DegenerateQuadruple("the four points must be pairwise distinct")
    return det(0, 1) * det(2, 3) / (det(0, 3) * det(2, 1))


# -- good reduction -----------------------------------------------------------

class _Bad:
    def __repr__(self):
        return "BAD"

    def __bool__(self):
        return False


BAD = _Bad()


@dataclass(frozen=True)
class ReducedMap:
    """``num/den`` over a residue field, already stripped of common factors."""

    field: ResidueField
    num: tuple
    den: tuple

    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def __call__(self, x):
        F = self.field
        if x is oo:
            dn, dd = len(self.num) - 1, len(self.den) - 1
            if dn > dd:
                return oo
            if dn < dd:
                return F.zero
            return F.mul(self.num[-1], F.inv(self.den[-1]))
        d = F.poly_eval(list(self.den), x)
        if F.is_zero(d):
            return oo
        return F.mul(F.poly_eval(list(self.num), x), F.inv(d))


def good_reduction(f: RationalMap, p: int, field: ResidueField | None = None):
    """Reduction ``f-bar`` if ``f`` has explicit good reduction at ``p``, else ``BAD``.

    The pair (num, den) is scaled by its coefficient of least valuation
    (ties: lowest index, numerator first) before reducing.
    """
    F = field or ResidueField(p)
    coeffs = list(f.num.coeffs) + list(f.den.coeffs)
    best = None
    for c in coeffs:
        if c:
            v = valuation(c, p)
            if best is None or v < best[0]:
                best = (v, c)
    scale = 1 / best[1]
    num = F.poly_trim([F.reduce(c * scale) for c in f.num.coeffs])
    den = F.poly_trim([F.reduce(c * scale) for c in f.den.coeffs])
    if not den or not num:
        return BAD
    g = F.poly_gcd(num, den)
    if len(g) > 1:
        num = F.poly_divmod(num, g)[0]
        den = F.poly_divmod(den, g)[0]
    deg = max(len(num), len(den)) - 1
    if deg != f.degree:
        return BAD
    return ReducedMap(F, tuple(num), tuple(den))


def reduce_point(x, p: int, field: ResidueField | None = None):
    """Reduction ``P^1(Q) -> P^1(residue field)``."""
    F = field or ResidueField(p)
    x = as_point(x)
    if x is oo:
        return oo
    v = valuation(x, p)
    if v is not INF and v < 0:
        return oo
    return F.reduce(x)


class OrbitData(NamedTuple):
    preperiod: int
    first_repeat: int

    @property
    def cycle_length(self) -> int:
        return self.first_repeat - self.preperiod


def residue_orbit(fbar: ReducedMap, x) -> OrbitData:
    """Minimal ``M < N`` with ``fbar^N(x) = fbar^M(x)``."""
    seen = {}
    n = 0
    while x not in seen:
        seen[x] = n
        x = fbar(x)
        n += 1
    return OrbitData(seen[x], n)


# -- serialisation ------------------------------------------------------------

def map_to_json(f: RationalMap) -> dict:
    return {"numerator": [str(c) for c in f.num.coeffs],
            "denominator": [str(c) for c in f.den.coeffs],
            "degree": f.degree}


def map_from_json(obj) -> RationalMap:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return RationalMap(ExactPoly(obj["numerator"]), ExactPoly(obj["denominator"]))
