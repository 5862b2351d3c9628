"""
Flexible Lattes maps on Legendre curves ``y^2 = x(x-1)(x-lambda)`` and
Milnor's four-point criterion.

Algebraic critical points are never constructed.  A finite set of points of
P^1 is a squarefree polynomial (its roots) plus a flag for infinity, and the
image of such a set under a rational map is read off from a characteristic
polynomial in ``Q[z]/(q)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, UnsupportedM
from .exact_scalar import as_scalar
from .poly import ExactPoly, rational_roots
from .ratmaps import Mobius, RationalMap, oo

__all__ = [
    "LegendreCurve",
    "LattesSpec",
    "PointSet",
    "MilnorVerdict",
    "x_multiplication",
    "torsion_translation",
    "flexible_lattes",
    "critical_set",
    "postcritical_set",
    "milnor_criterion",
]

TORSION_MARKERS = ("O", "(0,0)", "(1,0)", "(lambda,0)")


@dataclass(frozen=True)
class LegendreCurve:
    lam: Fraction

    def __post_init__(self):
        lam = as_scalar(self.lam)
        if lam in (0, 1):
            raise ValueError("lambda must avoid 0 and 1")
        object.__setattr__(self, "lam", lam)

    @property
    def cubic(self) -> ExactPoly:
        """``x(x-1)(x-lambda)``."""
        return ExactPoly.from_roots([0, 1, self.lam])

    def two_torsion_x(self) -> tuple:
        return (Fraction(0), Fraction(1), self.lam)

    def torsion_x(self, marker: str):
        """x-coordinate of a 2-torsion marker; ``None`` for the origin O."""
        table = dict(zip(TORSION_MARKERS, (None,) + self.two_torsion_x()))
        if marker not in table:
            raise ValueError(f"unknown 2-torsion marker {marker!r}")
        return table[marker]


@dataclass(frozen=True)
class LattesSpec:
    curve: LegendreCurve
    m: int = 2
    T: str = "O"
    h: Mobius = Mobius.identity()

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        self.curve.torsion_x(self.T)


def x_multiplication(m: int, curve: LegendreCurve) -> RationalMap:
    """The map ``x(P) -> x([m]P)`` of degree ``m^2``, for ``m`` in {2, 3}.

    >>> x_multiplication(2, LegendreCurve(2)).degree
    4
    """
    lam = curve.lam
    f = curve.cubic
    x = ExactPoly([0, 1])
    if m == 2:
        return RationalMap((x * x - lam) ** 2, f * 4)
    if m == 3:
        # division polynomials of y^2 = x^3 + a2 x^2 + a4 x
        a2, a4 = -(1 + lam), lam
        b2, b4, b8 = 4 * a2, 2 * a4, -a4 * a4
        psi3 = ExactPoly([b8, 0, 3 * b4, b2, 3])
        p4 = ExactPoly([b4 * b8, b2 * b8, 10 * b8, 0, 5 * b4, b2, 2])
        return RationalMap(x * psi3 * psi3 - f * p4 * 4, psi3 * psi3)
    raise UnsupportedM(f"m = {m} is not supported (only 2 and 3)")


def torsion_translation(curve: LegendreCurve, marker: str) -> Mobius:
    """``x(P) -> x(P + T)`` for a 2-torsion point T."""
    e = curve.torsion_x(marker)
    if e is None:
        return Mobius.identity()
    e1, e2 = [r for r in curve.two_torsion_x() if r != e]
    return Mobius(e, (e - e1) * (e - e2) - e * e, 1, -e)


def flexible_lattes(spec: LattesSpec) -> RationalMap:
    """``h o x(psi) o h^-1`` with ``psi(P) = [m]P + T``; degree ``m^2``."""
    g = torsion_translation(spec.curve, spec.T).as_map().compose(
        x_multiplication(spec.m, spec.curve))
    return spec.h.as_map().compose(g.compose(spec.h.inverse().as_map()))


# -- finite point sets ---------------------------------------------------------

@dataclass(frozen=True)
class PointSet:
    """Roots of a monic squarefree polynomial, plus infinity when ``infinity`` is set."""

    poly: ExactPoly
    infinity: bool = False

    @classmethod
    def of(cls, poly: ExactPoly, infinity: bool = False) -> "PointSet":
        if poly.is_zero():
            raise ValueError("the zero polynomial does not describe a finite set")
        return cls(poly.squarefree_part().monic() if poly.degree > 0 else ExactPoly([1]), infinity)

    @classmethod
    def from_points(cls, points) -> "PointSet":
        poly = ExactPoly([1])
        inf = False
        for pt in points:
            if pt is oo:
                inf = True
            else:
                poly = poly * ExactPoly([-as_scalar(pt), 1])
        return cls.of(poly, inf)

    @property
    def size(self) -> int:
        return self.poly.degree + int(self.infinity)

    def __contains__(self, pt) -> bool:
        if pt is oo:
            return self.infinity
        return self.poly(as_scalar(pt)) == 0

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet.of(self.poly * other.poly, self.infinity or other.infinity)

    def intersection_size(self, other: "PointSet") -> int:
        g = self.poly.gcd(other.poly)
        return g.degree + int(self.infinity and other.infinity)

    def image(self, f: RationalMap) -> "PointSet":
        """``f(self)`` as a set."""
        out = PointSet.of(ExactPoly([1]), False)
        if self.infinity:
            out = out.union(PointSet.from_points([f(oo)]))
        q = self.poly
        if q.degree < 1:
            return out
        poles = q.gcd(f.den)
        if not poles.is_constant():
            out = PointSet.of(out.poly, True)
            q = q.exact_div(poles)
        if q.degree < 1:
            return out
        theta = (f.num * _inverse_mod(f.den % q, q)) % q
        return out.union(PointSet.of(_charpoly_mod(theta, q), out.infinity))

    def to_json(self) -> dict:
        return {"finite": [str(c) for c in self.poly.coeffs], "infinity": self.infinity,
                "size": self.size}

    def describe(self) -> str:
        roots = []
        rest = self.poly
        linear = [ExactPoly([-r, 1]) for r in rational_roots(rest)]
        for lf in linear:
            rest = rest.exact_div(lf)
            roots.append(str(-lf[0]))
        if rest.degree > 0:
            roots.append(f"roots({rest.to_string()})")
        if self.infinity:
            roots.append("oo")
        return "{" + ", ".join(roots) + "}"


def _inverse_mod(a: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Inverse of ``a`` in ``Q[z]/(q)`` by the extended Euclidean algorithm."""
    r0, r1 = q, a
    s0, s1 = ExactPoly(), ExactPoly([1])
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
    if r0.degree != 0:
        raise ZeroDivisionError("not invertible modulo q")
    return s0 / r0[0]


def _charpoly_mod(theta: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Characteristic polynomial of multiplication by ``theta`` on ``Q[z]/(q)``."""
    k = q.degree
    cols = []
    basis = ExactPoly([1])
    for _ in range(k):
        v = (theta * basis) % q
        cols.append([v[i] for i in range(k)])
        basis = (basis * ExactPoly([0, 1])) % q
    A = [[cols[j][i] for j in range(k)] for i in range(k)]
    # Faddeev-LeVerrier
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * k for _ in range(k)]
    ck = Fraction(1)
    for m in range(1, k + 1):
        Mk = [[sum(A[i][l] * Mk[l][j] for l in range(k)) + (ck if i == j else 0)
               for j in range(k)] for i in range(k)]
        AM = [[sum(A[i][l] * Mk[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
        ck = -sum(AM[i][i] for i in range(k)) / m
        coeffs.append(ck)
    return ExactPoly(list(reversed(coeffs)))


# -- critical and postcritical sets -------------------------------------------

def critical_set(f: RationalMap) -> tuple:
    """``(PointSet of critical points, all simple?)``."""
    W = f.wronskian()
    at_inf = 2 * f.degree - 2 - W.degree
    simple = at_inf <= 1 and (W.degree < 1 or W.squarefree_part().degree == W.degree)
    return PointSet.of(W, at_inf > 0), simple


def postcritical_set(f: RationalMap, budget: int = 32):
    """``(postcritical set, strictly postcritical set)`` by iterating images to a fixed point."""
    crit, _ = critical_set(f)
    strict = crit.image(f)
    for _ in range(budget):
        nxt = strict.union(strict.image(f))
        if nxt.size == strict.size:
            return crit.union(strict), strict
        strict = nxt
    raise BudgetExceeded("critical orbits did not close within the budget")


@dataclass(frozen=True)
class MilnorVerdict:
    passes: bool
    strictly_postcritical_count: int
    all_critical_simple: bool
    none_strictly_postcritical_critical: bool
    critical: PointSet
    strictly_postcritical: PointSet

    def to_json(self) -> dict:
        return {
            "passes": self.passes,
            "strictly_postcritical_count": self.strictly_postcritical_count,
            "all_critical_simple": self.all_critical_simple,
            "none_strictly_postcritical_critical": self.none_strictly_postcritical_critical,
            "critical": self.critical.to_json(),
            "strictly_postcritical": self.strictly_postcritical.to_json(),
            "strictly_postcritical_points": self.strictly_postcritical.describe(),
        }


def milnor_criterion(f: RationalMap, budget: int = 32) -> MilnorVerdict:
    """Four strictly postcritical points, all critical points simple, none of them postcritical."""
    crit, simple = critical_set(f)
    _, strict = postcritical_set(f, budget)
    disjoint = crit.intersection_size(strict) == 0
    count = strict.size
    return MilnorVerdict(count == 4 and simple and disjoint, count, simple, disjoint, crit, strict)
