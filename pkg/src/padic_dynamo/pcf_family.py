"""
Unicritical families ``f_c(z) = z^d + c``: critical-orbit polynomials,
Gleason factors, PCF root counts in disks, escape and stability certificates,
orbit-relation detection over Q, and the two worked families at p = 3 and
``d = p + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .bivariate import BiPoly
from .errors import BudgetExceeded
from .exact_scalar import INF, LogRadius, as_scalar, valuation
from .finite_field import ResidueField
from .newton import count_roots_in_disk, is_squarefree
from .poly import ExactPoly
from .ratmaps import (
    RationalMap,
    critical_points,
    good_reduction,
    multiplier,
    oo,
    reduce_point,
    residue_orbit,
)

__all__ = [
    "UnicriticalFamily",
    "OrbitRelation",
    "EscapeCertificate",
    "StabilityCertificate",
    "CriticalChain",
    "RelationReport",
    "Ex72Data",
    "Ex73Report",
    "critical_orbit_polys",
    "orbit_poly",
    "gleason_factor",
    "gleason_mod2_check",
    "count_pcf_in_disk",
    "escape_certificate",
    "stability_certificate",
    "detect_orbit_relations",
    "ex72_F",
    "ex72_F_iterate",
    "ex72_h_poly",
    "ex72_mod3_order",
    "ex72_ideal_membership",
    "ex72_data",
    "ex73_report",
]


@dataclass(frozen=True)
class UnicriticalFamily:
    """``z^d + c`` over Q, optionally recentred so that ``c = center + t``."""

    degree: int
    prime: int
    center: Optional[Fraction] = None

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("degree must be at least 2")
        if self.center is not None:
            a = as_scalar(self.center)
            v = valuation(a, self.prime)
            if v is not INF and v < 0:
                raise ValueError("center must be p-integral")
            object.__setattr__(self, "center", a)

    def map_at(self, c) -> RationalMap:
        cs = [as_scalar(c)] + [0] * (self.degree - 1) + [1]
        return RationalMap(ExactPoly(cs))


@dataclass(frozen=True)
class OrbitRelation:
    """``f^m(alpha_i) = f^n(alpha_j)`` between marked points labelled ``i`` and ``j``."""

    i: object
    m: int
    j: object
    n: int

    def __post_init__(self):
        if (self.i, self.m) == (self.j, self.n):
            raise ValueError("a relation needs two distinct orbit positions")
        if self.i == self.j and self.m > self.n:
            m, n = self.n, self.m
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "n", n)

    def to_json(self) -> dict:
        return {"i": str(self.i), "m": self.m, "j": str(self.j), "n": self.n}


# -- critical orbit polynomials ----------------------------------------------

def critical_orbit_polys(d: int, n: int) -> list:
    """``[f_c^0(0), ..., f_c^n(0)]`` as integer polynomials in c."""
    c = ExactPoly([0, 1])
    out = [ExactPoly()]
    for _ in range(n):
        out.append(out[-1] ** d + c)
    return out


def orbit_poly(d: int, m: int, n: int) -> ExactPoly:
    """``G_{m,n}(c) = f_c^n(0) - f_c^m(0)`` for ``z^d + c``.

    >>> orbit_poly(2, 1, 2).to_string("c")
    'c^2'
    """
    if not n > m >= 0:
        raise ValueError("need n > m >= 0")
    orbit = critical_orbit_polys(d, n)
    return orbit[n] - orbit[m]


def gleason_factor(n: int) -> ExactPoly:
    """``g_n(c) = f_c^n(0) + f_c^(n-1)(0)`` for ``z^2 + c``; monic of degree ``2^(n-1)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    orbit = critical_orbit_polys(2, n)
    return orbit[n] + orbit[n - 1]


def gleason_mod2_check(n: int) -> bool:
    """True iff ``g_n`` reduces mod 2 to the single monomial ``c^(2^(n-1))``."""
    g = gleason_factor(n)
    top = 2 ** (n - 1)
    return all((c.numerator % 2 == 0) == (i != top) for i, c in enumerate(g.int_coeffs()))


RelationSpec = Union[int, tuple, OrbitRelation]


def _relation_poly(d: int, relation: RelationSpec) -> ExactPoly:
    if isinstance(relation, int):
        if d != 2:
            raise ValueError("Gleason factors exist only for d = 2")
        return gleason_factor(relation)
    if isinstance(relation, OrbitRelation):
        return orbit_poly(d, relation.m, relation.n)
    m, n = relation
    return orbit_poly(d, m, n)


def count_pcf_in_disk(family: UnicriticalFamily, relation: RelationSpec, center,
                      radius: LogRadius) -> int:
    """Roots (with multiplicity) of a relation polynomial in a parameter disk.

    ``relation`` is a Gleason index (int, d = 2 only) or a pair ``(m, n)``.
    """
    center = as_scalar(center)
    v = valuation(center, family.prime)
    if v is not INF and v < 0:
        raise ValueError("center must be p-integral")
    poly = _relation_poly(family.degree, relation)
    return count_roots_in_disk(poly, family.prime, center, radius)


# -- certificates -------------------------------------------------------------

@dataclass(frozen=True)
class EscapeCertificate:
    parameter: Fraction
    degree: int
    prime: int
    valuations: tuple
    proof: str = "strictly decreasing valuations"

    def to_json(self) -> dict:
        return {"parameter": str(self.parameter), "degree": self.degree, "prime": self.prime,
                "valuations": [str(v) for v in self.valuations], "proof": self.proof}


def escape_certificate(d: int, p: int, c, k: int = 4) -> Optional[EscapeCertificate]:
    """Certificate that 0 escapes under ``z^d + c`` when ``v_p(c) < 0``, else None.

    Once ``v(x) < v(c)/d`` we have ``v(x^d + c) = d v(x)``, so the orbit
    valuations are ``d^(n-1) v(c)`` and never repeat.
    """
    c = as_scalar(c)
    v = valuation(c, p)
    if v is INF or v >= 0:
        return None
    vals = tuple(d ** (n - 1) * v for n in range(1, k + 1))
    return EscapeCertificate(c, d, p, vals)


@dataclass(frozen=True)
class CriticalChain:
    """Residue disks ``U_0, U_1, ...`` visited by one critical point; ``U_N = U_M``."""

    label: object
    disks: tuple
    M: int
    N: int

    def to_json(self) -> dict:
        return {"critical_point": str(self.label), "disks": [str(u) for u in self.disks],
                "M": self.M, "N": self.N}


@dataclass(frozen=True)
class StabilityCertificate:
    degree: int
    prime: int
    center: Fraction
    chains: tuple

    def chain(self, label) -> CriticalChain:
        for ch in self.chains:
            if ch.label == label or str(ch.label) == str(label):
                return ch
        raise KeyError(label)

    def to_json(self) -> dict:
        return {"degree": self.degree, "prime": self.prime, "center": str(self.center),
                "chains": [ch.to_json() for ch in self.chains]}


def _check_disk_step(d: int, p: int, a: Fraction, src, dst, samples: int = 3) -> bool:
    """Sampled check that ``f_c`` maps the residue disk ``src`` into ``dst`` for ``c`` near ``a``."""
    F = ResidueField(p)
    for s in range(samples):
        c = a + p * s
        f = UnicriticalFamily(d, p).map_at(c)
        for t in range(samples):
            x = oo if src is oo else Fraction(src + p * t)
            if src is oo:
                x = Fraction(1, p ** (t + 1))
            if reduce_point(f(x), p, F) != dst:
                return False
    return True


def stability_certificate(family: UnicriticalFamily, verify_samples: int = 3) -> StabilityCertificate:
    """Residue-disk chains of the critical points 0 and oo for parameters near ``center``.

    Every ``f_c`` with ``c`` in the residue disk of ``center`` has good
    reduction ``z^d + a-bar``, so the map sends the residue disk of ``x`` into
    the residue disk of ``f-bar(x)``.  That inclusion is also spot-checked on
    exact sample points.
    """
    d, p = family.degree, family.prime
    a = family.center if family.center is not None else Fraction(0)
    f = family.map_at(a)
    fbar = good_reduction(f, p)
    chains = []
    for label, start in ((Fraction(0), 0), (oo, oo)):
        data = residue_orbit(fbar, start)
        disks = [start]
        for _ in range(data.first_repeat):
            disks.append(fbar(disks[-1]))
        for u, w in zip(disks, disks[1:]):
            if verify_samples and not _check_disk_step(d, p, a, u, w, verify_samples):
                raise AssertionError(f"residue disk {u} not mapped into {w}")
        chains.append(CriticalChain(label, tuple(disks), data.preperiod, data.first_repeat))
    return StabilityCertificate(d, p, a, tuple(chains))


# -- orbit relations over Q --------------------------------------------------

@dataclass(frozen=True)
class RelationReport:
    """Graded evidence: ``status`` is 'relations', 'escape' or 'inconclusive'."""

    status: str
    relations: frozenset = frozenset()
    escape: Optional[EscapeCertificate] = None
    heights: tuple = ()

    @property
    def is_pcf(self) -> bool:
        return self.status == "relations"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "relations": sorted((r.to_json() for r in self.relations), key=lambda r: (r["i"], r["m"])),
            "escape": self.escape.to_json() if self.escape else None,
            "heights": list(self.heights),
        }


def _height_bits(x: Fraction) -> int:
    return max(abs(x.numerator).bit_length(), x.denominator.bit_length())


def detect_orbit_relations(d: int, p: int, c, budget: int = 64, height_cap: int = 4096) -> RelationReport:
    """Iterate the exact orbit of 0 under ``z^d + c`` and report what it shows.

    >>> sorted(r.n for r in detect_orbit_relations(2, 2, -1).relations)
    [1, 2]
    """
    c = as_scalar(c)
    esc = escape_certificate(d, p, c)
    if esc is not None:
        return RelationReport("escape", escape=esc)
    infinity = OrbitRelation(oo, 0, oo, 1)
    seen = {Fraction(0): 0}
    x = Fraction(0)
    heights = [0]
    for n in range(1, budget + 1):
        x = x ** d + c
        if x in seen:
            rel = OrbitRelation(Fraction(0), seen[x], Fraction(0), n)
            return RelationReport("relations", frozenset({rel, infinity}), heights=tuple(heights))
        seen[x] = n
        heights.append(_height_bits(x))
        if heights[-1] > height_cap:
            break
    return RelationReport("inconclusive", heights=tuple(heights))


# -- the family w^2 - 2w + (b + 3) at p = 3 ------------------------------------

def ex72_F() -> BiPoly:
    """``F_b(w) = w^2 - 2w + b + 3`` with ``t = b`` and ``z = w``."""
    return BiPoly({(0, 2): 1, (0, 1): -2, (1, 0): 1, (0, 0): 3})


def ex72_F_iterate(k: int) -> BiPoly:
    F = ex72_F()
    out = BiPoly.z()
    for _ in range(k):
        out = F.substitute_z(out)
    return out


def ex72_h_poly(n: int) -> ExactPoly:
    """``h_n(b) = F_b^(3^n)(-b) + b``; monic of degree ``2^(3^n)``.

    Only ``n <= 2`` is supported (degree 512 at ``n = 2``).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= 3:
        raise BudgetExceeded(f"h_{n} has degree 2^{3 ** n}")
    b = ExactPoly([0, 1])
    shift = ExactPoly([3, 1])
    x = -b
    for _ in range(3 ** n):
        x = x * (x - 2) + shift
    return x + b


def ex72_mod3_order(h: ExactPoly) -> int:
    """Order of vanishing at ``b = 0`` of the reduction of ``h`` mod 3."""
    for i, c in enumerate(h.int_coeffs()):
        if c % 3:
            return i
    raise ValueError("h vanishes identically mod 3")


def ex72_ideal_membership(q, n: int) -> bool:
    """Membership of an integer polynomial in ``<3, w^(n+1)> + b <b, w>^(n-1)``.

    ``q`` is a BiPoly in (b, w) or a dict ``{(i, j): coeff}`` for ``b^i w^j``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    terms = q.terms if isinstance(q, BiPoly) else BiPoly(q).terms
    for (i, j), c in terms.items():
        if c.denominator != 1:
            raise ValueError("coefficients must be integers")
        if c.numerator % 3 == 0 or j >= n + 1:
            continue
        if i < 1 or i + j < n:
            return False
    return True


@dataclass(frozen=True)
class Ex72Data:
    n: int
    degree: int
    monic: bool
    mod3_order: int
    squarefree: Optional[bool]
    roots_in_unit_disk: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def ex72_data(n: int, check_squarefree: bool = True) -> Ex72Data:
    h = ex72_h_poly(n)
    sf = is_squarefree(h) if check_squarefree else None
    inside = count_roots_in_disk(h, 3, 0, LogRadius.open(0))
    return Ex72Data(n, h.degree, h.leading == 1, ex72_mod3_order(h), sf, inside)


# -- the degree p+1 family with a repelling fixed critical value ---------------

@dataclass(frozen=True)
class Ex73Report:
    prime: int
    identities: dict
    critical: tuple
    multiplier: Fraction
    multiplier_valuation: object
    repelling: bool

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "identities": dict(self.identities),
            "critical": [{"point": str(pt), "local_degree": e, "multiplicity": e - 1}
                         for pt, e in self.critical],
            "multiplier": str(self.multiplier),
            "multiplier_valuation": str(self.multiplier_valuation),
            "repelling": self.repelling,
        }


def ex73_report(p: int) -> Ex73Report:
    """Portrait of ``(c + (p+1)/p)(p z^(p+1) - (p+1) z^p + 1)`` checked as identities in c."""
    q = Fraction(p + 1, p)
    gamma = BiPoly({(1, 0): 1, (0, 0): q})
    shape = BiPoly({(0, p + 1): p, (0, p): -(p + 1), (0, 0): 1})
    f = gamma * shape

    def image(z) -> BiPoly:
        return f.substitute_z(BiPoly.constant(z))

    identities = {
        "f(1) = 0": image(1).is_zero(),
        "f(0) = gamma": image(0) == gamma,
        "f((p+1)/p) = gamma": image(q) == gamma,
    }
    f0 = RationalMap(f.at_t(0))
    crit = [(pt, mult + 1) for pt, mult in critical_points(f0)]
    crit.sort(key=lambda t: (t[0] is not oo, t[0] if t[0] is not oo else 0))
    lam = multiplier(f0, q)
    v = valuation(lam, p)
    return Ex73Report(p, identities, tuple(crit), lam, v, v is not INF and v < 0)
