"""
The return map ``Psi_c`` of a residue-disk cycle, its attracting/indifferent
dichotomy, attracting fixed points, and the iterative logarithm
``p^-n (Psi_c^(p^n)(z) - z)`` with certified error exponents.

All sizes are valuation exponents: a radius ``R`` is stored as ``rho_R`` with
``R = p^-rho_R``.  Arithmetic at a fixed parameter runs on integer residues
modulo ``p^K``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bivariate import BiPoly
from .errors import (
    CertificateFailure,
    NotAttracting,
    NotIndifferent,
    PrecisionError,
    PrecisionExhausted,
)
from .exact_scalar import INF, CappedPadic, as_scalar, int_valuation, padic_residue, valuation
from .poly import ExactPoly
from .pcf_family import UnicriticalFamily, escape_certificate, stability_certificate

__all__ = [
    "BivariateSeries",
    "CaseTag",
    "ATTRACTING",
    "Radii",
    "IterLog",
    "PreperiodicVerdict",
    "VerdictRecord",
    "build_psi",
    "build_psi_at",
    "classify_case",
    "t_s",
    "attracting_fixed_point",
    "indifferent_radii",
    "cn_exponent",
    "iterlog_error_bound",
    "iterative_log",
    "preperiodic_verdict",
    "attracting_verdict",
    "parameter_verdict",
]


def _v(x, p):
    return valuation(x, p) if x else INF


@dataclass(frozen=True)
class BivariateSeries:
    """``Psi(t, z) = sum A[i, j] t^i z^j`` with ``c = center + t``.

    The region is ``v(t) > sigma_S`` and ``v(z) > rho_R``; construction checks
    ``v(A[i, j]) + i*sigma_S + j*rho_R >= rho_R`` for every coefficient, with
    strict inequality at ``(0, 0)``.
    """

    poly: BiPoly
    prime: int
    sigma_S: Fraction = Fraction(0)
    rho_R: Fraction = Fraction(0)
    center: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("sigma_S", "rho_R", "center"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        p = self.prime
        for (i, j), a in self.poly.terms.items():
            lhs = valuation(a, p) + i * self.sigma_S + j * self.rho_R
            if lhs < self.rho_R or ((i, j) == (0, 0) and lhs == self.rho_R):
                raise CertificateFailure(
                    f"coefficient A[{i},{j}] = {a} violates the bound on the region")

    def A(self, i: int, j: int) -> Fraction:
        return self.poly[(i, j)]

    def z_coefficients(self, c) -> list:
        """Coefficients of ``Psi_c`` in z at the actual parameter c."""
        return list(self.poly.at_t(as_scalar(c) - self.center).coeffs)

    def power(self, e: int) -> "BivariateSeries":
        """``Psi^e`` in z, on the same region."""
        out = BiPoly.z()
        for _ in range(e):
            out = self.poly.substitute_z(out)
        return BivariateSeries(out, self.prime, self.sigma_S, self.rho_R, self.center)


@dataclass(frozen=True)
class CaseTag:
    kind: str
    e: Optional[int] = None

    def __str__(self):
        return self.kind if self.e is None else f"{self.kind}(e={self.e})"


ATTRACTING = CaseTag("Attracting")


def build_psi(family: UnicriticalFamily, M: int, N: int) -> BivariateSeries:
    """``Psi(t, z) = f^(N-M)(z + f^M(0)) - f^M(0)`` with ``c = center + t``.

    ``(M, N)`` must come from the residue orbit of the critical point 0 under
    the reduction at the family's center.
    """
    if not N > M >= 0:
        raise ValueError("need N > M >= 0")
    d, p = family.degree, family.prime
    a = family.center if family.center is not None else Fraction(0)
    c = BiPoly({(0, 0): a, (1, 0): 1})
    x = BiPoly()
    for _ in range(M):
        x = x ** d + c
    w = BiPoly.z() + x
    for _ in range(N - M):
        w = w ** d + c
    psi = w - x
    base = psi.at_t(0)
    if base.is_zero():
        a00 = Fraction(0)
    else:
        a00 = base[0]
    if a00 and valuation(a00, p) <= 0:
        raise CertificateFailure(f"(M, N) = ({M}, {N}) is not a residue cycle at center {a}")
    return BivariateSeries(psi, p, 0, 0, a)


def build_psi_at(family: UnicriticalFamily, c, M: int, N: int) -> BivariateSeries:
    """``Psi_c`` at a single parameter, as a one-point family centred at ``c``.

    Composition happens in z only, so long cycles and their iterates stay
    cheap.  Every estimate applies with ``t = 0``.
    """
    if not N > M >= 0:
        raise ValueError("need N > M >= 0")
    d, p = family.degree, family.prime
    c = as_scalar(c)
    a = family.center if family.center is not None else Fraction(0)
    v = valuation(c - a, p)
    if v is not INF and v <= 0:
        raise ValueError(f"parameter {c} lies outside the residue disk of {a}")
    x = Fraction(0)
    for _ in range(M):
        x = x ** d + c
    w = ExactPoly([x, 1])
    power = ExactPoly.monomial(d)
    for _ in range(N - M):
        w = power.compose(w) + c
    psi = w - x
    if psi[0] and valuation(psi[0], p) <= 0:
        raise CertificateFailure(f"(M, N) = ({M}, {N}) is not a residue cycle at {c}")
    return BivariateSeries(BiPoly.from_z_poly(psi), p, 0, 0, c)


def classify_case(psi: BivariateSeries) -> CaseTag:
    """Attracting iff ``v(A[0,1]) > 0``, else Indifferent with the order of its residue."""
    p = psi.prime
    a01 = psi.A(0, 1)
    if a01 == 0 or valuation(a01, p) > 0:
        return ATTRACTING
    if valuation(a01, p) < 0:
        raise CertificateFailure("A[0,1] is not integral")
    r = padic_residue(a01, p, 1)
    e, x = 1, r
    while x != 1:
        x = x * r % p
        e += 1
    return CaseTag("Indifferent", e)


def _sigma_for(psi: BivariateSeries, c) -> Fraction:
    t = as_scalar(c) - psi.center
    if t == 0:
        return psi.sigma_S + 1
    s = Fraction(valuation(t, psi.prime))
    if s <= psi.sigma_S:
        raise ValueError(f"parameter {c} lies outside the certified region")
    return s


def t_s(psi: BivariateSeries, sigma_s) -> Fraction:
    """Exponent of ``t_s = max(s/S, |A00|/R, |A01|)``, for ``s`` with exponent ``sigma_s``."""
    sigma_s = as_scalar(sigma_s)
    if classify_case(psi) != ATTRACTING:
        raise NotAttracting("A[0,1] is a unit")
    if sigma_s <= psi.sigma_S:
        raise ValueError("need s < S")
    p = psi.prime
    return min(sigma_s - psi.sigma_S, _v(psi.A(0, 0), p) - psi.rho_R, _v(psi.A(0, 1), p))


# -- residue arithmetic at a fixed parameter ----------------------------------

def _residue_coeffs(psi: BivariateSeries, c, K: int) -> list:
    mod = psi.prime ** K
    out = []
    for a in psi.z_coefficients(c):
        if a and valuation(a, psi.prime) < 0:
            raise ValueError("Psi_c has non-integral coefficients; rescale the region")
        out.append(padic_residue(a, psi.prime, K) if a else 0)
    return out, mod


def _horner(cs: list, x: int, mod: int) -> int:
    acc = 0
    for a in reversed(cs):
        acc = (acc * x + a) % mod
    return acc


def _to_capped(r: int, p: int, K: int, shift: int = 0) -> CappedPadic:
    """``r / p^shift`` where ``r`` is known modulo ``p^K``."""
    r %= p ** K
    if r == 0:
        return CappedPadic.inexact_zero(p, K - shift)
    v = int_valuation(r, p)
    return CappedPadic(p, v - shift, (r // p ** v) % p ** (K - v), K - v)


def attracting_fixed_point(psi: BivariateSeries, c, precision: int) -> CappedPadic:
    """``beta`` with ``Psi_c(beta) = beta`` modulo ``p^precision``, from the orbit of 0.

    The gaps ``|g_(n+1) - g_n|`` shrink by ``t_s`` per step, which caps the
    iteration count in advance.
    """
    p = psi.prime
    tau = t_s(psi, _sigma_for(psi, c))
    cs, mod = _residue_coeffs(psi, c, precision)
    n_max = math.ceil((precision - psi.rho_R) / tau) + 1
    g = 0
    for _ in range(n_max + 1):
        nxt = _horner(cs, g, mod)
        if nxt == g:
            return _to_capped(g, p, precision)
        g = nxt
    raise PrecisionError("fixed-point iteration exceeded its a priori bound")


# -- indifferent case ----------------------------------------------------------

@dataclass(frozen=True)
class Radii:
    """Exponents of ``s``, ``s~``, ``r`` and ``t`` for the indifferent estimates."""

    sigma_s: Fraction
    sigma_tilde: Fraction
    rho_r: Fraction
    t: Fraction


def indifferent_radii(psi: BivariateSeries, sigma_s) -> Radii:
    """Deterministic choice of ``s~ in (s, S)``, ``r`` and ``t`` (midpoints and half-slack)."""
    p = psi.prime
    sigma_s = as_scalar(sigma_s)
    if sigma_s <= psi.sigma_S:
        raise ValueError("need s < S")
    a01 = psi.A(0, 1)
    if a01 == 0 or valuation(a01, p) != 0 or _v(a01 - 1, p) <= 0:
        raise NotIndifferent("need |A01 - 1| < 1; replace Psi by an iterate first")
    sig_t = (sigma_s + psi.sigma_S) / 2
    v00 = _v(psi.A(0, 0), p)
    upper = psi.rho_R + sig_t - psi.sigma_S
    if v00 is not INF:
        upper = min(upper, Fraction(v00))
    rho_r = (psi.rho_R + upper) / 2
    slack = [_v(a01 - 1, p), rho_r - psi.rho_R, psi.rho_R + sig_t - psi.sigma_S - rho_r]
    if v00 is not INF:
        slack.append(v00 - rho_r)
    t = min(Fraction(x) for x in slack) / 2
    return Radii(sigma_s, sig_t, rho_r, t)


def cn_exponent(t_exp, p: int, n: int) -> Optional[Fraction]:
    """Exponent of ``C_n = max_k |k|^-1 (t |p|^(-1/(p^n (p-1))))^k``; None if infinite.

    Over ``p^j <= k < p^(j+1)`` the term is largest at ``k = p^j``, so the
    maximum is ``min_j (p^j tau - j)`` in exponents; the increments
    ``p^j (p-1) tau - 1`` grow with j, so the scan stops at the first positive one.
    """
    tau = as_scalar(t_exp) - Fraction(1, p ** n * (p - 1))
    if tau <= 0:
        return None
    best = tau
    j = 0
    while p ** j * (p - 1) * tau - 1 <= 0:
        j += 1
        best = min(best, p ** j * tau - j)
    return best


def iterlog_error_bound(t_exp, p: int, n: int, rho_r=0) -> Optional[Fraction]:
    """Exponent of ``C_n r |p|^n``; None while ``C_n`` is infinite."""
    cn = cn_exponent(t_exp, p, n)
    return None if cn is None else cn + as_scalar(rho_r) + n


@dataclass(frozen=True)
class IterLog:
    approximation: CappedPadic
    error_exponent: Optional[Fraction]
    n: int


def iterative_log(psi: BivariateSeries, c, z, n: int, radii: Optional[Radii] = None,
                  precision_cap: int = 4096) -> IterLog:
    """``p^-n (Psi_c^(p^n)(z) - z)`` with the exponent of its distance to the limit."""
    p = psi.prime
    if radii is None:
        radii = indifferent_radii(psi, _sigma_for(psi, c))
    z = as_scalar(z)
    if z and valuation(z, p) < radii.rho_r:
        raise ValueError(f"z = {z} lies outside the disk of exponent {radii.rho_r}")
    err = iterlog_error_bound(radii.t, p, n, radii.rho_r)
    want = 8 if err is None else max(1, math.ceil(err) + 2)
    K = n + want
    if K > precision_cap:
        raise PrecisionExhausted(f"need p^{K} but the cap is p^{precision_cap}")
    cs, mod = _residue_coeffs(psi, c, K)
    z0 = padic_residue(z, p, K) if z else 0
    x = z0
    for _ in range(p ** n):
        x = _horner(cs, x, mod)
    return IterLog(_to_capped(x - z0, p, K, shift=n), err, n)


@dataclass(frozen=True)
class PreperiodicVerdict:
    """``NonzeroCertified`` (not preperiodic) or ``PossiblyZero`` (consistent with it)."""

    kind: str
    approximation: Optional[CappedPadic]
    error_exponent: Optional[Fraction]
    n_used: Optional[int]

    @property
    def certified(self) -> bool:
        return self.kind == "NonzeroCertified"


def preperiodic_verdict(psi: BivariateSeries, c, z=0, schedule=range(1, 7)) -> PreperiodicVerdict:
    """Escalate n until ``|approximation|`` beats the error bound, if ever."""
    radii = indifferent_radii(psi, _sigma_for(psi, c))
    last = None
    for n in schedule:
        res = iterative_log(psi, c, z, n, radii)
        last = res
        if res.error_exponent is None:
            continue
        a = res.approximation
        if not a.is_inexact_zero() and a.valuation is not INF and a.valuation < res.error_exponent:
            return PreperiodicVerdict("NonzeroCertified", a, res.error_exponent, n)
    if last is None:
        raise ValueError("empty schedule")
    return PreperiodicVerdict("PossiblyZero", last.approximation, last.error_exponent, last.n)


def attracting_verdict(psi: BivariateSeries, c, precisions=(16, 32, 64)) -> PreperiodicVerdict:
    """Does the orbit of 0 land on the attracting fixed point?

    With ``lambda = Psi_c'(beta)`` of valuation ``a``, every ``w != 0`` with
    ``v(w) > a + rho_R`` satisfies ``|H(w)| = |lambda||w|`` where
    ``H(w) = Psi_c(w + beta) - beta``; such an orbit never reaches 0.  So a
    single iterate ``Psi^n(0) - beta`` of determined valuation above that
    threshold certifies that 0 is not preperiodic.
    """
    p = psi.prime
    tau = t_s(psi, _sigma_for(psi, c))
    last = None
    for K in precisions:
        beta = attracting_fixed_point(psi, c, K)
        cs, mod = _residue_coeffs(psi, c, K)
        b = beta.residue(K) if not beta.is_inexact_zero() else 0
        deriv = [(j * a) % mod for j, a in enumerate(cs)][1:]
        lam = _horner(deriv, b, mod)
        if lam == 0:
            last = (K, None)
            continue
        threshold = int_valuation(lam, p) + psi.rho_R
        x = 0
        steps = math.ceil((K - psi.rho_R) / tau) + 2
        for n in range(steps + 1):
            w = (x - b) % mod
            if w == 0:
                break
            if int_valuation(w, p) > threshold:
                return PreperiodicVerdict("NonzeroCertified", _to_capped(w, p, K), Fraction(threshold), n)
            x = _horner(cs, x, mod)
        last = (K, threshold)
    K, threshold = last
    return PreperiodicVerdict("PossiblyZero", CappedPadic.inexact_zero(p, K),
                              None if threshold is None else Fraction(threshold), None)


# -- parameter-level dispatch ------------------------------------------------

@dataclass(frozen=True)
class VerdictRecord:
    c: Fraction
    degree: int
    prime: int
    case: str
    e: Optional[int]
    M: Optional[int]
    N: Optional[int]
    n_used: Optional[int]
    approximation_valuation: object
    error_exponent: Optional[Fraction]
    verdict: str
    beta: Optional[CappedPadic] = None

    def to_json(self) -> dict:
        def s(x):
            return None if x is None else str(x)
        return {
            "c": str(self.c), "d": self.degree, "p": self.prime, "case": self.case,
            "e": self.e, "M": self.M, "N": self.N, "n_used": self.n_used,
            "approximation_valuation": s(self.approximation_valuation),
            "error_exponent": s(self.error_exponent), "verdict": self.verdict,
            "beta": None if self.beta is None else str(self.beta),
        }


def parameter_verdict(d: int, p: int, c, schedule=range(1, 7), precisions=(16, 32, 64),
                      beta_precision: int = 5) -> VerdictRecord:
    """Escape, attracting or indifferent verdict for the critical point 0 of ``z^d + c``."""
    c = as_scalar(c)
    esc = escape_certificate(d, p, c)
    if esc is not None:
        return VerdictRecord(c, d, p, "Escape", None, None, None, len(esc.valuations),
                             None, None, "Escapes")
    a = padic_residue(c, p, 1)
    family = UnicriticalFamily(d, p, a)
    chain = stability_certificate(family, verify_samples=0).chain(Fraction(0))
    M, N = chain.M, chain.N
    psi = build_psi_at(family, c, M, N)
    case = classify_case(psi)
    if case == ATTRACTING:
        beta = attracting_fixed_point(psi, c, beta_precision)
        ver = attracting_verdict(psi, c, precisions)
        av = None if ver.approximation is None else ver.approximation.valuation
        return VerdictRecord(c, d, p, str(case), None, M, N, ver.n_used, av,
                             ver.error_exponent, ver.kind, beta)
    if case.e > 1:
        N = case.e * (N - M) + M
        psi = build_psi_at(family, c, M, N)
    ver = preperiodic_verdict(psi, c, 0, schedule)
    av = ver.approximation.valuation if ver.approximation is not None else None
    return VerdictRecord(c, d, p, str(case), case.e, M, N, ver.n_used, av,
                         ver.error_exponent, ver.kind)
