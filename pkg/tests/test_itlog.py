from fractions import Fraction

import pytest

from padic_dynamo.bivariate import BiPoly
from padic_dynamo.errors import CertificateFailure, NotAttracting, NotIndifferent
from padic_dynamo.itlog import (
    ATTRACTING, BivariateSeries, CaseTag, attracting_fixed_point, attracting_verdict, build_psi, build_psi_at,
    classify_case, cn_exponent, indifferent_radii, iterative_log, iterlog_error_bound,
    parameter_verdict, preperiodic_verdict, t_s,
)
from padic_dynamo.pcf_family import UnicriticalFamily

from oracles import padic_log_one_plus, vp, vp_int


def psi_of(terms, p, **region):
    return BivariateSeries(BiPoly(terms), p, **region)


def cn_oracle(t_exp, p, n, kmax=4000):
    """Brute-force min over k of ``k*tau - v_p(k)``."""
    tau = Fraction(t_exp) - Fraction(1, p ** n * (p - 1))
    if tau <= 0:
        return None
    return min(k * tau - vp_int(k, p) for k in range(1, kmax))


# -- construction and the case split -------------------------------------------

def test_build_psi_attracting_example():
    psi = build_psi(UnicriticalFamily(2, 2, 0), 0, 1)
    assert psi.poly == BiPoly({(0, 2): 1, (1, 0): 1})
    assert classify_case(psi) == ATTRACTING


def test_build_psi_indifferent_example():
    psi = build_psi(UnicriticalFamily(2, 3, 1), 2, 3)
    # (z + c^2 + c)^2 + c - (c^2 + c) at c = 1 has linear coefficient 2 (c^2 + c) = 4
    assert psi.A(0, 1) == 4
    assert classify_case(psi) == CaseTag("Indifferent", 1)


def test_build_psi_rejects_non_cycles():
    with pytest.raises(CertificateFailure):
        build_psi(UnicriticalFamily(2, 3, 1), 0, 1)
    with pytest.raises(ValueError):
        build_psi(UnicriticalFamily(2, 3, 1), 2, 2)


def test_region_bound_is_checked():
    with pytest.raises(CertificateFailure):
        psi_of({(0, 0): 1}, 3)  # |A00| must be < R
    with pytest.raises(CertificateFailure):
        psi_of({(0, 1): Fraction(1, 3)}, 3)
    psi_of({(0, 1): 4}, 3, rho_R=-1)


@pytest.mark.parametrize("a01, p, e", [(4, 3, 1), (2, 5, 4), (3, 7, 6), (6, 7, 2), (1, 2, 1)])
def test_classify_indifferent_orders(a01, p, e):
    assert classify_case(psi_of({(0, 1): a01}, p)) == CaseTag("Indifferent", e)
    # oracle: multiplicative order by brute force
    assert min(k for k in range(1, p) if pow(a01, k, p) == 1) == e


def test_t_s_examples():
    psi = psi_of({(0, 2): 1, (1, 0): 1}, 2)
    assert t_s(psi, 1) == 1
    p = 3
    psi = psi_of({(0, 0): p * p, (0, 1): p}, p)
    assert t_s(psi, 3) == 1
    small = psi_of({(0, 2): 1}, 5)
    assert t_s(small, Fraction(1, 1000)) == Fraction(1, 1000)
    with pytest.raises(NotAttracting):
        t_s(psi_of({(0, 1): 4}, 3), 1)
    with pytest.raises(ValueError):
        t_s(psi, 0)


# -- attracting branch ------------------------------------------------------------

def test_attracting_fixed_point_examples():
    psi = build_psi(UnicriticalFamily(2, 2, 0), 0, 1)
    beta = attracting_fixed_point(psi, 2, 5)
    assert beta.residue(5) == 6
    # oracle: exact orbit 0, 2, 6, 38, ... stabilises mod 32
    x = Fraction(0)
    for _ in range(10):
        x = x * x + 2
    assert x % 32 == 6 and (x * x + 2 - x) % 32 == 0
    assert attracting_fixed_point(psi, 0, 5).is_inexact_zero()
    assert attracting_fixed_point(psi, 2, 2).residue(2) == 2


def test_attracting_fixed_point_residual():
    psi = build_psi(UnicriticalFamily(2, 2, 0), 0, 1)
    for c in (2, 4, -2, Fraction(2, 3)):
        beta = attracting_fixed_point(psi, c, 12).lift()
        residual = beta * beta + c - beta
        assert residual == 0 or vp(residual, 2) >= 12


def test_attracting_verdicts():
    psi = build_psi(UnicriticalFamily(2, 3, 2), 0, 2)  # c = -1: 0 -> -1 -> 0
    assert attracting_verdict(psi, -1).kind == "PossiblyZero"
    psi2 = build_psi(UnicriticalFamily(2, 2, 0), 0, 1)
    assert attracting_verdict(psi2, 2).kind == "NonzeroCertified"
    # c = -2 at p = 2: 0 -> -2 -> 2 -> 2 is preperiodic
    assert attracting_verdict(psi2, -2).kind == "PossiblyZero"


# -- indifferent branch ---------------------------------------------------------

def test_cn_exponent_against_brute_force():
    for p in (2, 3, 5):
        for t_exp in (Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(7, 4)):
            for n in range(1, 6):
                assert cn_exponent(t_exp, p, n) == cn_oracle(t_exp, p, n)


def test_cn_exponent_values():
    assert cn_exponent(1, 2, 1) == 0
    assert cn_exponent(1, 2, 2) == Fraction(1, 2)
    assert cn_exponent(Fraction(1, 2), 2, 1) is None
    assert cn_exponent(1, 3, 2) >= 1 - Fraction(1, 18) - 1


@pytest.mark.parametrize("p, t_exp", [(2, 1), (3, 1)])
def test_error_bound_shrinks_with_n(p, t_exp):
    cns = [cn_exponent(t_exp, p, n) for n in range(1, 12)]
    errs = [iterlog_error_bound(t_exp, p, n) for n in range(1, 12)]
    # C_n decreases as a size, so its exponent is non-decreasing
    assert all(a <= b for a, b in zip(cns, cns[1:]))
    assert all(a < b for a, b in zip(errs, errs[1:]))


def test_indifferent_radii():
    psi = psi_of({(0, 1): 4}, 3, rho_R=-1)
    r = indifferent_radii(psi, 1)
    assert (r.sigma_tilde, r.rho_r, r.t) == (Fraction(1, 2), Fraction(-3, 4), Fraction(1, 8))
    with pytest.raises(NotIndifferent):
        indifferent_radii(psi_of({(0, 1): 2}, 3), 1)


def test_iterative_log_of_multiplication_by_four():
    psi = psi_of({(0, 1): 4}, 3, rho_R=-1)
    res = iterative_log(psi, 0, 1, 4)
    assert res.error_exponent == Fraction(167, 72)
    approx = res.approximation
    k = approx.absprec
    log4 = padic_log_one_plus(3, 3, k)
    diff = (approx.residue(k) - log4) % 3 ** k
    assert diff == 0 or vp_int(diff, 3) >= res.error_exponent
    # the exact quantity (4^81 - 1)/81 agrees too
    exact = Fraction(4 ** 81 - 1, 81)
    assert vp(exact - approx.lift(), 3) >= k


def test_iterative_log_at_fixed_point_is_zero():
    psi = psi_of({(0, 1): 4}, 3, rho_R=-1)
    for n in range(1, 4):
        assert iterative_log(psi, 0, 0, n).approximation.is_inexact_zero()


def test_preperiodic_verdicts():
    fam = UnicriticalFamily(2, 3, 1)
    psi = build_psi(fam, 2, 3)
    ver = preperiodic_verdict(psi, 1)
    assert ver.kind == "NonzeroCertified" and ver.n_used <= 6
    assert ver.approximation.valuation < ver.error_exponent
    assert preperiodic_verdict(psi, 4).kind == "NonzeroCertified"
    assert preperiodic_verdict(psi, -2).kind == "PossiblyZero"


@pytest.mark.parametrize("c, case, verdict", [
    (-1, "Attracting", "PossiblyZero"),
    (1, "Indifferent(e=1)", "NonzeroCertified"),
    (4, "Indifferent(e=1)", "NonzeroCertified"),
    (Fraction(1, 3), "Escape", "Escapes"),
])
def test_parameter_verdict_at_three(c, case, verdict):
    rec = parameter_verdict(2, 3, c)
    assert (rec.case, rec.verdict) == (case, verdict)
    assert rec.to_json()["verdict"] == verdict


def test_parameter_verdict_attracting_beta():
    rec = parameter_verdict(2, 2, 2)
    assert rec.case == "Attracting" and rec.verdict == "NonzeroCertified"
    assert rec.beta.residue(5) == 6
    assert str(rec.beta) == "2^1*3 + O(2^5)"


def test_parameter_verdict_replaces_cycle_by_iterate():
    # c = 2 at p = 5: 0 -> 2 -> 1 -> 3 -> 1; the cycle {1, 3} has multiplier
    # 2*1 * 2*3 = 12 = 2 mod 5, of order 4
    rec = parameter_verdict(2, 5, 2)
    assert rec.e == 4 and (rec.M, rec.N) == (2, 2 + 4 * 2)
    assert rec.verdict == "NonzeroCertified"


@pytest.mark.parametrize("d, p, a, c, M, N", [
    (2, 3, 1, 4, 2, 3), (2, 3, 1, -2, 2, 3), (2, 2, 0, 2, 0, 1), (3, 5, 2, 7, 0, 2),
])
def test_specialised_psi_matches_bivariate(d, p, a, c, M, N):
    fam = UnicriticalFamily(d, p, a)
    try:
        full = build_psi(fam, M, N)
    except CertificateFailure:
        with pytest.raises(CertificateFailure):
            build_psi_at(fam, c, M, N)
        return
    one = build_psi_at(fam, c, M, N)
    assert one.z_coefficients(c) == full.z_coefficients(c)
    assert classify_case(one) == classify_case(full)
