from fractions import Fraction

import pytest

from padic_dynamo.errors import BudgetExceeded, UnsupportedM
from padic_dynamo.lattes import (
    LattesSpec, LegendreCurve, PointSet, critical_set, flexible_lattes, milnor_criterion,
    postcritical_set, torsion_translation, x_multiplication,
)
from padic_dynamo.poly import ExactPoly
from padic_dynamo.ratmaps import Mobius, RationalMap, critical_points, oo

from oracles import legendre_add, legendre_multiple

# y^2 = x(x - 1)(x + 6) carries the point (2, 4) of infinite order
LAM = Fraction(-6)
P0 = (Fraction(2), Fraction(4))


def test_curve_validation():
    with pytest.raises(ValueError):
        LegendreCurve(1)
    with pytest.raises(ValueError):
        LegendreCurve(0)
    with pytest.raises(ValueError):
        LattesSpec(LegendreCurve(2), T="(2,0)")
    assert LegendreCurve(2).torsion_x("(lambda,0)") == 2


def test_duplication_formula():
    f = x_multiplication(2, LegendreCurve(2))
    x = ExactPoly([0, 1])
    assert f == RationalMap((x * x - 2) ** 2, ExactPoly.from_roots([0, 1, 2]) * 4)
    assert f.degree == 4


@pytest.mark.parametrize("m", [2, 3])
def test_multiplication_matches_group_law(m):
    f = x_multiplication(m, LegendreCurve(LAM))
    assert f.degree == m * m
    P = P0
    for _ in range(3):
        assert f(P[0]) == legendre_multiple(P, m, LAM)[0]
        P = legendre_add(P, P0, LAM)


def test_unsupported_m():
    with pytest.raises(UnsupportedM):
        x_multiplication(4, LegendreCurve(2))


@pytest.mark.parametrize("marker, e", [("(0,0)", 0), ("(1,0)", 1), ("(lambda,0)", LAM)])
def test_torsion_translation_matches_group_law(marker, e):
    tau = torsion_translation(LegendreCurve(LAM), marker)
    P = P0
    for _ in range(3):
        assert tau(P[0]) == legendre_add(P, (Fraction(e), Fraction(0)), LAM)[0]
        P = legendre_add(P, P0, LAM)
    # translating twice by 2-torsion is the identity
    sq = tau @ tau
    assert sq.as_map() == Mobius.identity().as_map()


def test_flexible_lattes_with_identity_h_is_duplication():
    curve = LegendreCurve(2)
    assert flexible_lattes(LattesSpec(curve)) == x_multiplication(2, curve)
    other = flexible_lattes(LattesSpec(curve, T="(0,0)"))
    assert other != x_multiplication(2, curve) and other.degree == 4


@pytest.mark.parametrize("lam", [2, -1, 3])
@pytest.mark.parametrize("T", ["O", "(0,0)", "(1,0)", "(lambda,0)"])
def test_milnor_passes_for_flexible_lattes(lam, T):
    f = flexible_lattes(LattesSpec(LegendreCurve(lam), T=T))
    verdict = milnor_criterion(f)
    assert verdict.passes
    assert verdict.strictly_postcritical == PointSet.from_points([0, 1, lam, oo])
    assert verdict.critical.size == 6 and verdict.all_critical_simple


def test_six_simple_critical_points():
    f = flexible_lattes(LattesSpec(LegendreCurve(2)))
    crit = critical_points(f)
    assert all(m == 1 for _, m in crit)
    assert sum(k.degree if isinstance(k, ExactPoly) else 1 for k, _ in crit) == 6


def test_conjugation_moves_the_postcritical_set():
    h = Mobius.translation(1)
    f = flexible_lattes(LattesSpec(LegendreCurve(2), h=h))
    _, strict = postcritical_set(f)
    assert strict == PointSet.from_points([1, 2, 3, oo])


@pytest.mark.parametrize("coeffs, points, size", [
    ([0, 0, 1], [0, oo], 2),
    ([-1, 0, 1], [-1, 0, oo], 3),
    ([-2, 0, 1], [-2, 2, oo], 3),
])
def test_milnor_fails_for_polynomials(coeffs, points, size):
    f = RationalMap(ExactPoly(coeffs))
    _, strict = postcritical_set(f)
    assert strict == PointSet.from_points(points)
    verdict = milnor_criterion(f)
    assert not verdict.passes and verdict.strictly_postcritical_count == size


def test_postcritical_budget():
    with pytest.raises(BudgetExceeded):
        postcritical_set(RationalMap(ExactPoly([1, 0, 1])), budget=5)


def test_point_set_image_matches_pointwise():
    f = RationalMap(ExactPoly([1, 0, 1]), ExactPoly([0, 1]))  # z + 1/z
    pts = [Fraction(1), Fraction(2), Fraction(-1, 3), Fraction(0), oo]
    image = PointSet.from_points(pts).image(f)
    assert image == PointSet.from_points([f(x) for x in pts])
    # irrational points: the roots of z^2 - 2 map to +-3/sqrt(2), roots of 2z^2 - 9
    s = PointSet.of(ExactPoly([-2, 0, 1]))
    assert s.image(f) == PointSet.of(ExactPoly([-9, 0, 2]))


def test_point_set_basics():
    s = PointSet.from_points([1, 1, 2, oo])
    assert s.size == 3 and 2 in s and oo in s and 3 not in s
    assert s.intersection_size(PointSet.from_points([2, 5, oo])) == 2
    assert s.describe() == "{1, 2, oo}"
    assert s.to_json()["size"] == 3


def test_critical_set_degree_nine():
    f = flexible_lattes(LattesSpec(LegendreCurve(2), m=3))
    assert f.degree == 9
    crit, simple = critical_set(f)
    assert crit.size == 16 and simple
    assert milnor_criterion(f).passes
