import json
import random
from fractions import Fraction

import pytest

from padic_dynamo.errors import DegenerateQuadruple, NotFixed
from padic_dynamo.exact_scalar import valuation
from padic_dynamo.finite_field import ResidueField
from padic_dynamo.poly import ExactPoly
from padic_dynamo.ratmaps import (
    BAD, Mobius, RationalMap, conjugate, critical_points, cross_ratio_lambda, good_reduction,
    map_from_json, map_to_json, multiplier, oo, reduce_point, residue_orbit,
)

from oracles import brute_orbit, mod_p_rational_map


def quad(c):
    return RationalMap(ExactPoly([c, 0, 1]))


def ex73_map(p, c=0):
    gamma = Fraction(c) + Fraction(p + 1, p)
    return RationalMap(ExactPoly([1] + [0] * (p - 1) + [-(p + 1), p]) * gamma)


def random_map(rng, deg=2):
    while True:
        num = ExactPoly([rng.randint(-5, 5) for _ in range(deg + 1)])
        den = ExactPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, deg + 1))])
        if den.is_zero() or num.is_zero():
            continue
        f = RationalMap(num, den)
        if f.degree == deg:
            return f


def random_mobius(rng):
    while True:
        a, b, c, d = (Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(4))
        if a * d - b * c:
            return Mobius(a, b, c, d)


def test_iteration_examples():
    assert quad(-1).iterate(0, 2) == 0
    assert quad(1).orbit(0, 3) == [0, 1, 2, 5]
    inv_sq = RationalMap(ExactPoly([1]), ExactPoly([0, 0, 1]))
    assert inv_sq(oo) == 0 and inv_sq(0) is oo


def test_coprime_normal_form():
    f = RationalMap(ExactPoly([-1, 0, 1]), ExactPoly([-1, 1]))
    assert f == RationalMap(ExactPoly([1, 1]))
    assert f.degree == 1


@pytest.mark.parametrize("d", [2, 3, 5])
def test_unicritical_critical_points(d):
    f = RationalMap(ExactPoly([7] + [0] * (d - 1) + [1]))
    assert sorted(critical_points(f), key=str) == sorted([(0, d - 1), (oo, d - 1)], key=str)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ex73_critical_divisor(p):
    crit = dict((k, m) for k, m in critical_points(ex73_map(p)) if not isinstance(k, ExactPoly))
    assert crit == {0: p - 1, 1: 1, oo: p}
    assert _weighted_count(critical_points(ex73_map(p))) == 2 * (p + 1) - 2


def _weighted_count(divisor):
    return sum(m * (k.degree if isinstance(k, ExactPoly) else 1) for k, m in divisor)


def test_irrational_critical_points_are_factors():
    f = RationalMap(ExactPoly([0, -3, 0, 1]))  # z^3 - 3z, critical at +-1
    assert sorted(k for k, _ in critical_points(f) if k is not oo) == [-1, 1]
    g = RationalMap(ExactPoly([0, -2, 0, 1]))  # critical at +-sqrt(2/3)
    factors = [k for k, _ in critical_points(g) if isinstance(k, ExactPoly)]
    assert factors == [ExactPoly([Fraction(-2, 3), 0, 1])]


def test_riemann_hurwitz_count_on_random_maps():
    rng = random.Random(1)
    for _ in range(50):
        f = random_map(rng, rng.randint(2, 4))
        assert _weighted_count(critical_points(f)) == 2 * f.degree - 2


def test_multiplier_examples():
    assert multiplier(ex73_map(2), Fraction(3, 2)) == Fraction(27, 4)
    assert valuation(Fraction(27, 4), 2) == -2
    assert multiplier(quad(0), 0) == 0
    assert multiplier(quad(0), 1) == 2
    assert multiplier(quad(0), oo) == 0
    with pytest.raises(NotFixed):
        multiplier(quad(0), 2)


def test_multiplier_is_conjugation_invariant():
    rng = random.Random(2)
    f = quad(Fraction(-3, 4))  # fixed points 3/2 and -1/2
    for _ in range(20):
        h = random_mobius(rng)
        g = conjugate(f, h)
        for fixed in (Fraction(3, 2), Fraction(-1, 2)):
            assert multiplier(g, h.inverse()(fixed)) == multiplier(f, fixed)


def test_conjugation_examples():
    sq = quad(0)
    assert conjugate(sq, Mobius.inversion()) == sq
    assert conjugate(quad(5), Mobius.scaling(-1)) == RationalMap(ExactPoly([-5, 0, -1]))
    # b^(d-1) = 1 with d = 3, b = -1
    cube = RationalMap(ExactPoly([7, 0, 0, 1]))
    assert conjugate(cube, Mobius.scaling(-1)) == RationalMap(ExactPoly([-7, 0, 0, 1]))


def test_conjugation_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        f, h = random_map(rng, rng.randint(2, 3)), random_mobius(rng)
        g = conjugate(f, h)
        assert g.degree == f.degree
        assert conjugate(g, h.inverse()) == f


def test_composition_matches_pointwise():
    rng = random.Random(4)
    for _ in range(40):
        f, g = random_map(rng), random_map(rng)
        fg = f.compose(g)
        for x in (Fraction(1, 3), Fraction(-2), Fraction(5, 7)):
            try:
                expected = f(g(x))
            except ZeroDivisionError:
                continue
            assert fg(x) == expected


def test_cross_ratio():
    assert cross_ratio_lambda(Fraction(5, 3), 0, 1, oo) == Fraction(5, 3)
    assert cross_ratio_lambda(2, 0, 1, "oo") == 2
    with pytest.raises(DegenerateQuadruple):
        cross_ratio_lambda(0, 0, 1, oo)


def test_cross_ratio_is_mobius_invariant():
    rng = random.Random(5)
    pts = [Fraction(7, 2), Fraction(-1), Fraction(3), Fraction(1, 5)]
    lam = cross_ratio_lambda(*pts)
    for _ in range(20):
        h = random_mobius(rng)
        assert cross_ratio_lambda(*[h(x) for x in pts]) == lam


def test_good_reduction_examples():
    fbar = good_reduction(quad(Fraction(4, 5)), 3)
    assert fbar is not BAD and fbar.degree == 2 and fbar(0) == 4 * pow(5, -1, 3) % 3
    assert good_reduction(RationalMap(ExactPoly([0, 1, 7])), 7) is BAD
    # z^2/p: normalising leaves the denominator p, which reduces to 0
    assert good_reduction(RationalMap(ExactPoly([0, 0, Fraction(1, 5)])), 5) is BAD
    assert good_reduction(RationalMap(ExactPoly([0, 0, 1]), ExactPoly([3])), 3) is BAD
    # a numerator vanishing mod p leaves a constant
    assert good_reduction(RationalMap(ExactPoly([2]), ExactPoly([1, 0, 1])), 2) is BAD
    assert good_reduction(RationalMap(ExactPoly([0, 0, 5]), ExactPoly([1, 0, 1])), 5) is BAD
    assert good_reduction(quad(Fraction(1, 2)), 2) is BAD


def test_residue_orbit_examples():
    F2, F3 = ResidueField(2), ResidueField(3)
    assert tuple(residue_orbit(good_reduction(quad(0), 2), 0)) == (0, 1)
    assert tuple(residue_orbit(good_reduction(quad(1), 2), 0)) == (0, 2)
    orb = residue_orbit(good_reduction(quad(1), 3), 0)
    assert tuple(orb) == (2, 3) and orb.cycle_length == 1
    assert good_reduction(quad(1), 2, F2).field == F2
    assert good_reduction(quad(1), 3, F3).field == F3


def test_residue_orbit_over_extension_field():
    F4 = ResidueField(2, (1, 1, 1))  # x^2 + x + 1
    fbar = good_reduction(quad(1), 2, F4)
    orb = residue_orbit(fbar, F4.zero)
    assert tuple(orb) == (0, 2)
    # x -> x^2 is the Frobenius, of order 2 on F_4
    sq = good_reduction(quad(0), 2, F4)
    assert tuple(residue_orbit(sq, (0, 1))) == (0, 2)


def test_residue_orbit_brute_force():
    rng = random.Random(6)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        num = [rng.randint(-9, 9) for _ in range(3)]
        den = [rng.randint(-9, 9) for _ in range(rng.randint(1, 3))]
        try:
            f = RationalMap(ExactPoly(num), ExactPoly(den))
        except ZeroDivisionError:
            continue
        if f.degree < 1:
            continue
        fbar = good_reduction(f, p)
        if fbar is BAD:
            continue
        step = mod_p_rational_map([int(c) for c in fbar.num], [int(c) for c in fbar.den], p)
        for x in list(range(p)) + ["oo"]:
            got = residue_orbit(fbar, oo if x == "oo" else x)
            assert tuple(got) == brute_orbit(step, x)


def test_reduction_commutes_with_evaluation():
    rng = random.Random(8)
    checked = 0
    while checked < 200:
        p = rng.choice([2, 3, 5, 7])
        f = random_map(rng, 2)
        fbar = good_reduction(f, p)
        if fbar is BAD:
            continue
        x = Fraction(rng.randint(-100, 100))
        fx = f(x)
        assert reduce_point(fx, p) == fbar(reduce_point(x, p))
        checked += 1


def test_json_round_trip():
    f = RationalMap(ExactPoly([Fraction(1, 4), 0, 1]), ExactPoly([3, 1]))
    blob = json.dumps(map_to_json(f))
    assert map_from_json(blob) == f
    assert json.loads(blob)["numerator"][0] == "1/4"
