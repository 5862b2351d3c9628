import random
from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from padic_dynamo.bivariate import BiPoly
from padic_dynamo.poly import ExactPoly

from oracles import t_sym, z_sym

terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                        st.integers(-9, 9), max_size=6)


def to_sympy(q: BiPoly):
    return sum((sp.Rational(c.numerator, c.denominator) * t_sym ** i * z_sym ** j
                for (i, j), c in q.terms.items()), sp.Integer(0))


def from_sympy(expr) -> BiPoly:
    poly = sp.Poly(sp.expand(expr), t_sym, z_sym)
    return BiPoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


@settings(max_examples=120, derandomize=True, deadline=None)
@given(terms, terms)
def test_ring_operations_match_sympy(a, b):
    A, B = BiPoly(a), BiPoly(b)
    assert A + B == from_sympy(to_sympy(A) + to_sympy(B))
    assert A * B == from_sympy(to_sympy(A) * to_sympy(B))
    assert A - A == BiPoly()
    assert A ** 3 == from_sympy(to_sympy(A) ** 3)


@settings(max_examples=80, derandomize=True, deadline=None)
@given(terms, terms)
def test_substitution_matches_sympy(a, b):
    A, B = BiPoly(a), BiPoly(b)
    assert A.substitute_z(B) == from_sympy(to_sympy(A).subs(z_sym, to_sympy(B)))
    assert A.substitute_t(B) == from_sympy(to_sympy(A).subs(t_sym, to_sympy(B)))


def test_specialisation():
    rng = random.Random(0)
    for _ in range(30):
        q = BiPoly({(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5) for _ in range(5)})
        t0, z0 = Fraction(rng.randint(-4, 4), 3), Fraction(rng.randint(-4, 4), 2)
        assert q.at_t(t0)(z0) == q.at_z(z0)(t0) == \
            Fraction(str(to_sympy(q).subs({t_sym: sp.Rational(t0.numerator, t0.denominator),
                                           z_sym: sp.Rational(z0.numerator, z0.denominator)})))


def test_degrees_and_coefficients():
    q = BiPoly({(2, 1): 3, (0, 4): -1, (1, 0): 5})
    assert (q.t_degree, q.z_degree, q.total_degree) == (2, 4, 4)
    assert q.z_coefficient(1) == ExactPoly([0, 0, 3])
    assert q.z_coefficient(0) == ExactPoly([0, 5])
    assert q[(7, 7)] == 0
    assert BiPoly.from_t_poly(ExactPoly([1, 2])) == BiPoly.t() * 2 + 1
    assert BiPoly.from_z_poly(ExactPoly([0, 1])) == BiPoly.z()
    assert BiPoly({(0, 0): 0}).is_zero()
