"""Flexible Lattes maps from the Legendre family, and Milnor's criterion.

Doubling on y^2 = x(x-1)(x-lambda) descends to a degree 4 rational map whose
strictly postcritical set is exactly the four branch points.  Polynomials
fail the same test.
"""
from padic_dynamo.lattes import LattesSpec, LegendreCurve, flexible_lattes, milnor_criterion
from padic_dynamo.poly import ExactPoly
from padic_dynamo.ratmaps import Mobius, RationalMap

for lam in (2, -1, 3):
    f = flexible_lattes(LattesSpec(LegendreCurve(lam)))
    v = milnor_criterion(f)
    print(f"lambda={lam}: {f}")
    print(f"  passes={v.passes}, strictly postcritical {v.strictly_postcritical.describe()}")

shifted = flexible_lattes(LattesSpec(LegendreCurve(2), h=Mobius.translation(1)))
print("conjugated by z + 1:", milnor_criterion(shifted).strictly_postcritical.describe())

for coeffs in ([0, 0, 1], [-1, 0, 1]):
    f = RationalMap(ExactPoly(coeffs))
    print(f"{f}: passes={milnor_criterion(f).passes}")
