"""Centres of hyperbolic components of the Mandelbrot set, read 2-adically.

The Gleason polynomial g_n cuts out parameters c where 0 has exact period n
under z^2 + c.  Mod 2 it collapses to a single monomial, so every root sits
in the open unit 2-adic disk.  This script watches that happen.
"""
from padic_dynamo.exact_scalar import LogRadius
from padic_dynamo.newton import root_valuations
from padic_dynamo.pcf_family import UnicriticalFamily, count_pcf_in_disk, gleason_factor

fam = UnicriticalFamily(2, 2)
for n in range(1, 9):
    g = gleason_factor(n)
    reduced = [int(a) % 2 for a in g.coeffs]
    inside = count_pcf_in_disk(fam, n, 0, LogRadius.open(0))
    print(f"n={n}: degree {g.degree:4d}, nonzero mod-2 coefficients at "
          f"{[i for i, a in enumerate(reduced) if a]}, roots with |c| < 1: {inside}")

# the Newton polygon of g_4 says how deep those roots sit
print()
for v, mult in root_valuations(gleason_factor(4), 2):
    print(f"g_4: {mult} root(s) of 2-adic valuation {v}")
