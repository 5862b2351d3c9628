"""Is the critical point of z^2 + c preperiodic?  Ask for a p-adic verdict.

Escaping parameters are settled by valuations alone.  Otherwise the first
return map on the residue cycle is either attracting (its fixed point is
computed and the orbit of 0 compared with it) or indifferent, where an
iterative logarithm with a certified error bound decides.
"""
from fractions import Fraction

from padic_dynamo.itlog import parameter_verdict

for p, c in [(3, Fraction(1, 3)), (3, -1), (3, 1), (3, 4), (2, 2), (5, 2)]:
    rec = parameter_verdict(2, p, c)
    extra = f", beta = {rec.beta}" if rec.beta is not None else ""
    print(f"p={p} c={c}: {rec.case:18s} -> {rec.verdict}"
          f" (n_used={rec.n_used}, error exponent {rec.error_exponent}){extra}")
