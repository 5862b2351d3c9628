"""Sparse bivariate polynomials over Q in a parameter ``t`` and a dynamical variable ``z``."""
from __future__ import annotations

from fractions import Fraction

from .exact_scalar import as_scalar
from .poly import ExactPoly

__all__ = ["BiPoly"]


class BiPoly:
    """``sum A[i, j] t^i z^j`` stored as ``{(i, j): Fraction}`` without zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "BiPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def t(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def z(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_t_poly(cls, f: ExactPoly) -> "BiPoly":
        return cls({(i, 0): c for i, c in enumerate(f.coeffs)})

    @classmethod
    def from_z_poly(cls, f: ExactPoly) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(f.coeffs)})

    def __getitem__(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def z_degree(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def t_degree(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        items = sorted(self.terms.items())
        return "BiPoly({" + ", ".join(f"{k}: {v}" for k, v in items) + "})"

    @staticmethod
    def _lift(x) -> "BiPoly":
        return x if isinstance(x, BiPoly) else BiPoly.constant(x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            s = as_scalar(other)
            if not s:
                return BiPoly()
            return BiPoly._raw({k: c * s for k, c in self.terms.items()})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def z_coefficient(self, j: int) -> ExactPoly:
        """Coefficient of ``z^j`` as a polynomial in ``t``."""
        deg = max((i for i, jj in self.terms if jj == j), default=-1)
        cs = [Fraction(0)] * (deg + 1)
        for (i, jj), c in self.terms.items():
            if jj == j:
                cs[i] = c
        return ExactPoly(cs)

    def at_t(self, t) -> ExactPoly:
        """Specialise the parameter, giving a polynomial in ``z``."""
        t = as_scalar(t)
        cs = [Fraction(0)] * (self.z_degree + 1)
        for (i, j), c in self.terms.items():
            cs[j] += c * t ** i
        return ExactPoly(cs)

    def at_z(self, z) -> ExactPoly:
        z = as_scalar(z)
        cs = [Fraction(0)] * (self.t_degree + 1)
        for (i, j), c in self.terms.items():
            cs[i] += c * z ** j
        return ExactPoly(cs)

    def substitute_z(self, inner: "BiPoly") -> "BiPoly":
        """``self(t, inner(t, z))`` by Horner's rule in z."""
        acc = BiPoly()
        for j in range(self.z_degree, -1, -1):
            acc = acc * inner + BiPoly.from_t_poly(self.z_coefficient(j))
        return acc

    def substitute_t(self, inner: "BiPoly") -> "BiPoly":
        """``self(inner(t, z), z)``."""
        acc = BiPoly()
        for i in range(self.t_degree, -1, -1):
            row = BiPoly({(0, j): c for (ii, j), c in self.terms.items() if ii == i})
            acc = acc * inner + row
        return acc
