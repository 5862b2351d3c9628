"""
Dense univariate polynomials with exact rational coefficients.

Coefficients are stored low degree first.  Products of integral polynomials go
through Kronecker substitution so that large products ride on CPython's
Karatsuba big-integer multiplication; this is what keeps the degree-512
Gleason and ``h_2`` computations fast.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Sequence

from .errors import ZeroPolynomial
from .exact_scalar import as_scalar, valuation

__all__ = ["ExactPoly", "X", "int_poly_mul", "int_poly_sqr", "rational_roots"]

_KRONECKER_CUTOFF = 24


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    shift = 8 * nbytes
    n = 0
    for c in reversed(coeffs):
        n = (n << shift) + c
    return n


def _unpack_signed(n: int, count: int, nbytes: int) -> list:
    # add 2^(B-1) to every digit so all digits are nonnegative, then read bytes
    bits = 8 * nbytes
    half = 1 << (bits - 1)
    offset = _pack([half] * count, nbytes)
    raw = (n + offset).to_bytes(count * nbytes, "little")
    out = []
    for i in range(count):
        out.append(int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half)
    return out


def int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    """Product of two integer coefficient lists (low degree first)."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    bound = max(abs(x) for x in a) * max(abs(y) for y in b) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2) // 8 + 1
    n = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack_signed(n, len(a) + len(b) - 1, nbytes)


def int_poly_sqr(a: Sequence[int]) -> list:
    if len(a) < _KRONECKER_CUTOFF:
        return int_poly_mul(a, a)
    m = max(abs(x) for x in a)
    nbytes = ((m * m * len(a)).bit_length() + 2) // 8 + 1
    n = _pack(a, nbytes)
    return _unpack_signed(n * n, 2 * len(a) - 1, nbytes)


def _trim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


class ExactPoly:
    """A polynomial in one variable over Q.

    >>> f = ExactPoly([0, 2, 1])          # c^2 + 2c
    >>> f(-2), f.degree
    (Fraction(0, 1), 2)
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = _trim([as_scalar(c) for c in coeffs])
        self.coeffs = tuple(cs)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _from_fracs(cls, cs: list) -> "ExactPoly":
        obj = cls.__new__(cls)
        obj.coeffs = tuple(_trim(cs))
        obj._hash = None
        return obj

    @classmethod
    def from_ints(cls, cs: Sequence[int]) -> "ExactPoly":
        return cls._from_fracs([Fraction(c) for c in cs])

    @classmethod
    def constant(cls, c) -> "ExactPoly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> "ExactPoly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "ExactPoly":
        f = cls([lead])
        for r in roots:
            f = f * cls([-as_scalar(r), 1])
        return f

    # -- basic data ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list:
        if not self.is_integral():
            raise ValueError("polynomial has non-integral coefficients")
        return [c.numerator for c in self.coeffs]

    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive integral."""
        if not self.coeffs:
            return Fraction(0)
        den = self.denominator()
        nums = [(c * den).numerator for c in self.coeffs]
        return Fraction(gcd(*nums), den)

    def primitive(self) -> "ExactPoly":
        """Primitive integral associate with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return self._from_fracs([x / c for x in self.coeffs])

    def monic(self) -> "ExactPoly":
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no monic associate")
        lc = self.leading
        return self._from_fracs([c / lc for c in self.coeffs])

    def zero_order(self) -> int:
        """Multiplicity of the root 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroPolynomial("zero polynomial")

    def valuations(self, p: int) -> list:
        return [valuation(c, p) for c in self.coeffs]

    # -- arithmetic ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExactPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == ExactPoly([other]).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    @staticmethod
    def _lift(other) -> "ExactPoly":
        return other if isinstance(other, ExactPoly) else ExactPoly([other])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._from_fracs(out)

    __radd__ = __add__

    def __neg__(self):
        return self._from_fracs([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExactPoly):
            s = as_scalar(other)
            return self._from_fracs([c * s for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return ExactPoly()
        da, db = self.denominator(), other.denominator()
        a = [(c * da).numerator for c in self.coeffs]
        b = [(c * db).numerator for c in other.coeffs]
        prod = int_poly_sqr(a) if self is other else int_poly_mul(a, b)
        den = da * db
        if den == 1:
            return self._from_fracs([Fraction(c) for c in prod])
        return self._from_fracs([Fraction(c, den) for c in prod])

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, ExactPoly):
            return self.exact_div(s)
        s = as_scalar(s)
        return self._from_fracs([c / s for c in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = ExactPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        if len(rem) - 1 < dq:
            return ExactPoly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        oc = other.coeffs
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lc
            quo[k] = q
            if q:
                for j in range(dq + 1):
                    rem[k + j] -= q * oc[j]
        return self._from_fracs(quo), self._from_fracs(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "ExactPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "ExactPoly") -> bool:
        return (other % self).is_zero()

    # -- calculus and evaluation ---------------------------------------
    def derivative(self) -> "ExactPoly":
        return self._from_fracs([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        if isinstance(x, ExactPoly):
            return self.compose(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(acc, int):
            return Fraction(acc)
        return acc

    def compose(self, inner: "ExactPoly") -> "ExactPoly":
        """self(inner(z)) by Horner's rule."""
        acc = ExactPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def taylor_shift(self, a) -> "ExactPoly":
        """self(z + a), computed exactly.

        Integral input with an integral shift stays in machine integers
        throughout; otherwise the shift is scaled to an integer one.
        """
        a = as_scalar(a)
        if a == 0 or self.degree < 1:
            return self
        if self.is_integral() and a.denominator == 1:
            return self.from_ints(_int_taylor_shift(self.int_coeffs(), a.numerator))
        # f(z + u/w) = g(w z + u) / ... : substitute z = y / w with integer shift
        u, w = a.numerator, a.denominator
        den = self.denominator()
        n = self.degree
        # F(y) := w^n * f(y / w) is integral after clearing den
        scaled = [(c * den).numerator * w ** (n - i) for i, c in enumerate(self.coeffs)]
        shifted = _int_taylor_shift(scaled, u)  # F(y + u)
        # f(z + a) = F(w z + u) / (den w^n) = sum s_i w^i z^i / (den w^n)
        return self._from_fracs(
            [Fraction(s * w ** i, den * w ** n) for i, s in enumerate(shifted)])

    def scale_variable(self, s) -> "ExactPoly":
        """self(s z)."""
        s = as_scalar(s)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= s
        return self._from_fracs(out)

    def reverse(self, n: int | None = None) -> "ExactPoly":
        """z^n self(1/z) with n defaulting to the degree."""
        if n is None:
            n = self.degree
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return self._from_fracs(list(reversed(cs[: n + 1])))

    # -- gcd / squarefree ----------------------------------------------
    def gcd(self, other: "ExactPoly") -> "ExactPoly":
        """Monic gcd over Q (zero if both inputs vanish)."""
        a, b = self.primitive(), other.primitive()
        while not b.is_zero():
            a, b = b, (a % b).primitive()
        return a.monic() if not a.is_zero() else a

    def squarefree_decomposition(self) -> list:
        """Yun's algorithm: [(factor, multiplicity), ...] with monic squarefree factors."""
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial")
        f = self.monic()
        out = []
        df = f.derivative()
        a = f.gcd(df)
        b = f.exact_div(a)
        c = df.exact_div(a)
        d = c - b.derivative()
        i = 1
        while not b.is_constant():
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            if not a.is_constant():
                out.append((a, i))
            i += 1
        return out

    def squarefree_part(self) -> "ExactPoly":
        if self.is_constant():
            return ExactPoly([1])
        return self.monic().exact_div(self.gcd(self.derivative()))

    # -- display ------------------------------------------------------
    def __repr__(self):
        return f"ExactPoly({[str(c) for c in self.coeffs]})"

    def to_string(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mon and c in (1, -1):
                t = mon if c == 1 else "-" + mon
            elif mon:
                t = f"{c}*{mon}" if c.denominator == 1 else f"({c})*{mon}"
            else:
                t = str(c)
            terms.append(t)
        return " + ".join(terms).replace("+ -", "- ")

    __str__ = to_string


def _int_taylor_shift(cs: list, a: int) -> list:
    """Coefficients of f(z + a) for integer f and a (divide-and-conquer)."""
    n = len(cs)
    if n <= 1 or a == 0:
        return list(cs)
    if n <= 64:
        out = list(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j] += a * out[j + 1]
        return out
    # f = lo + z^h hi  =>  f(z+a) = lo(z+a) + (z+a)^h hi(z+a)
    h = n // 2
    lo = _int_taylor_shift(cs[:h], a)
    hi = _int_taylor_shift(cs[h:], a)
    binom = [comb(h, k) * a ** (h - k) for k in range(h + 1)]
    prod = int_poly_mul(binom, hi)
    out = prod + [0] * max(0, n - len(prod))
    for i, c in enumerate(lo):
        out[i] += c
    return out[:n]


X = ExactPoly([0, 1])


def rational_roots(q: ExactPoly) -> list:
    """Rational roots by the candidate test ``numerator | a_0``, ``denominator | a_n``.

    Coefficients above 10^6 make the search impractical; only the root 0 is
    then reported.
    """
    if q.degree < 1:
        return []
    cs = q.primitive().int_coeffs()
    z = 0
    while cs[z] == 0:
        z += 1
    out = [Fraction(0)] if z else []
    a0, an = abs(cs[z]), abs(cs[-1])
    if a0 > 10 ** 6 or an > 10 ** 6:
        return out
    nums, dens = _divisors(a0), _divisors(an)
    seen = set(out)
    for n in nums:
        for d in dens:
            for r in (Fraction(n, d), Fraction(-n, d)):
                if r not in seen and q(r) == 0:
                    seen.add(r)
                    out.append(r)
    return sorted(out)


def _divisors(n: int) -> list:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))
