"""
Exact scalars, p-adic valuations, log-radii and capped-precision p-adic units.

Elements of Q are plain :class:`fractions.Fraction` objects.  Absolute values
are never materialised: a quantity ``|x| = p^(-e)`` is always carried by its
exponent ``e`` (a Fraction), so every comparison is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import BadSeed, NegativeValuation, PrecisionError

__all__ = [
    "INF",
    "ExactScalar",
    "as_scalar",
    "valuation",
    "int_valuation",
    "unit_part",
    "padic_residue",
    "LogRadius",
    "CappedPadic",
    "hensel_unit_root",
]

ExactScalar = Fraction
Scalarlike = Union[int, Fraction, str]


@total_ordering
class _Infinity:
    """The valuation of zero.  Larger than every rational, absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("padic_dynamo.INF")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF is undefined")
        return self

    def __mul__(self, other):
        if other > 0:
            return self
        raise ArithmeticError("INF may only be scaled by positive numbers")

    __rmul__ = __mul__


INF = _Infinity()


def as_scalar(x: Scalarlike) -> Fraction:
    """Coerce an int, Fraction or decimal string such as ``"-27/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact scalar")


def int_valuation(n: int, p: int):
    """v_p of a nonzero integer (INF for zero)."""
    if n == 0:
        return INF
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    # peel p^(2^k) blocks first so huge valuations cost O(log v) divisions
    powers = [p]
    while n % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    for i in range(len(powers) - 1, -1, -1):
        q, r = divmod(n, powers[i])
        if r == 0:
            n = q
            v += 1 << i
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Scalarlike, p: int):
    """Exact p-adic valuation of a rational number; ``INF`` for zero.

    >>> valuation(12, 2)
    2
    >>> valuation(Fraction(27, 4), 2), valuation(Fraction(27, 4), 3)
    (-2, 3)
    """
    x = as_scalar(x)
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def unit_part(x: Scalarlike, p: int) -> Fraction:
    """x / p^v_p(x) for nonzero x."""
    x = as_scalar(x)
    v = valuation(x, p)
    if v is INF:
        raise ValueError("zero has no unit part")
    return x / Fraction(p) ** v


def padic_residue(x: Scalarlike, p: int, k: int) -> int:
    """Canonical representative in [0, p^k) of a p-integral rational."""
    x = as_scalar(x)
    if k < 1:
        raise ValueError("k must be positive")
    v = valuation(x, p)
    if v is not INF and v < 0:
        raise NegativeValuation(f"{x} has valuation {v} < 0 at p={p}")
    mod = p ** k
    return x.numerator * pow(x.denominator, -1, mod) % mod


@total_ordering
@dataclass(frozen=True)
class LogRadius:
    """The radius ``p^(-exponent)`` together with the polarity of a disk.

    Larger exponents are *smaller* radii; ordering compares radii, so
    ``LogRadius(2) < LogRadius(1)``.
    """

    exponent: Fraction
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "exponent", as_scalar(self.exponent))

    @classmethod
    def open(cls, exponent) -> "LogRadius":
        return cls(as_scalar(exponent), False)

    @classmethod
    def closed_disk(cls, exponent) -> "LogRadius":
        return cls(as_scalar(exponent), True)

    def contains_valuation(self, v) -> bool:
        """Does an element of valuation ``v`` (distance to the centre) lie in the disk?"""
        if v is INF:
            return True
        return v >= self.exponent if self.closed else v > self.exponent

    def __lt__(self, other):
        if not isinstance(other, LogRadius):
            return NotImplemented
        return (-self.exponent, self.closed) < (-other.exponent, other.closed)

    def __str__(self):
        kind = "closed" if self.closed else "open"
        return f"{kind} radius p^-({self.exponent})"


@dataclass(frozen=True)
class CappedPadic:
    """An element ``p^valuation * unit`` of Q_p known modulo ``p^(valuation + precision)``.

    ``unit`` is reduced modulo ``p^precision`` and is prime to p.  The exact
    zero has ``valuation`` INF.  A value known only to vanish modulo ``p^A`` is
    stored with ``valuation=A``, ``unit=0``, ``precision=0``; use
    :meth:`is_inexact_zero` to detect it.
    """

    prime: int
    valuation: object
    unit: int
    precision: int

    # -- construction -------------------------------------------------
    @classmethod
    def from_rational(cls, x: Scalarlike, p: int, precision: int) -> "CappedPadic":
        x = as_scalar(x)
        if precision < 1:
            raise ValueError("precision must be at least 1")
        if x == 0:
            return cls(p, INF, 0, precision)
        v = valuation(x, p)
        u = unit_part(x, p)
        mod = p ** precision
        return cls(p, v, u.numerator * pow(u.denominator, -1, mod) % mod, precision)

    @classmethod
    def from_residue(cls, r: int, p: int, absprec: int) -> "CappedPadic":
        """Element known modulo ``p^absprec`` from an integer representative."""
        r %= p ** absprec
        if r == 0:
            return cls(p, absprec, 0, 0)
        v = int_valuation(r, p)
        return cls(p, v, (r // p ** v) % p ** (absprec - v), absprec - v)

    @classmethod
    def inexact_zero(cls, p: int, absprec: int) -> "CappedPadic":
        return cls(p, absprec, 0, 0)

    # -- inspection ---------------------------------------------------
    @property
    def absprec(self):
        if self.valuation is INF:
            return INF
        return self.valuation + self.precision

    def is_exact_zero(self) -> bool:
        return self.valuation is INF

    def is_inexact_zero(self) -> bool:
        return self.valuation is not INF and self.precision == 0

    def residue(self, k: int) -> int:
        """Representative modulo p^k; requires enough absolute precision."""
        if self.valuation is INF:
            return 0
        if self.valuation < 0:
            raise NegativeValuation(f"valuation {self.valuation} < 0")
        if self.absprec < k:
            raise PrecisionError(f"only known modulo p^{self.absprec}, asked for p^{k}")
        if self.valuation >= k:
            return 0
        return (self.unit * self.prime ** self.valuation) % self.prime ** k

    def lift(self) -> Fraction:
        """The rational p^v * unit (a canonical lift)."""
        if self.valuation is INF or self.precision == 0:
            return Fraction(0)
        return Fraction(self.prime) ** self.valuation * self.unit

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "CappedPadic":
        if isinstance(other, CappedPadic):
            if other.prime != self.prime:
                raise ValueError("mixed primes")
            return other
        other = as_scalar(other)
        if other == 0:
            return CappedPadic(self.prime, INF, 0, max(self.precision, 1))
        if self.valuation is INF:
            prec = max(self.precision, 1)
        else:
            prec = max(1, self.absprec - valuation(other, self.prime))
        return CappedPadic.from_rational(other, self.prime, prec)

    def __neg__(self):
        if self.valuation is INF or self.precision == 0:
            return self
        return CappedPadic(self.prime, self.valuation, (-self.unit) % self.prime ** self.precision,
                           self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.prime
        if self.valuation is INF:
            return other
        if other.valuation is INF:
            return self
        absprec = min(self.absprec, other.absprec)
        base = min(self.valuation, other.valuation)
        if base >= absprec:
            return CappedPadic.inexact_zero(p, absprec)
        mod = p ** (absprec - base)
        a = self.unit * p ** (self.valuation - base)
        b = other.unit * p ** (other.valuation - base)
        s = (a + b) % mod
        if s == 0:
            return CappedPadic.inexact_zero(p, absprec)
        v = int_valuation(s, p)
        return CappedPadic(p, base + v, (s // p ** v) % p ** (absprec - base - v),
                           absprec - base - v)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.prime
        if self.valuation is INF or other.valuation is INF:
            return CappedPadic(p, INF, 0, max(self.precision, other.precision, 1))
        v = self.valuation + other.valuation
        if self.precision == 0 or other.precision == 0:
            return CappedPadic.inexact_zero(p, v + min(self.precision, other.precision))
        prec = min(self.precision, other.precision)
        return CappedPadic(p, v, (self.unit * other.unit) % p ** prec, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.valuation is INF or other.precision == 0:
            raise ZeroDivisionError("division by a (possibly) zero capped p-adic")
        if other.valuation != 0:
            raise PrecisionError("capped division is only defined for units; use shift()")
        if self.valuation is INF:
            return self
        if self.precision == 0:
            return self
        prec = min(self.precision, other.precision)
        mod = self.prime ** prec
        return CappedPadic(self.prime, self.valuation, self.unit * pow(other.unit, -1, mod) % mod,
                           prec)

    def __pow__(self, n: int):
        if n < 0:
            one = CappedPadic.from_rational(1, self.prime, max(self.precision, 1))
            return one / self ** (-n)
        result = CappedPadic.from_rational(1, self.prime, max(self.precision, 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "CappedPadic":
        """Multiply by p^k exactly (k may be negative)."""
        if self.valuation is INF:
            return self
        return CappedPadic(self.prime, self.valuation + k, self.unit, self.precision)

    def __str__(self):
        if self.valuation is INF:
            return "0"
        if self.precision == 0:
            return f"O({self.prime}^{self.valuation})"
        return f"{self.prime}^{self.valuation}*{self.unit} + O({self.prime}^{self.absprec})"


def hensel_unit_root(k: int, seed: int, p: int, precision: int) -> CappedPadic:
    """Lift a k-th root of unity mod p to one modulo p^precision (k | p-1).

    >>> hensel_unit_root(4, 2, 5, 3).residue(3)
    57
    """
    if (p - 1) % k:
        raise BadSeed(f"{k} does not divide p-1={p - 1}")
    if pow(seed, k, p) != 1:
        raise BadSeed(f"{seed}^{k} is not 1 mod {p}")
    w = seed % p
    prec = 1
    while prec < precision:
        prec = min(2 * prec, precision)
        mod = p ** prec
        f = (pow(w, k, mod) - 1) % mod
        df = k * pow(w, k - 1, mod) % mod
        w = (w - f * pow(df, -1, mod)) % mod
    return CappedPadic(p, 0, w % p ** precision, precision)
