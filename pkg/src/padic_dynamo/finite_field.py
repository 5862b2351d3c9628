"""
Residue fields: F_p, or F_p[x]/(m) for a caller-supplied monic irreducible m.

Prime-field elements are ints in [0, p); extension elements are tuples of
length deg(m) (coefficients low degree first).
"""
from __future__ import annotations

from itertools import product

from .exact_scalar import padic_residue

__all__ = ["ResidueField"]


class ResidueField:
    def __init__(self, p: int, modulus=None):
        self.p = p
        if modulus is not None:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) < 2 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree >= 1")
            if len(modulus) == 2:
                modulus = None
        self.modulus = modulus
        self.degree = 1 if modulus is None else len(modulus) - 1

    @property
    def order(self) -> int:
        return self.p ** self.degree

    def __repr__(self):
        if self.modulus is None:
            return f"F_{self.p}"
        return f"F_{self.p}[x]/{self.modulus}"

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # elements ----------------------------------------------------------
    @property
    def zero(self):
        return 0 if self.modulus is None else (0,) * self.degree

    @property
    def one(self):
        return 1 if self.modulus is None else (1,) + (0,) * (self.degree - 1)

    def elements(self):
        if self.modulus is None:
            return list(range(self.p))
        return [tuple(t) for t in product(range(self.p), repeat=self.degree)]

    def from_int(self, n: int):
        if self.modulus is None:
            return n % self.p
        return (n % self.p,) + (0,) * (self.degree - 1)

    def reduce(self, x):
        """Reduction of a p-integral rational."""
        return self.from_int(padic_residue(x, self.p, 1))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        if self.modulus is None:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.modulus is None:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return self.sub(self.zero, a)

    def mul(self, a, b):
        p = self.p
        if self.modulus is None:
            return a * b % p
        n = self.degree
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        m = self.modulus
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(n + 1):
                    prod[k - n + j] -= c * m[j]
        return tuple(c % p for c in prod[:n])

    def pow(self, a, e: int):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("zero is not invertible")
        if self.modulus is None:
            return pow(a, -1, self.p)
        return self.pow(a, self.order - 2)

    # polynomials over the field: lists of elements, low degree first ----
    def poly_trim(self, f: list) -> list:
        f = list(f)
        while f and self.is_zero(f[-1]):
            f.pop()
        return f

    def poly_eval(self, f: list, x):
        acc = self.zero
        for c in reversed(f):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def poly_divmod(self, a: list, b: list):
        a, b = self.poly_trim(a), self.poly_trim(b)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        inv = self.inv(b[-1])
        q = [self.zero] * max(0, len(a) - len(b) + 1)
        r = list(a)
        for k in range(len(a) - len(b), -1, -1):
            c = self.mul(r[k + len(b) - 1], inv)
            q[k] = c
            if not self.is_zero(c):
                for j, y in enumerate(b):
                    r[k + j] = self.sub(r[k + j], self.mul(c, y))
        return self.poly_trim(q), self.poly_trim(r[: len(b) - 1])

    def poly_gcd(self, a: list, b: list) -> list:
        a, b = self.poly_trim(a), self.poly_trim(b)
        while b:
            a, b = b, self.poly_divmod(a, b)[1]
        if a:
            inv = self.inv(a[-1])
            a = [self.mul(c, inv) for c in a]
        return a
