"""Exact real numbers of the form sum_r c_r * sqrt(r).

Each r is a squarefree positive integer and each c_r a Fraction, so a Surd
lives in a multi-quadratic field Q(sqrt(p1), ..., sqrt(pn)).  The square
roots of distinct squarefree integers are linearly independent over Q,
which makes equality and zero tests exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import factorint

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n == s*s*r and r squarefree."""
    s, r = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


@lru_cache(maxsize=None)
def _primes(r: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(r)))


class Surd:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {r: Fraction(c) for r, c in (terms or {}).items() if c}

    # construction

    @staticmethod
    def sqrt(q: Rational) -> "Surd":
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        if q == 0:
            return Surd()
        # sqrt(a/b) = sqrt(a*b)/b
        s, r = _squarefree_split(q.numerator * q.denominator)
        return Surd({r: Fraction(s, q.denominator)})

    @staticmethod
    def lift(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Fraction)):
            return Surd({1: Fraction(x)})
        raise TypeError(f"cannot coerce {type(x).__name__} to Surd")

    # queries

    def is_rational(self) -> bool:
        return all(r == 1 for r in self.terms)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def simplify(self):
        """Collapse to a Fraction when possible."""
        return self.rational() if self.is_rational() else self

    def primes(self) -> set[int]:
        out: set[int] = set()
        for r in self.terms:
            out.update(_primes(r))
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __float__(self) -> float:
        return sum(float(c) * r ** 0.5 for r, c in self.terms.items())

    def __eq__(self, other) -> bool:
        try:
            other = Surd.lift(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational())
        return hash(frozenset(self.terms.items()))

    # arithmetic

    def __add__(self, other):
        try:
            other = Surd.lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out.get(r, 0) + c
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({r: -c for r, c in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-Surd.lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return Surd.lift(other) - self

    def __mul__(self, other):
        try:
            other = Surd.lift(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                s, r = _squarefree_split(r1 * r2)
                out[r] = out.get(r, 0) + c1 * c2 * s
        return Surd(out)

    __rmul__ = __mul__

    def _split(self, p: int) -> tuple["Surd", "Surd"]:
        """Write self = a + b*sqrt(p) with a, b free of sqrt(p)."""
        a, b = {}, {}
        for r, c in self.terms.items():
            if r % p == 0:
                b[r // p] = c
            else:
                a[r] = c
        return Surd(a), Surd(b)

    def inverse(self) -> "Surd":
        if not self:
            raise ZeroDivisionError("Surd division by zero")
        ps = self.primes()
        if not ps:
            return Surd({1: 1 / self.terms[1]})
        p = max(ps)
        a, b = self._split(p)
        # (a + b sqrt p)^-1 = (a - b sqrt p) / (a^2 - p b^2)
        norm = a * a - b * b * p
        return (a - b * Surd.sqrt(p)) * norm.inverse()

    def __truediv__(self, other):
        try:
            other = Surd.lift(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Surd.lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Surd.lift(1)
        for _ in range(n):
            out = out * self
        return out

    def sign(self) -> int:
        """Exact sign, by recursive comparison of squares."""
        if not self:
            return 0
        ps = self.primes()
        if not ps:
            c = self.terms[1]
            return (c > 0) - (c < 0)
        p = max(ps)
        a, b = self._split(p)
        sa, sb = a.sign(), b.sign()
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        if sb == 0:
            return sa
        return sa if (a * a - b * b * p).sign() > 0 else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # text form: "3/2+1/5*sqrt(10)"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for r in sorted(self.terms):
            c = self.terms[r]
            parts.append(str(c) if r == 1 else f"{c}*sqrt({r})")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self) -> str:
        return f"Surd({self})"


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def parse_scalar(text: str):
    """Parse "p/q" or a sum of "c*sqrt(r)" terms; rationals come back as Fraction."""
    text = text.replace(" ", "")
    if "sqrt" not in text:
        return Fraction(text)
    total = Surd()
    i, n = 0, len(text)
    while i < n:
        j = i + 1
        while j < n and text[j] not in "+-":
            j += 1
        chunk = text[i:j]
        if chunk.endswith(")") and "sqrt(" in chunk:
            coeff, _, rad = chunk.partition("*sqrt(")
            if not _:
                coeff, rad = chunk.split("sqrt(")[0] or "1", chunk.split("sqrt(")[1]
                coeff = {"": "1", "+": "1", "-": "-1"}.get(coeff, coeff)
            total = total + Fraction(coeff) * Surd.sqrt(int(rad.rstrip(")")))
        else:
            total = total + Fraction(chunk)
        i = j
    return total.simplify()


def format_scalar(x) -> str:
    if isinstance(x, Surd):
        return str(x.simplify())
    return str(Fraction(x))
