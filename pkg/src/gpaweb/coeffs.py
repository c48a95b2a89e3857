"""Exact scalars and q-combinatorics.

Coefficients live either in the rationals or in a prime field F_p.  Rational
scalars are :class:`fractions.Fraction`; F_p scalars are plain ``int`` values
reduced into ``[0, p)``.  A :class:`Field` carries the arithmetic so values can
stay lightweight.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Union

Scalar = Union[int, Fraction]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``p == 0`` means the rationals, otherwise F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"field modulus must be prime, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accepts ``Q``, ``QQ``, ``F5``, ``Fp5``, ``GF5`` (case-insensitive)."""
        t = text.strip().upper()
        if t in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        m = re.fullmatch(r"(?:GF|FP|F)(\d+)", t)
        if not m:
            raise ValueError(f"unrecognised field {text!r}")
        return cls(int(m.group(1)))

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    def __call__(self, x) -> Scalar:
        return self.reduce(x)

    def reduce(self, x) -> Scalar:
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{x} has no image in F{self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self) -> Scalar:
        return self.reduce(0)

    @property
    def one(self) -> Scalar:
        return self.reduce(1)

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def format(self, x) -> str:
        """Exact text form: ``a/b`` for rationals, the representative for F_p."""
        x = self.reduce(x)
        if self.p == 0:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def to_json(self, x):
        x = self.reduce(x)
        if self.p == 0:
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return x


QQ = Field(0)


def reduce(x, field: Field) -> Scalar:
    """Canonical image of an integer (or rational) in ``field``."""
    return field.reduce(x)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when ``k < 0`` or ``k > n``."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def signed_binomial(a: int, t: int) -> int:
    """Binomial coefficient with an arbitrary integer upper index.

    ``a(a-1)...(a-t+1)/t!`` for ``t >= 0``; for negative ``a`` this is
    ``(-1)^t C(t-a-1, t)``.  Agrees with :func:`binomial` whenever ``a >= 0``.
    """
    if t < 0:
        return 0
    if a >= 0:
        return binomial(a, t)
    return (-1) ** t * comb(t - a - 1, t)


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over F_q.

    Uses the product formula prod_{i<k} (q^{n-i} - 1)/(q^{i+1} - 1); at q = 1 it
    is the ordinary binomial coefficient.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if k < 0 or k > n:
        return 0
    if q == 1:
        return comb(n, k)
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def q_integer(k: int, q: int) -> int:
    """Unbalanced q-integer 1 + q + ... + q^{k-1}."""
    return gaussian_binomial(k, 1, q)


def q_factorial(k: int, q: int) -> int:
    out = 1
    for i in range(1, k + 1):
        out *= q_integer(i, q)
    return out
