"""Exact coefficient arithmetic.

Word-size prime fields, rationals (:class:`fractions.Fraction`), Chinese
remaindering and Farey rational reconstruction, plus primitive roots of unity
in prime fields.

Field elements of F_p are plain Python ints kept in ``[0, p)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import gmpy2

__all__ = [
    "QQ",
    "PrimeField",
    "RationalField",
    "CrtAccumulator",
    "NoRootError",
    "crt_extend",
    "farey_reconstruct",
    "is_prime",
    "prime_factors",
    "primitive_kth_root",
    "is_primitive_kth_root",
]

MAX_PRIME = 2**31


class NoRootError(ArithmeticError):
    """Raised when F_p holds no primitive k-th root of unity."""


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n, 30))


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a small positive integer, ascending."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class RationalField:
    """The field of rational numbers; elements are ``Fraction``."""

    characteristic = 0

    def __str__(self):
        return "QQ"

    def convert(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def norm(self, x):
        return x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def neg(self, x):
        return -x

    def is_rational(self) -> bool:
        return True


QQ = RationalField()


@dataclass(frozen=True)
class PrimeField:
    """F_p for a word-size prime ``3 <= p < 2**31``."""

    p: int

    def __post_init__(self):
        if not (3 <= self.p < MAX_PRIME) or not is_prime(self.p):
            raise ValueError(f"{self.p} is not a prime in [3, 2^31)")

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return f"GF({self.p})"

    def is_rational(self) -> bool:
        return False

    def convert(self, x) -> int:
        """Map an int or Fraction into ``[0, p)``."""
        if isinstance(x, int):
            return x % self.p
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def norm(self, x: int) -> int:
        return x % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def symmetric(self, a: int) -> int:
        """Representative of ``a`` in ``(-p/2, p/2]``."""
        return a - self.p if a > self.p // 2 else a


def is_primitive_kth_root(xi: int, k: int, p: int) -> bool:
    if pow(xi, k, p) != 1:
        return False
    return all(pow(xi, k // q, p) != 1 for q in prime_factors(k))


def primitive_kth_root(field: PrimeField, k: int, rng: random.Random | None = None) -> int:
    """Return a primitive k-th root of unity in ``field``.

    Draws random nonzero ``g`` and tests ``g**((p-1)/k)``; a fresh draw
    succeeds with probability ``phi(k)/k``. The default generator is seeded
    from ``(p, k)`` so repeated calls agree.
    """
    p = field.p
    if k < 1 or (p - 1) % k:
        raise NoRootError(f"no primitive {k}-th root of unity in GF({p}): {k} does not divide {p - 1}")
    if k == 1:
        return 1
    if k == 2:
        return p - 1
    rng = rng or random.Random(p * 1_000_003 + k)
    e = (p - 1) // k
    while True:
        xi = pow(rng.randrange(2, p), e, p)
        if is_primitive_kth_root(xi, k, p):
            return xi


@dataclass(frozen=True)
class CrtAccumulator:
    """A residue modulo a squarefree modulus; start from ``CrtAccumulator()``."""

    residue: int = 0
    modulus: int = 1


def crt_extend(acc: CrtAccumulator, residue: int, p: int) -> CrtAccumulator:
    """Combine ``acc`` with ``residue mod p`` into a residue mod ``acc.modulus * p``."""
    m = acc.modulus
    if gcd(m, p) != 1:
        raise ValueError(f"modulus {p} is not coprime to {m}")
    r = acc.residue
    t = (residue - r) * pow(m, -1, p) % p
    return CrtAccumulator(r + m * t, m * p)


def farey_reconstruct(residue: int, modulus: int) -> Fraction | None:
    """Recover ``a/b`` with ``a * b^-1 = residue (mod modulus)``.

    Both ``|a|`` and ``b`` are bounded by ``isqrt((modulus - 1) // 2)``.
    Returns None when no such fraction exists.
    """
    bound = isqrt((modulus - 1) // 2)
    r0, r1 = modulus, residue % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1 or gcd(s1, modulus) != 1:
        return None
    return Fraction(r1, s1)
