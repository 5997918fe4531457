"""Permutations of variable indices and the ring automorphisms they induce.

Indices are 1-based throughout the public API, matching cycle notation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

from .polynomial import Polynomial

__all__ = [
    "CycleDecomposition",
    "Permutation",
    "apply_to_polynomial",
    "check_symmetry",
    "decompose",
    "order",
    "parse_cycles",
    "symmetrize_generators",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int | None = None) -> "Permutation":
        cycles = [tuple(c) for c in cycles]
        seen = [i for c in cycles for i in c]
        if len(seen) != len(set(seen)):
            raise ValueError("cycles are not disjoint")
        if any(i < 1 for i in seen):
            raise ValueError("cycle entries must be positive")
        top = max(seen, default=0)
        if n is None:
            n = top
        elif top > n:
            raise ValueError(f"index {top} exceeds n={n}")
        images = list(range(1, n + 1))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                images[a - 1] = b
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) = self(other(i))``."""
        if self.n != other.n:
            raise ValueError("permutations act on different sets")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(inv)

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        out = Permutation.identity(self.n)
        for _ in range(abs(e) % order(self) if self.n else 0):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def zero_based(self) -> list[int]:
        return [j - 1 for j in self.images]

    def __str__(self):
        return decompose(self).cycle_string()


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles in canonical form, fixed points included."""

    n: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles)) if self.cycles else 1

    def permutation(self) -> Permutation:
        return Permutation.from_cycles(self.cycles, self.n)

    def cycle_string(self, sep: str = " ") -> str:
        return "".join("(" + sep.join(map(str, c)) + ")" for c in self.cycles)


def decompose(sigma: Permutation) -> CycleDecomposition:
    """Cycles rotated to start at their minimum, sorted by that minimum."""
    seen = [False] * (sigma.n + 1)
    cycles = []
    for start in range(1, sigma.n + 1):
        if seen[start]:
            continue
        c = []
        i = start
        while not seen[i]:
            seen[i] = True
            c.append(i)
            i = sigma(i)
        cycles.append(tuple(c))
    return CycleDecomposition(sigma.n, tuple(cycles))


def order(sigma: Permutation) -> int:
    return decompose(sigma).order()


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``(1 2)(3)`` or ``(1,6)(2,5)(3,4)``.

    Indices not mentioned are fixed. Entries must be separated by spaces or
    commas; ``(12)`` means the single index twelve.
    """
    text = text.strip()
    cycles = []
    pos = 0
    for m in _CYCLE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"unexpected text in permutation at column {pos + 1}: {text[pos:m.start()]!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append(tuple(int(t) for t in body))
        except ValueError:
            raise ValueError(f"bad cycle entry in {m.group(0)!r}") from None
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"unexpected text in permutation at column {pos + 1}: {text[pos:]!r}")
    return Permutation.from_cycles([c for c in cycles if c], n)


def apply_to_polynomial(sigma: Permutation, f: Polynomial) -> Polynomial:
    """Image of ``f`` under ``x_i -> x_sigma(i)``."""
    if sigma.n != f.ring.n:
        raise ValueError(f"permutation on {sigma.n} points, ring has {f.ring.n} variables")
    if sigma.is_identity():
        return f
    return f.permute(sigma.zero_based())


def symmetrize_generators(F: Sequence[Polynomial], sigma: Permutation) -> list[Polynomial]:
    """``F`` together with its images under the powers of ``sigma``, deduplicated.

    Order is deterministic: the input first, then each new image in turn.
    """
    k = order(sigma)
    out: list[Polynomial] = []
    seen = set()
    for f in F:
        g = f
        for _ in range(k):
            if g not in seen:
                seen.add(g)
                out.append(g)
            g = apply_to_polynomial(sigma, g)
    return out


def check_symmetry(F: Sequence[Polynomial], sigma: Permutation, G) -> bool:
    """True iff every ``sigma(f)`` lies in the ideal with Groebner basis ``G``."""
    from .groebner import normal_form

    elems = list(G)
    return all(not normal_form(apply_to_polynomial(sigma, f), elems) for f in F)
