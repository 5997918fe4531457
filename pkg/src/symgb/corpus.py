"""Benchmark ideals and the plain-text ideal file format.

A file looks like::

    # comment
    ring: Q            (or: ring: Fp 127)
    vars: x y z
    order: dp
    perm: (1 2)(3)     (optional)
    x^2*y^2 - z
    x*y - 2*y + 3*z

Header lines come first, then one generator per line. Blank lines and
``#`` comments are ignored anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod
from pathlib import Path
from typing import Sequence

from .coeff import QQ, PrimeField
from .permutation import Permutation, apply_to_polynomial, parse_cycles
from .polynomial import ParseError, Polynomial, Ring

__all__ = [
    "IdealSpec",
    "gen_cyclic",
    "gen_swiss_francs",
    "parse_ideal",
    "parse_ideal_file",
    "print_ideal",
]


@dataclass(frozen=True)
class IdealSpec:
    ring: Ring
    generators: tuple[Polynomial, ...]
    symmetry: Permutation | None = None

    def __post_init__(self):
        for f in self.generators:
            if f.ring != self.ring:
                raise ValueError(f"generator {f} is not in {self.ring}")
        if self.symmetry is not None and self.symmetry.n != self.ring.n:
            raise ValueError("symmetry acts on a different number of variables")

    def with_ring(self, ring: Ring) -> "IdealSpec":
        return IdealSpec(ring, tuple(f.change_ring(ring) for f in self.generators), self.symmetry)

    def is_setwise_invariant(self, sigma: Permutation | None = None) -> bool:
        sigma = sigma or self.symmetry
        if sigma is None:
            return True
        gens = set(self.generators)
        return {apply_to_polynomial(sigma, f) for f in gens} == gens


def _domain(char) -> object:
    return QQ if not char else PrimeField(int(char))


def gen_cyclic(n: int, char: int = 0, order: str = "dp") -> IdealSpec:
    """cyclic(n) in ``x1..xn`` with its n-cycle symmetry."""
    if n < 2:
        raise ValueError("cyclic(n) needs n >= 2")
    ring = Ring([f"x{i}" for i in range(1, n + 1)], _domain(char), order)
    x = ring.gens()
    gens = []
    for d in range(1, n):
        gens.append(sum((prod((x[(i + j) % n] for j in range(d)), start=ring.one()) for i in range(n)),
                        start=ring.zero()))
    gens.append(prod(x, start=ring.one()) - 1)
    return IdealSpec(ring, tuple(gens), Permutation([*range(2, n + 1), 1]))


def gen_swiss_francs(char: int = 0, order: str = "dp", labeling: str = "34") -> IdealSpec:
    """The 100 Swiss Francs ideal J in nine variables.

    ``labeling="34"`` orders the ring ``a1..a4, b1..b4, u`` with symmetry
    (3 4)(7 8); ``labeling="45"`` puts ``u`` first, which turns the same swap
    of ``a3, a4`` and ``b3, b4`` into (4 5)(8 9).
    """
    a_names = [f"a{i}" for i in range(1, 5)]
    b_names = [f"b{i}" for i in range(1, 5)]
    if labeling == "34":
        names = a_names + b_names + ["u"]
        sigma = parse_cycles("(3 4)(7 8)", 9)
    elif labeling == "45":
        names = ["u"] + a_names + b_names
        sigma = parse_cycles("(4 5)(8 9)", 9)
    else:
        raise ValueError(f"unknown labeling {labeling!r}; use '34' or '45'")
    ring = Ring(names, _domain(char), order)
    a = [ring.var(s) for s in a_names]
    b = [ring.var(s) for s in b_names]
    u = ring.var("u")
    one = ring.one()

    def side(x, y, i):
        # f_i = side(a, b, i) and g_i = side(b, a, i):
        # sum_j y_j (1 + x_i y_i) prod_{k != j} (1 + x_i y_k) + y_i prod_k (1 + x_i y_k)
        fac = [one + x[i] * y[k] for k in range(4)]
        s = ring.zero()
        for j in range(4):
            s = s + y[j] * fac[i] * prod((fac[k] for k in range(4) if k != j), start=one)
        return s + y[i] * prod(fac, start=one)

    f = [side(a, b, i) for i in range(4)]
    g = [side(b, a, i) for i in range(4)]
    gens = [a[0] - b[0], sum(a, start=ring.zero()), sum(b, start=ring.zero()), *f, *g, one - u * a[0]]
    return IdealSpec(ring, tuple(gens), sigma)


# ---------------------------------------------------------------------------
# file format

_HEADER = re.compile(r"^\s*([A-Za-z]+)\s*:(.*)$")


def _parse_ring_field(value: str, lineno: int):
    v = value.strip()
    if v in ("Q", "QQ", "0"):
        return QQ
    m = re.fullmatch(r"(?:Fp|GF|F)?\s*\(?\s*(\d+)\s*\)?", v)
    if not m:
        raise ParseError(f"unknown ring {v!r}; expected 'Q' or 'Fp P'", lineno, 1)
    try:
        return _domain(int(m.group(1)))
    except ValueError as e:
        raise ParseError(str(e), lineno, 1) from None


def parse_ideal(text: str, *, default_char: int | None = None) -> IdealSpec:
    headers: dict[str, tuple[str, int]] = {}
    body: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m:
            if body:
                raise ParseError("header line after generators", lineno, 1)
            key = m.group(1).lower()
            if key not in ("ring", "vars", "order", "perm"):
                raise ParseError(f"unknown header {key!r}", lineno, 1)
            headers[key] = (m.group(2).strip(), lineno)
        else:
            body.append((line, lineno))
    if "vars" not in headers:
        raise ParseError("missing 'vars:' header", 1, 1)
    names = headers["vars"][0].replace(",", " ").split()
    if "ring" in headers:
        dom = _parse_ring_field(*headers["ring"])
    else:
        dom = _domain(default_char or 0)
    order = headers.get("order", ("dp", 0))[0]
    try:
        ring = Ring(names, dom, order)
    except ValueError as e:
        line = headers.get("order", headers["vars"])[1]
        raise ParseError(str(e), line, 1) from None
    sigma = None
    if "perm" in headers:
        val, lineno = headers["perm"]
        try:
            sigma = parse_cycles(val, ring.n)
        except ValueError as e:
            raise ParseError(str(e), lineno, 1) from None
    gens = tuple(ring.parse(line, lineno) for line, lineno in body)
    return IdealSpec(ring, gens, sigma)


def parse_ideal_file(path) -> IdealSpec:
    return parse_ideal(Path(path).read_text())


def _ring_header(ring: Ring) -> str:
    return "Q" if ring.domain.is_rational() else f"Fp {ring.domain.p}"


def print_ideal(spec: IdealSpec) -> str:
    lines = [
        f"ring: {_ring_header(spec.ring)}",
        "vars: " + " ".join(spec.ring.names),
        f"order: {spec.ring.order}",
    ]
    if spec.symmetry is not None:
        lines.append(f"perm: {spec.symmetry}")
    lines.extend(str(f) for f in spec.generators)
    return "\n".join(lines) + "\n"


def print_basis(ring: Ring, polys: Sequence[Polynomial]) -> str:
    """A basis as an ideal file without symmetry, so it can be fed back in."""
    return print_ideal(IdealSpec(ring, tuple(polys)))
