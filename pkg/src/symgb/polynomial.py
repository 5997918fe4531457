"""Sparse multivariate polynomials over QQ or GF(p).

Monomials are packed into a single int. The high fields hold linear forms of
the exponent vector chosen so that integer comparison *is* the monomial
ordering; the low ``n`` fields hold the exponents themselves. Every field is
linear in the exponents, so multiplying monomials is integer addition and
divisibility is a single borrow test against the guard bits.

A polynomial stores its terms as a tuple of ``(monomial, coefficient)``
pairs, strictly descending in the ring's ordering, with no zero coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .coeff import QQ, PrimeField, RationalField

__all__ = [
    "Ordering",
    "Ring",
    "Polynomial",
    "ParseError",
    "ExponentOverflow",
    "compare",
    "parse_ordering",
]

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1


class ExponentOverflow(OverflowError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, line=1, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_ELEMENTARY = ("lp", "dp", "Dp")


@dataclass(frozen=True)
class Ordering:
    """A monomial ordering: ``lp``, ``dp``, ``Dp`` or a block product.

    ``blocks`` is empty for the elementary orderings; for a block ordering it
    lists ``(kind, size)`` segments covering the variables left to right.
    """

    kind: str = "dp"
    blocks: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.kind == "block":
            if not self.blocks or any(k not in _ELEMENTARY or c < 1 for k, c in self.blocks):
                raise ValueError(f"bad block ordering {self.blocks}")
        elif self.kind not in _ELEMENTARY or self.blocks:
            raise ValueError(f"unknown ordering {self.kind!r}")

    def __str__(self):
        if self.kind != "block":
            return self.kind
        return "block:" + ",".join(f"{k}{c}" for k, c in self.blocks)

    def segments(self, n: int) -> list[tuple[str, int, int]]:
        if self.kind != "block":
            return [(self.kind, 0, n)]
        if sum(c for _, c in self.blocks) != n:
            raise ValueError(f"block sizes of {self} do not sum to {n}")
        out, start = [], 0
        for k, c in self.blocks:
            out.append((k, start, start + c))
            start += c
        return out

    def is_degree_ordering(self, n: int) -> bool:
        segs = self.segments(n)
        return len(segs) == 1 and segs[0][0] in ("dp", "Dp")

    def rows(self, n: int) -> list[tuple[int, ...]]:
        """Weight rows whose lexicographic comparison realizes the ordering.

        dp on a segment uses the partial sums ``s_m, s_{m-1}, ..., s_2`` of
        the segment's exponents: for equal degree, a smaller last exponent is
        the same as a larger ``s_{m-1}``, and so on down the segment.
        """
        rows = []
        for kind, a, b in self.segments(n):
            if kind == "lp":
                idx = [[i] for i in range(a, b)]
            elif kind == "Dp":
                idx = [list(range(a, b))] + [[i] for i in range(a, b)]
            else:
                idx = [list(range(a, j)) for j in range(b, a, -1)]
            for sel in idx:
                rows.append(tuple(1 if i in sel else 0 for i in range(n)))
        return rows


def parse_ordering(text: str) -> Ordering:
    """Parse ``dp``, ``lp``, ``Dp``, ``block:dp8,lp1`` or ``(dp(8),lp(1))``."""
    t = text.strip()
    if t in _ELEMENTARY:
        return Ordering(t)
    m = re.fullmatch(r"block:(.*)", t)
    if m:
        parts = m.group(1).split(",")
        pat = r"\s*(lp|dp|Dp)\s*(\d+)\s*"
    elif t.startswith("(") and t.endswith(")"):
        parts = re.findall(r"[^,()]+\(\s*\d+\s*\)", t[1:-1])
        pat = r"\s*(lp|dp|Dp)\s*\(\s*(\d+)\s*\)\s*"
    else:
        raise ValueError(f"unknown ordering {text!r}")
    blocks = []
    for part in parts:
        pm = re.fullmatch(pat, part)
        if not pm:
            raise ValueError(f"bad block {part!r} in ordering {text!r}")
        blocks.append((pm.group(1), int(pm.group(2))))
    return Ordering("block", tuple(blocks))


class Ring:
    """Polynomial ring ``K[x_1, ..., x_n]`` with a fixed monomial ordering."""

    __slots__ = ("names", "domain", "order", "n", "_units", "_guard", "_nrows", "_index")

    def __init__(self, names, domain=QQ, order: Ordering | str = "dp"):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names are not distinct: {names}")
        for s in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", s):
                raise ValueError(f"bad variable name {s!r}")
        if isinstance(order, str):
            order = parse_ordering(order)
        if isinstance(domain, int):
            domain = QQ if domain == 0 else PrimeField(domain)
        self.names = names
        self.domain = domain
        self.order = order
        self.n = n = len(names)
        rows = order.rows(n)
        self._nrows = len(rows)
        nf = len(rows) + n
        units = []
        for i in range(n):
            m = 0
            for r in rows:
                m = (m << FIELD_BITS) | r[i]
            for j in range(n):
                m = (m << FIELD_BITS) | (1 if i == j else 0)
            units.append(m)
        self._units = tuple(units)
        guard = 0
        for _ in range(nf):
            guard = (guard << FIELD_BITS) | (1 << (FIELD_BITS - 1))
        self._guard = guard
        self._index = {s: i for i, s in enumerate(names)}

    # identity -----------------------------------------------------------

    def _key(self):
        return (self.names, self.domain, self.order)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Ring({' '.join(self.names)}; {self.domain}; {self.order})"

    def __getstate__(self):
        return (self.names, self.domain, self.order)

    def __setstate__(self, state):
        self.__init__(*state)

    def with_domain(self, domain) -> "Ring":
        return Ring(self.names, domain, self.order)

    def with_order(self, order) -> "Ring":
        return Ring(self.names, self.domain, order)

    @property
    def characteristic(self) -> int:
        return self.domain.characteristic

    # monomials ----------------------------------------------------------

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {tuple(exps)}")
        if sum(exps) > MAX_EXP:
            raise ExponentOverflow(f"total degree {sum(exps)} exceeds {MAX_EXP}")
        return sum(e * u for e, u in zip(exps, self._units))

    def unpack(self, m: int) -> tuple[int, ...]:
        n = self.n
        return tuple((m >> (FIELD_BITS * (n - 1 - i))) & FIELD_MASK for i in range(n))

    def mono_mul(self, a: int, b: int) -> int:
        c = a + b
        if c & self._guard:
            raise ExponentOverflow("exponent overflow in monomial product")
        return c

    def divides(self, a: int, b: int) -> bool:
        g = self._guard
        return ((b | g) - a) & g == g

    def mono_lcm(self, a: int, b: int) -> int:
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    def mono_degree(self, m: int) -> int:
        return sum(self.unpack(m))

    # constructors -------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial._new(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.domain.convert(c)
        return Polynomial._new(self, ((0, c),) if c else ())

    def gen(self, i: int) -> "Polynomial":
        return Polynomial._new(self, ((self._units[i], self.domain.convert(1)),))

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self._index[name])

    def from_dict(self, d: Mapping[Sequence[int], object]) -> "Polynomial":
        """Build from ``{exponent tuple: coefficient}``."""
        return Polynomial(self, ((self.pack(e), c) for e, c in d.items()))

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            return obj.change_ring(self)
        if isinstance(obj, str):
            return self.parse(obj)
        return self.constant(obj)

    def parse(self, text: str, line: int = 1) -> "Polynomial":
        return _Parser(self, text, line).parse()


def compare(a: Sequence[int], b: Sequence[int], order: Ordering | str) -> int:
    """Three-way comparison of exponent vectors: -1, 0 or 1."""
    if len(a) != len(b):
        raise ValueError("exponent vectors of different length")
    if isinstance(order, str):
        order = parse_ordering(order)
    for row in order.rows(len(a)):
        x = sum(w * e for w, e in zip(row, a))
        y = sum(w * e for w, e in zip(row, b))
        if x != y:
            return 1 if x > y else -1
    ta, tb = tuple(a), tuple(b)
    return (ta > tb) - (ta < tb)


class Polynomial:
    """An immutable polynomial; ``terms`` is descending in the ring ordering."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Iterable[tuple[int, object]] | Mapping[int, object] = ()):
        dom = ring.domain
        acc: dict[int, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            acc[m] = acc.get(m, 0) + dom.convert(c)
        self.ring = ring
        self.terms = _normalized(acc, dom)

    @classmethod
    def _new(cls, ring: Ring, terms: tuple) -> "Polynomial":
        f = object.__new__(cls)
        f.ring = ring
        f.terms = terms
        return f

    def __getstate__(self):
        return (self.ring, self.terms)

    def __setstate__(self, state):
        self.ring, self.terms = state

    # leading data -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _lead(self):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return self.terms[0]

    @property
    def LM(self) -> tuple[int, ...]:
        return self.ring.unpack(self._lead()[0])

    @property
    def LC(self):
        return self._lead()[1]

    @property
    def LT(self) -> "Polynomial":
        return Polynomial._new(self.ring, (self._lead(),))

    @property
    def lm_packed(self) -> int:
        return self._lead()[0]

    def tail(self) -> "Polynomial":
        self._lead()
        return Polynomial._new(self.ring, self.terms[1:])

    def monomials(self) -> list[tuple[int, ...]]:
        return [self.ring.unpack(m) for m, _ in self.terms]

    def coefficients(self) -> list:
        return [c for _, c in self.terms]

    def as_dict(self) -> dict[tuple[int, ...], object]:
        return {self.ring.unpack(m): c for m, c in self.terms}

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((self.ring.mono_degree(m) for m, _ in self.terms), default=-1)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return Polynomial._new(self.ring, _normalized(acc, self.ring.domain))

    __radd__ = __add__

    def __neg__(self):
        dom = self.ring.domain
        return Polynomial._new(self.ring, tuple((m, dom.neg(c)) for m, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        dom = self.ring.domain
        c = dom.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial._new(self.ring, tuple((m, dom.norm(a * c)) for m, a in self.terms))

    def mul_term(self, mono: int, c) -> "Polynomial":
        """Multiply by the term ``c * x^mono`` (``mono`` packed)."""
        dom = self.ring.domain
        c = dom.convert(c)
        if not c:
            return self.ring.zero()
        mm = self.ring.mono_mul
        return Polynomial._new(self.ring, tuple((mm(m, mono), dom.norm(a * c)) for m, a in self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) == 1:
            m, c = other.terms[0]
            return self.mul_term(m, c)
        if len(self.terms) == 1:
            m, c = self.terms[0]
            return other.mul_term(m, c)
        acc: dict[int, object] = {}
        get = acc.get
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 + m2
                acc[m] = get(m, 0) + c1 * c2
        for m in acc:
            if m & self.ring._guard:
                raise ExponentOverflow("exponent overflow in product")
        return Polynomial._new(self.ring, _normalized(acc, self.ring.domain))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            if not c.is_constant() or not c:
                raise ZeroDivisionError("division only by nonzero constants")
            c = c.terms[0][1]
        return self.scale(self.ring.domain.inv(self.ring.domain.convert(c)))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == 1:
            return self
        return self.scale(self.ring.domain.inv(lc))

    def primitive(self) -> "Polynomial":
        """Over QQ: integer coefficients with content 1 and positive LC."""
        if not self.terms or not self.ring.domain.is_rational():
            return self.monic()
        den = lcm(*(c.denominator for _, c in self.terms))
        nums = [c.numerator * (den // c.denominator) for _, c in self.terms]
        g = gcd(*nums)
        if nums[0] < 0:
            g = -g
        return Polynomial._new(self.ring, tuple((m, Fraction(a // g)) for (m, _), a in zip(self.terms, nums)))

    # ring maps ----------------------------------------------------------

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Reinterpret in ``ring`` (same variables): reorders and converts coefficients."""
        if ring is self.ring or ring == self.ring:
            return self
        if ring.n != self.ring.n:
            raise ValueError("rings have different numbers of variables")
        dom = ring.domain
        same_order = ring.order == self.ring.order
        unpack = self.ring.unpack
        acc = {}
        for m, c in self.terms:
            acc[m if same_order else ring.pack(unpack(m))] = dom.convert(c)
        return Polynomial._new(ring, _normalized(acc, dom))

    def permute(self, images: Sequence[int]) -> "Polynomial":
        """Rename ``x_i -> x_{images[i]}`` (0-based images)."""
        ring = self.ring
        n = ring.n
        acc = {}
        for m, c in self.terms:
            e = ring.unpack(m)
            ne = [0] * n
            for i, a in enumerate(e):
                ne[images[i]] = a
            acc[ring.pack(ne)] = c
        return Polynomial._new(ring, tuple(sorted(acc.items(), reverse=True)))

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring homomorphism image under ``x_i -> images[i]``."""
        ring = self.ring
        if len(images) != ring.n:
            raise ValueError(f"need {ring.n} images, got {len(images)}")
        target = images[0].ring if images else ring
        powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: img} for img in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        acc: dict[int, object] = {}
        get = acc.get
        for m, c in self.terms:
            t = target.constant(c)
            for i, e in enumerate(ring.unpack(m)):
                if e:
                    t = t * power(i, e)
            for tm, tc in t.terms:
                acc[tm] = get(tm, 0) + tc
        return Polynomial._new(target, _normalized(acc, target.domain))

    def evaluate_scalars(self, scalars: Sequence) -> "Polynomial":
        """Image under the diagonal map ``x_i -> scalars[i] * x_i``."""
        dom = self.ring.domain
        unpack = self.ring.unpack
        out = []
        for m, c in self.terms:
            s = c
            for a, e in zip(scalars, unpack(m)):
                if e:
                    s = s * a**e
            s = dom.norm(s)
            if s:
                out.append((m, s))
        return Polynomial._new(self.ring, tuple(out))

    # text ---------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _normalized(acc: dict, dom) -> tuple:
    if isinstance(dom, RationalField):
        return tuple(sorted(((m, Fraction(c)) for m, c in acc.items() if c), reverse=True))
    p = dom.p
    out = []
    for m, c in acc.items():
        c %= p
        if c:
            out.append((m, c))
    out.sort(reverse=True)
    return tuple(out)


# printing ---------------------------------------------------------------


def format_monomial(ring: Ring, m: int) -> str:
    parts = []
    for name, e in zip(ring.names, ring.unpack(m)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    dom = f.ring.domain
    out = []
    for i, (m, c) in enumerate(f.terms):
        if isinstance(dom, PrimeField):
            c = dom.symmetric(c)
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(f.ring, m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive-descent parser for ``+ - * / ^`` and parentheses."""

    def __init__(self, ring: Ring, text: str, line: int = 1):
        self.ring = ring
        self.text = text
        self.line = line
        self.toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self.fail(f"unexpected character {text[pos]!r}", pos)
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("num", m.group(1), start))
            elif m.group(2):
                self.toks.append(("name", m.group(2), start))
            else:
                op = m.group(3)
                self.toks.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        self.i = 0

    def fail(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, self.line, pos + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.toks:
            self.fail("empty polynomial")
        f = self.expr()
        if self.i < len(self.toks):
            self.fail(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self):
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                g = self.factor()
                if not g.is_constant() or not g:
                    self.fail("division by a non-constant or zero", pos)
                f = f / g
            else:
                return f

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.peek()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer", pos)
            self.take()
            try:
                return base ** int(val)
            except ExponentOverflow as exc:
                self.fail(str(exc), pos)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.ring._index:
                self.fail(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            f = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                self.fail("expected ')'", p2)
            return f
        self.fail("unexpected end of input" if kind is None else f"unexpected {val!r}", pos)
