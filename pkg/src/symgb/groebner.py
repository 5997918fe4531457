"""Buchberger's algorithm: S-polynomials, normal forms, reduced Groebner bases.

Two internal engines share one driver: over GF(p) coefficients are ints
reduced lazily mod p; over QQ every working polynomial is kept with integer
coefficients and reduction is fraction-free, so no rational arithmetic is done
until the final basis is made monic.

Normal forms pick, among the reducers whose leading monomial divides the
current term, the one with the smallest leading monomial. Critical pairs are
processed by the normal strategy (smallest lcm degree, then smallest lcm in
the ordering, then creation order) and filtered by the Gebauer-Moeller
installation of the product and chain criteria.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right, insort
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .polynomial import Polynomial, Ring

__all__ = [
    "GroebnerBasis",
    "buchberger",
    "interreduce",
    "is_groebner_basis",
    "normal_form",
    "s_polynomial",
]


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis, elements ascending by leading monomial."""

    ring: Ring
    elements: tuple[Polynomial, ...]
    lm_fingerprint: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lm_fingerprint", tuple(g.LM for g in self.elements))

    @property
    def ordering(self):
        return self.ring.order

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def change_ring(self, ring: Ring) -> "GroebnerBasis":
        """Coefficientwise image in ``ring``; only meaningful for matching orderings."""
        return GroebnerBasis(ring, tuple(g.change_ring(ring) for g in self.elements))

    def __str__(self):
        return "\n".join(str(g) for g in self.elements)


# ---------------------------------------------------------------------------
# reducer lookup


class _Reducers:
    """Active reducers indexed by leading monomial, smallest first."""

    __slots__ = ("guard", "leads", "polys", "cache")

    def __init__(self, guard: int):
        self.guard = guard
        self.leads: list[int] = []
        self.polys: dict[int, tuple] = {}
        self.cache: dict[int, int] = {}

    def add(self, lead: int, tail: tuple) -> None:
        insort(self.leads, lead)
        self.polys[lead] = tail
        self.cache.clear()

    def remove(self, lead: int) -> None:
        self.leads.remove(lead)
        del self.polys[lead]
        self.cache.clear()

    def find(self, m: int) -> int:
        """Smallest active leading monomial dividing ``m``, or -1."""
        hit = self.cache.get(m)
        if hit is not None:
            return hit
        g = self.guard
        mg = m | g
        leads = self.leads
        res = -1
        for j in range(bisect_right(leads, m)):
            lm = leads[j]
            if (mg - lm) & g == g:
                res = lm
                break
        self.cache[m] = res
        return res


# ---------------------------------------------------------------------------
# GF(p) engine: a polynomial is (monos, coeffs) with coeffs in [0, p)


class _FpEngine:
    def __init__(self, ring: Ring):
        self.ring = ring
        self.p = ring.domain.p

    def from_poly(self, f: Polynomial):
        return [m for m, _ in f.terms], [c for _, c in f.terms]

    def to_poly(self, monos, coeffs) -> Polynomial:
        return Polynomial._new(self.ring, tuple(zip(monos, coeffs)))

    def normalize(self, monos, coeffs):
        p = self.p
        lc = coeffs[0]
        if lc == 1:
            return monos, coeffs
        inv = pow(lc, -1, p)
        return monos, [c * inv % p for c in coeffs]

    def reducer_tail(self, monos, coeffs):
        # reducers are monic; store the tail pre-negated so reduction is additive
        p = self.p
        return (monos[0], monos[1:], [p - c for c in coeffs[1:]])

    def spoly_seed(self, f, g, u: int, v: int):
        """Terms of ``x^u*f - x^v*g`` minus the cancelled leads, unreduced."""
        p = self.p
        d: dict[int, int] = {}
        fm, fc = f
        gm, gc = g
        for m, c in zip(fm[1:], fc[1:]):
            d[m + u] = c
        get = d.get
        for m, c in zip(gm[1:], gc[1:]):
            mm = m + v
            d[mm] = get(mm, 0) + p - c
        return d

    def reduce(self, d: dict, red: _Reducers, full: bool = True):
        """Normal form of the polynomial held in ``d`` (consumed)."""
        p = self.p
        find = red.find
        polys = red.polys
        heap = [-m for m in d]
        heapq.heapify(heap)
        pop = heapq.heappop
        push = heapq.heappush
        get = d.get
        out_m: list[int] = []
        out_c: list[int] = []
        while heap:
            m = -pop(heap)
            c = d.pop(m) % p
            if not c:
                continue
            lead = find(m)
            if lead < 0:
                out_m.append(m)
                out_c.append(c)
                if not full:
                    rest = sorted(((k, v % p) for k, v in d.items() if v % p), reverse=True)
                    out_m.extend(k for k, _ in rest)
                    out_c.extend(v for _, v in rest)
                    break
                continue
            _, tm, tc = polys[lead]
            q = m - lead
            for a, b in zip(tm, tc):
                mm = a + q
                v = get(mm)
                if v is None:
                    d[mm] = c * b
                    push(heap, -mm)
                else:
                    d[mm] = v + c * b
        return out_m, out_c

    def from_dict(self, d: dict):
        p = self.p
        items = sorted(((m, c % p) for m, c in d.items() if c % p), reverse=True)
        return [m for m, _ in items], [c for _, c in items]

    def finish(self, monos, coeffs) -> Polynomial:
        return self.to_poly(*self.normalize(monos, coeffs))


# ---------------------------------------------------------------------------
# QQ engine: integer coefficients, primitive with positive leading coefficient


def _primitive(monos, coeffs):
    g = gcd(*coeffs)
    if coeffs[0] < 0:
        g = -g
    if g != 1:
        coeffs = [c // g for c in coeffs]
    return monos, coeffs


class _QQEngine:
    def __init__(self, ring: Ring):
        self.ring = ring

    def from_poly(self, f: Polynomial):
        p = f.primitive()
        return [m for m, _ in p.terms], [int(c) for _, c in p.terms]

    def normalize(self, monos, coeffs):
        return _primitive(monos, coeffs)

    def reducer_tail(self, monos, coeffs):
        return (coeffs[0], monos[1:], [-c for c in coeffs[1:]])

    def spoly_seed(self, f, g, u: int, v: int):
        fm, fc = f
        gm, gc = g
        a, b = fc[0], gc[0]
        h = gcd(a, b)
        a, b = a // h, b // h
        # b*x^u*f - a*x^v*g
        d: dict[int, int] = {}
        for m, c in zip(fm[1:], fc[1:]):
            d[m + u] = b * c
        get = d.get
        for m, c in zip(gm[1:], gc[1:]):
            mm = m + v
            d[mm] = get(mm, 0) - a * c
        return d

    def reduce(self, d: dict, red: _Reducers, full: bool = True):
        """Fraction-free normal form. Returns ``(monos, coeffs, scale)``."""
        find = red.find
        polys = red.polys
        heap = [-m for m in d]
        heapq.heapify(heap)
        pop = heapq.heappop
        push = heapq.heappush
        out_m: list[int] = []
        out_c: list[int] = []
        scale = 1
        while heap:
            m = -pop(heap)
            c = d.pop(m)
            if not c:
                continue
            lead = find(m)
            if lead < 0:
                out_m.append(m)
                out_c.append(c)
                if not full:
                    rest = sorted(((k, v) for k, v in d.items() if v), reverse=True)
                    out_m.extend(k for k, _ in rest)
                    out_c.extend(v for _, v in rest)
                    break
                continue
            lc, tm, tc = polys[lead]
            h = gcd(lc, c)
            fa, fc_ = lc // h, c // h
            if fa != 1:
                scale *= fa
                for k in d:
                    d[k] *= fa
                for i in range(len(out_c)):
                    out_c[i] *= fa
            q = m - lead
            get = d.get
            for a, b in zip(tm, tc):
                mm = a + q
                v = get(mm)
                if v is None:
                    d[mm] = fc_ * b
                    push(heap, -mm)
                else:
                    d[mm] = v + fc_ * b
        self.last_scale = scale
        return out_m, out_c

    def from_dict(self, d: dict):
        items = sorted(((m, c) for m, c in d.items() if c), reverse=True)
        return [m for m, _ in items], [c for _, c in items]

    def finish(self, monos, coeffs) -> Polynomial:
        lc = coeffs[0]
        return Polynomial._new(self.ring, tuple((m, Fraction(c, lc)) for m, c in zip(monos, coeffs)))


def _engine(ring: Ring):
    return _QQEngine(ring) if ring.domain.is_rational() else _FpEngine(ring)


# ---------------------------------------------------------------------------
# public single-step operations


def _check_ring(polys: Sequence[Polynomial]) -> Ring | None:
    ring = None
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring is not ring and f.ring != ring:
            raise ValueError(f"ring mismatch: {ring} vs {f.ring}")
    return ring


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """``x^(gamma-alpha)*f - LC(f)/LC(g) * x^(gamma-beta)*g`` with ``x^gamma = lcm``."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    ring = _check_ring([f, g])
    fm, gm = f.lm_packed, g.lm_packed
    lcm = ring.mono_lcm(fm, gm)
    ratio = ring.domain.norm(f.LC * ring.domain.inv(g.LC))
    return f.mul_term(lcm - fm, 1) - g.mul_term(lcm - gm, ratio)


def normal_form(f: Polynomial, G: Iterable[Polynomial]) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``G``."""
    G = [g for g in G if g]
    ring = _check_ring([f, *G])
    if not f or not G:
        return f
    eng = _engine(ring)
    red = _Reducers(ring._guard)
    seen = set()
    for g in G:
        # keep the first reducer per leading monomial, as index order demands
        monos, coeffs = eng.normalize(*eng.from_poly(g))
        if monos[0] in seen:
            continue
        seen.add(monos[0])
        red.add(monos[0], eng.reducer_tail(monos, coeffs))
    if isinstance(eng, _QQEngine):
        den = 1
        for _, c in f.terms:
            den = den * c.denominator // gcd(den, c.denominator)
        d = {m: int(c * den) for m, c in f.terms}
        monos, coeffs = eng.reduce(d, red)
        total = eng.last_scale * den
        return Polynomial._new(ring, tuple((m, Fraction(c, total)) for m, c in zip(monos, coeffs)))
    monos, coeffs = eng.reduce(dict(f.terms), red)
    return eng.to_poly(monos, coeffs)


# ---------------------------------------------------------------------------
# Buchberger driver


class _State:
    """Basis under construction plus the critical-pair queue."""

    def __init__(self, ring: Ring, eng, full_reduce: bool):
        self.ring = ring
        self.eng = eng
        self.full = full_reduce
        self.polys: list[tuple[list, list]] = []
        self.lms: list[int] = []
        self.exps: list[tuple[int, ...]] = []
        self.active: list[int] = []
        self.red = _Reducers(ring._guard)
        self.pairs: dict[int, tuple[int, int, int]] = {}
        self.heap: list = []
        self.counter = 0
        self.guard = ring._guard
        self.units = ring._units
        self.unit_found = False

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, i: int, j: int):
        e = tuple(max(x, y) for x, y in zip(self.exps[i], self.exps[j]))
        return sum(a * u for a, u in zip(e, self.units)), sum(e)

    def add(self, monos, coeffs) -> None:
        monos, coeffs = self.eng.normalize(monos, coeffs)
        h = len(self.polys)
        self.polys.append((monos, coeffs))
        mh = monos[0]
        self.lms.append(mh)
        self.exps.append(self.ring.unpack(mh))
        if mh == 0:
            self.unit_found = True
        self._update(h)
        self.red.add(mh, self.eng.reducer_tail(monos, coeffs))

    def _update(self, h: int) -> None:
        lms = self.lms
        mh = lms[h]
        divides = self.divides
        cand = []
        for g in self.active:
            L, deg = self.lcm(h, g)
            cand.append((g, L, deg, L == mh + lms[g]))
        kept = []
        for idx, (g, L, deg, coprime) in enumerate(cand):
            if coprime:
                kept.append((g, L, deg, coprime))
                continue
            if any(divides(c[1], L) for c in cand[idx + 1:]):
                continue
            if any(divides(c[1], L) for c in kept):
                continue
            kept.append((g, L, deg, coprime))
        dead = []
        for pid, (i, j, L) in self.pairs.items():
            if divides(mh, L):
                Li, _ = self.lcm(i, h)
                Lj, _ = self.lcm(j, h)
                if Li != L and Lj != L:
                    dead.append(pid)
        for pid in dead:
            del self.pairs[pid]
        for g, L, deg, coprime in kept:
            if coprime:
                continue
            pid = self.counter
            self.counter += 1
            self.pairs[pid] = (g, h, L)
            heapq.heappush(self.heap, (deg, L, pid))
        still = []
        for g in self.active:
            if divides(mh, lms[g]):
                self.red.remove(lms[g])
            else:
                still.append(g)
        still.append(h)
        self.active = still

    def next_pair(self):
        heap = self.heap
        while heap:
            _, _, pid = heapq.heappop(heap)
            pair = self.pairs.pop(pid, None)
            if pair is not None:
                return pair
        return None

    def spoly(self, i: int, j: int, L: int) -> dict:
        return self.eng.spoly_seed(self.polys[i], self.polys[j], L - self.lms[i], L - self.lms[j])


def _run(ring: Ring, inputs: Sequence[Polynomial], full_reduce: bool = True) -> list[Polynomial]:
    eng = _engine(ring)
    st = _State(ring, eng, full_reduce)
    seeds = sorted((f for f in inputs if f), key=lambda f: (f.lm_packed, len(f.terms)))
    for f in seeds:
        monos, coeffs = eng.from_poly(f)
        monos, coeffs = eng.reduce(dict(zip(monos, coeffs)), st.red, full_reduce)
        if monos:
            st.add(monos, coeffs)
            if st.unit_found:
                return [ring.one()]
    while True:
        pair = st.next_pair()
        if pair is None:
            break
        i, j, L = pair
        monos, coeffs = eng.reduce(st.spoly(i, j, L), st.red, full_reduce)
        if monos:
            st.add(monos, coeffs)
            if st.unit_found:
                return [ring.one()]
    return _interreduce_state(st)


def _interreduce_state(st: _State) -> list[Polynomial]:
    eng = st.eng
    out = []
    for g in st.active:
        monos, coeffs = st.polys[g]
        red_tail = st.red
        lead = monos[0]
        # reduce the tail only; the leading monomial is minimal in the basis
        d = dict(zip(monos[1:], coeffs[1:]))
        tm, tc = eng.reduce(d, red_tail, True)
        if isinstance(eng, _QQEngine):
            s = eng.last_scale
            monos2, coeffs2 = [lead] + tm, [coeffs[0] * s] + tc
        else:
            monos2, coeffs2 = [lead] + tm, [coeffs[0]] + tc
        out.append(eng.finish(*eng.normalize(monos2, coeffs2)))
    out.sort(key=lambda f: f.lm_packed)
    return out


def buchberger(F: Iterable[Polynomial], ring: Ring | None = None, full_reduce: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``F``.

    ``ring`` is only needed when ``F`` is empty. The zero ideal gives an
    empty basis; any nonzero constant collapses the basis to ``[1]``.
    """
    F = list(F)
    r = _check_ring(F)
    ring = r or ring
    if ring is None:
        raise ValueError("cannot infer the ring of an empty generator list")
    if not any(F):
        return GroebnerBasis(ring, ())
    return GroebnerBasis(ring, tuple(_run(ring, F, full_reduce)))


def interreduce(G: Iterable[Polynomial]) -> list[Polynomial]:
    """Reduced form of a Groebner basis ``G`` (minimalize, tail-reduce, make monic)."""
    G = [g for g in G if g]
    if not G:
        return []
    ring = _check_ring(G)
    eng = _engine(ring)
    st = _State(ring, eng, True)
    for g in sorted(G, key=lambda f: f.lm_packed):
        monos, coeffs = eng.from_poly(g)
        if st.red.find(monos[0]) >= 0:
            continue
        st.add(monos, coeffs)
        if st.unit_found:
            return [ring.one()]
    return _interreduce_state(st)


def is_groebner_basis(G: Iterable[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g]
    if len(G) <= 1:
        return True
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if normal_form(s_polynomial(G[i], G[j]), G):
                return False
    return True
