"""Modular computation of symmetric Groebner bases over QQ.

The ideal is reduced modulo several primes ``p`` with ``k | p - 1``, a
symmetric basis is computed in each image (in parallel when asked), primes
whose bases disagree with the majority are discarded, and the survivors are
combined coefficientwise by Chinese remaindering and Farey reconstruction.
A lifted candidate is accepted once it passes verification; otherwise the set
of primes grows and the loop repeats.
"""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .coeff import CrtAccumulator, PrimeField, crt_extend, farey_reconstruct, is_prime
from .groebner import GroebnerBasis, _check_ring, buchberger, is_groebner_basis, normal_form
from .permutation import Permutation, order
from .polynomial import Polynomial, Ring
from .symm import symm_std

__all__ = [
    "LiftConfig",
    "LiftError",
    "ModularRun",
    "ModularSnapshot",
    "RangeExhaustedError",
    "choose_primes",
    "compute_snapshot",
    "delete_unlucky_primes",
    "lift",
    "reduce_mod_p",
    "split_by_support",
    "sy_mod_std",
    "sy_mod_std_run",
    "verify",
]

log = logging.getLogger(__name__)


class RangeExhaustedError(RuntimeError):
    """No further admissible primes in the configured range."""


class LiftError(RuntimeError):
    """The retry loop hit its round limit without an accepted basis."""


@dataclass(frozen=True)
class LiftConfig:
    initial_prime_count: int = 4
    prime_range: tuple[int, int] = (2**30, 2**31)
    growth_factor: float = 2.0
    verification: str = "ptest"
    worker_count: int = 1
    seed: int = 0
    max_rounds: int = 10

    def __post_init__(self):
        lo, hi = self.prime_range
        if lo < 2**20 or hi > 2**31 or lo >= hi:
            raise ValueError(f"prime range must satisfy 2^20 <= lo < hi <= 2^31, got {self.prime_range}")
        if self.initial_prime_count < 1:
            raise ValueError("initial_prime_count must be positive")
        if self.growth_factor < 1.5:
            raise ValueError("growth_factor must be at least 1.5")
        if self.verification not in ("ptest", "full"):
            raise ValueError(f"unknown verification mode {self.verification!r}")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be positive")


@dataclass(frozen=True)
class ModularSnapshot:
    p: int
    basis: GroebnerBasis

    @property
    def fingerprint(self):
        return self.basis.lm_fingerprint

    @property
    def support(self) -> tuple:
        return tuple(tuple(g.monomials()) for g in self.basis)


@dataclass
class ModularRun:
    """Outcome of the modular loop, with the bookkeeping the CLI reports."""

    basis: GroebnerBasis
    primes: list[int]
    rejected: list[int] = field(default_factory=list)
    rounds: int = 0
    verification: str = "ptest"
    verification_primes: list[int] = field(default_factory=list)


# ---------------------------------------------------------------------------
# primes


def _integers_of(F: Iterable[Polynomial]) -> set[int]:
    out = set()
    for f in F:
        for c in f.coefficients():
            c = Fraction(c)
            out.add(abs(c.numerator))
            out.add(c.denominator)
    out.discard(0)
    out.discard(1)
    return out


def choose_primes(
    k: int,
    count: int,
    F: Sequence[Polynomial],
    cfg: LiftConfig,
    exclude: Iterable[int] = (),
    rng: random.Random | None = None,
) -> list[int]:
    """``count`` distinct random primes ``p`` in ``cfg.prime_range`` with ``k | p - 1``.

    Primes dividing a numerator or denominator of ``F`` and primes in
    ``exclude`` are skipped. The result is sorted ascending.
    """
    if count < 1:
        raise ValueError("count must be positive")
    rng = rng or random.Random(cfg.seed)
    exclude = set(exclude)
    bad = _integers_of(F)
    lo, hi = cfg.prime_range
    m = math.lcm(2, k)
    qlo = -(-(lo - 1) // m)
    qhi = (hi - 2) // m  # p = q*m + 1 < hi

    def ok(p):
        return p not in exclude and p >= lo and is_prime(p) and all(b % p for b in bad)

    out: list[int] = []
    if qhi < qlo:
        raise RangeExhaustedError(f"no p = 1 mod {m} in {cfg.prime_range}")
    if qhi - qlo < 100_000:
        qs = list(range(qlo, qhi + 1))
        rng.shuffle(qs)
        for q in qs:
            p = q * m + 1
            if ok(p):
                out.append(p)
                if len(out) == count:
                    return sorted(out)
        raise RangeExhaustedError(f"only {len(out)} of {count} admissible primes in {cfg.prime_range}")
    seen: set[int] = set()
    for _ in range(200 * count + 10_000):
        p = rng.randint(qlo, qhi) * m + 1
        if p in seen:
            continue
        seen.add(p)
        if ok(p):
            out.append(p)
            if len(out) == count:
                return sorted(out)
    raise RangeExhaustedError(f"could not find {count} admissible primes in {cfg.prime_range}")


def reduce_mod_p(F: Sequence[Polynomial], p: int) -> list[Polynomial]:
    """Coefficientwise image in GF(p); ZeroDivisionError if p hits a denominator."""
    F = list(F)
    ring = _check_ring(F)
    if ring is None:
        return []
    target = ring.with_domain(PrimeField(p))
    return [f.change_ring(target) for f in F]


# ---------------------------------------------------------------------------
# per-prime work


def compute_snapshot(F: Sequence[Polynomial], sigma: Permutation, p: int, ring: Ring | None = None) -> ModularSnapshot:
    Fp = reduce_mod_p(F, p)
    ring_p = (ring or _check_ring(F)).with_domain(PrimeField(p))
    return ModularSnapshot(p, symm_std(Fp, sigma, ring=ring_p).basis)


def _worker(args):
    F, sigma, p, ring = args
    return compute_snapshot(F, sigma, p, ring)


def _vote(items: Sequence, key: Callable) -> tuple[list, list]:
    classes = Counter(key(s) for s in items)
    best = min(classes, key=lambda fp: (-classes[fp], fp))
    kept = [s for s in items if key(s) == best]
    rejected = [s for s in items if key(s) != best]
    return kept, rejected


def delete_unlucky_primes(snapshots: Sequence[ModularSnapshot]) -> tuple[list[ModularSnapshot], list[int]]:
    """Keep the largest class of equal leading-monomial fingerprints.

    Ties go to the lexicographically smallest fingerprint. Returns the kept
    snapshots (input order) and the rejected primes.
    """
    if not snapshots:
        raise ValueError("no snapshots to vote on")
    kept, rejected = _vote(snapshots, lambda s: s.fingerprint)
    return kept, [s.p for s in rejected]


def split_by_support(snapshots: Sequence[ModularSnapshot]) -> tuple[list[ModularSnapshot], list[int]]:
    """Same vote on full term supports, for snapshots already sharing a fingerprint."""
    if not snapshots:
        raise ValueError("no snapshots to vote on")
    kept, rejected = _vote(snapshots, lambda s: s.support)
    return kept, [s.p for s in rejected]


def lift(snapshots: Sequence[ModularSnapshot], ring: Ring | None = None) -> GroebnerBasis | None:
    """CRT plus Farey reconstruction of aligned snapshots; None on failure.

    Fails when the term supports differ or some coefficient has no rational
    preimage within the Farey bound of the prime product.
    """
    if not snapshots:
        return None
    first = snapshots[0]
    if any(s.support != first.support for s in snapshots[1:]):
        return None
    if ring is None:
        ring = first.basis.ring.with_domain(0)
    primes = [s.p for s in snapshots]
    out = []
    for idx, g0 in enumerate(first.basis):
        coeff_lists = [s.basis[idx].coefficients() for s in snapshots]
        terms = []
        for j, m in enumerate(g0.monomials()):
            acc = CrtAccumulator()
            for p, cl in zip(primes, coeff_lists):
                acc = crt_extend(acc, cl[j], p)
            q = farey_reconstruct(acc.residue, acc.modulus)
            if q is None:
                return None
            terms.append((ring.pack(m), q))
        out.append(Polynomial(ring, terms))
    return GroebnerBasis(ring, tuple(out))


# ---------------------------------------------------------------------------
# verification


def verify(
    G: GroebnerBasis,
    F: Sequence[Polynomial],
    sigma: Permutation,
    mode: str = "ptest",
    used: Iterable[int] = (),
    cfg: LiftConfig | None = None,
    rng: random.Random | None = None,
    tested: list[int] | None = None,
) -> bool:
    """Accept or reject a lifted basis.

    ``ptest`` compares the image of ``G`` modulo one fresh prime with a basis
    computed directly there. ``full`` additionally checks over QQ that ``G``
    is a Groebner basis of exactly the ideal of ``F``.
    """
    cfg = cfg or LiftConfig()
    F = list(F)
    ring = G.ring
    k = order(sigma)
    p = choose_primes(k, 1, F + list(G), cfg, used, rng)[0]
    if tested is not None:
        tested.append(p)
    Gp = [g.change_ring(ring.with_domain(PrimeField(p))) for g in G]
    if compute_snapshot(F, sigma, p, ring).basis.elements != tuple(Gp):
        return False
    if mode == "ptest":
        return True
    elems = list(G)
    if not is_groebner_basis(elems):
        return False
    if any(normal_form(f, elems) for f in F):
        return False
    direct = buchberger(F, ring=ring)
    return all(not normal_form(g, direct.elements) for g in elems)


# ---------------------------------------------------------------------------
# driver


def sy_mod_std_run(
    F: Sequence[Polynomial],
    sigma: Permutation,
    cfg: LiftConfig | None = None,
    *,
    ring: Ring | None = None,
    snapshot_fn: Callable[[Sequence[Polynomial], Permutation, int], ModularSnapshot] | None = None,
) -> ModularRun:
    """The full modular loop, returning the basis with its bookkeeping.

    ``snapshot_fn(F, sigma, p)`` replaces the per-prime computation; it is
    always called in-process, which keeps test doubles simple.
    """
    cfg = cfg or LiftConfig()
    F = [f for f in F if f]
    ring = _check_ring(F) or ring
    if ring is None:
        raise ValueError("empty generator list needs an explicit ring")
    if not ring.domain.is_rational():
        raise ValueError("the modular algorithm needs rational coefficients")
    if sigma.n != ring.n:
        raise ValueError(f"permutation on {sigma.n} points, ring has {ring.n} variables")
    if not ring.order.is_degree_ordering(ring.n):
        raise ValueError(f"ordering {ring.order} is not a degree ordering")
    if not F:
        return ModularRun(GroebnerBasis(ring, ()), [], verification=cfg.verification)

    k = order(sigma)
    rng = random.Random(cfg.seed)
    snaps: dict[int, ModularSnapshot] = {}
    excluded: set[int] = set()
    rejected_all: list[int] = []
    tested: list[int] = []
    count = cfg.initial_prime_count
    pool = ProcessPoolExecutor(cfg.worker_count) if cfg.worker_count > 1 and snapshot_fn is None else None
    try:
        for rnd in range(1, cfg.max_rounds + 1):
            need = max(count - len(snaps), 1)
            new = choose_primes(k, need, F, cfg, excluded | snaps.keys() | set(tested), rng)
            if snapshot_fn is not None:
                results = [snapshot_fn(F, sigma, p) for p in new]
            elif pool is not None:
                results = list(pool.map(_worker, [(F, sigma, p, ring) for p in new]))
            else:
                results = [compute_snapshot(F, sigma, p, ring) for p in new]
            for s in results:
                snaps[s.p] = s
            ordered = [snaps[p] for p in sorted(snaps)]
            kept, bad = delete_unlucky_primes(ordered)
            kept, bad2 = split_by_support(kept)
            for p in bad + bad2:
                del snaps[p]
                excluded.add(p)
                rejected_all.append(p)
            G = lift(kept, ring)
            log.debug("round %d: %d primes, %d rejected, lift %s", rnd, len(kept), len(bad) + len(bad2),
                      "ok" if G is not None else "failed")
            if G is not None and verify(G, F, sigma, cfg.verification, excluded | snaps.keys() | set(tested),
                                        cfg, rng, tested):
                return ModularRun(G, sorted(snaps), sorted(rejected_all), rnd, cfg.verification, tested)
            count = max(math.ceil(count * cfg.growth_factor), count + 1)
    finally:
        if pool is not None:
            pool.shutdown()
    raise LiftError(
        f"no verified basis after {cfg.max_rounds} rounds: {len(snaps)} primes in use, "
        f"{len(rejected_all)} rejected, {len(tested)} verification primes tried"
    )


def sy_mod_std(
    F: Sequence[Polynomial],
    sigma: Permutation,
    cfg: LiftConfig | None = None,
    *,
    ring: Ring | None = None,
    snapshot_fn=None,
) -> GroebnerBasis:
    """Reduced Groebner basis over QQ of a sigma-symmetric ideal, computed modularly."""
    return sy_mod_std_run(F, sigma, cfg, ring=ring, snapshot_fn=snapshot_fn).basis
