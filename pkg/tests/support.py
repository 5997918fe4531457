"""Shared helpers for the test modules."""

import random

from symgb import parse_cycles
from symgb.corpus import gen_cyclic


def random_sparse(ring, rng: random.Random, nterms=4, maxdeg=3, height=5):
    """A random polynomial with at most ``nterms`` terms of total degree <= maxdeg."""
    n = ring.n
    d = {}
    for _ in range(rng.randint(1, nterms)):
        deg = rng.randint(0, maxdeg)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        c = rng.randint(-height, height)
        if c:
            d[tuple(e)] = c
    return ring.from_dict(d)


_CYCLIC_CACHE: dict = {}


def cyclic_case(n, p, perm=None):
    """``(spec, sigma)`` for cyclic(n) over GF(p); the default symmetry is the n-cycle."""
    spec = gen_cyclic(n, p)
    sigma = parse_cycles(perm, n) if perm else spec.symmetry
    return spec, sigma


def cached(key, fn):
    """Memoize an expensive computation across test modules."""
    if key not in _CYCLIC_CACHE:
        _CYCLIC_CACHE[key] = fn()
    return _CYCLIC_CACHE[key]


def random_generator(ring, rng: random.Random, height: int):
    """2-4 terms of degree 1..3 with positive coefficients below ``height``; a constant now and then."""
    d = {}
    for _ in range(rng.randint(2, 4)):
        e = [0] * ring.n
        for _ in range(rng.randint(1, 3)):
            e[rng.randrange(ring.n)] += 1
        d[tuple(e)] = rng.randint(1, height - 1)
    if rng.random() < 0.3:
        d[(0,) * ring.n] = rng.randint(1, height - 1)
    return ring.from_dict(d)


def random_nontrivial_permutation(n, rng: random.Random):
    from symgb import Permutation

    while True:
        img = list(range(1, n + 1))
        rng.shuffle(img)
        sigma = Permutation(img)
        if not sigma.is_identity():
            return sigma
