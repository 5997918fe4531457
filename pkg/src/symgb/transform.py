"""The diagonalizing change of variables for a cyclic symmetry.

For each cycle ``(e_0 e_1 ... e_{l-1})`` of sigma, written from its minimal
element, and ``w = xi_k ** (k / l)`` a primitive l-th root of unity, tau sends

    x_{e_a}  ->  sum_c  w**(a*(c-1)) * x_{e_c}          (0-based a, c)

and the inverse DFT gives

    x_{e_c}  ->  (1/l) * sum_a  w**(a*(1-c)) * x_{e_a}.

Both image families are eigenvectors of sigma acting on linear forms, so the
conjugate ``tau o sigma o tau^-1`` (maps composed as substitutions) scales
every variable by a power of xi_k. For a 2-cycle ``(x y)`` this is
``x -> x + y``, ``y -> y - x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coeff import is_primitive_kth_root
from .permutation import CycleDecomposition, Permutation, apply_to_polynomial
from .polynomial import Polynomial, Ring, _normalized

__all__ = [
    "DiagonalAction",
    "LinearVariableMap",
    "NonDiagonalError",
    "NotApplicableError",
    "UnsupportedExtensionError",
    "apply_map",
    "build_tau",
    "build_tau_inverse",
    "diagonal_action",
    "identity_map",
    "root_power",
]


class NotApplicableError(ArithmeticError):
    """The characteristic of the coefficient field divides the symmetry order."""


class UnsupportedExtensionError(ArithmeticError):
    """A k-th root of unity with k > 2 would require a cyclotomic extension of QQ."""


class NonDiagonalError(ValueError):
    """The conjugated permutation does not act diagonally (inconsistent inputs)."""


def root_power(dom, xi, e: int):
    """``xi ** e`` in ``dom`` for a root of unity ``xi``; ``e`` may be negative."""
    if dom.is_rational():
        return xi**e
    return pow(xi, e, dom.p)


def check_root(ring: Ring, k: int, xi) -> None:
    """Validate that tau can be built for order ``k`` from ``xi``."""
    dom = ring.domain
    ch = dom.characteristic
    if ch and k % ch == 0:
        raise NotApplicableError(f"algorithm is not applicable: characteristic {ch} divides k={k}")
    if dom.is_rational():
        if k > 2:
            raise UnsupportedExtensionError(
                f"no primitive {k}-th root of unity in QQ; use a prime field or the modular algorithm"
            )
        want = 1 if k == 1 else -1
        if xi != want:
            raise ValueError(f"{xi} is not a primitive {k}-th root of unity in QQ")
    elif not is_primitive_kth_root(dom.convert(xi), k, dom.p):
        raise ValueError(f"{xi} is not a primitive {k}-th root of unity in GF({dom.p})")


@dataclass(frozen=True)
class LinearVariableMap:
    """Ring endomorphism ``x_i -> images[i]`` with homogeneous linear images."""

    ring: Ring
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != self.ring.n:
            raise ValueError(f"need {self.ring.n} images, got {len(self.images)}")
        for g in self.images:
            if not g or g.degree() != 1 or any(sum(e) != 1 for e in g.monomials()):
                raise ValueError(f"image {g} is not a nonzero linear form")

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_map(self, f)

    def then(self, other: "LinearVariableMap") -> "LinearVariableMap":
        """``other o self``: apply ``self`` first, then ``other``."""
        return LinearVariableMap(self.ring, tuple(other(g) for g in self.images))

    def matrix(self) -> list[list]:
        """Row ``i`` holds the coefficients of ``images[i]``."""
        n = self.ring.n
        rows = []
        for g in self.images:
            row = [self.ring.domain.convert(0)] * n
            for e, c in g.as_dict().items():
                row[e.index(1)] = c
            rows.append(row)
        return rows

    def is_identity(self) -> bool:
        return all(g == x for g, x in zip(self.images, self.ring.gens()))


def identity_map(ring: Ring) -> LinearVariableMap:
    return LinearVariableMap(ring, tuple(ring.gens()))


@dataclass(frozen=True)
class DiagonalAction:
    """``x_i -> xi**exponents[i] * x_i`` for a primitive k-th root ``xi``."""

    exponents: tuple[int, ...]
    k: int
    xi: object

    def scalars(self, dom) -> list:
        return [root_power(dom, self.xi, e) for e in self.exponents]

    def apply(self, f: Polynomial) -> Polynomial:
        return f.evaluate_scalars(self.scalars(f.ring.domain))


def _linear(ring: Ring, coeffs: Sequence[tuple[int, object]]) -> Polynomial:
    """``sum c * x_i`` over ``(i, c)`` pairs, 1-based ``i``."""
    terms = [(ring.pack([1 if j == i - 1 else 0 for j in range(ring.n)]), c) for i, c in coeffs]
    return Polynomial(ring, terms)


def build_tau(decomp: CycleDecomposition, xi_k, ring: Ring) -> LinearVariableMap:
    if decomp.n != ring.n:
        raise ValueError(f"permutation on {decomp.n} points, ring has {ring.n} variables")
    k = decomp.order()
    dom = ring.domain
    xi_k = dom.convert(xi_k)
    check_root(ring, k, xi_k)
    images: list[Polynomial | None] = [None] * ring.n
    for cyc in decomp.cycles:
        l = len(cyc)
        w = root_power(dom, xi_k, k // l)
        for a, ea in enumerate(cyc):
            coeffs = [(ec, root_power(dom, w, (a * (c - 1)) % l)) for c, ec in enumerate(cyc)]
            images[ea - 1] = _linear(ring, coeffs)
    return LinearVariableMap(ring, tuple(images))


def build_tau_inverse(tau: LinearVariableMap, decomp: CycleDecomposition, xi_k) -> LinearVariableMap:
    ring = tau.ring
    k = decomp.order()
    dom = ring.domain
    xi_k = dom.convert(xi_k)
    check_root(ring, k, xi_k)
    images: list[Polynomial | None] = [None] * ring.n
    for cyc in decomp.cycles:
        l = len(cyc)
        w = root_power(dom, xi_k, k // l)
        inv_l = dom.inv(dom.convert(l))
        for c, ec in enumerate(cyc):
            coeffs = [
                (ea, dom.norm(inv_l * root_power(dom, w, (a * (1 - c)) % l))) for a, ea in enumerate(cyc)
            ]
            images[ec - 1] = _linear(ring, coeffs)
    inv = LinearVariableMap(ring, tuple(images))
    if not tau.then(inv).is_identity():
        raise ValueError("tau was not built from this cycle decomposition and root")
    return inv


def apply_map(map: LinearVariableMap, f: Polynomial) -> Polynomial:
    if f.ring != map.ring:
        raise ValueError("polynomial and map live in different rings")
    return _substitute_linear(f, map.images)


def _substitute_linear(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Horner evaluation of ``f`` at linear forms, one variable at a time.

    Each Horner step multiplies by a single linear form, so the work stays
    proportional to the size of the partial images rather than to products
    of dense powers.
    """
    ring = f.ring
    n = ring.n
    dom = ring.domain
    p = None if dom.is_rational() else dom.p
    lin = [img.terms for img in images]
    unpack = ring.unpack

    def times_linear(acc: dict, i: int) -> dict:
        out: dict = {}
        get = out.get
        for m, c in acc.items():
            for lm, lc in lin[i]:
                mm = m + lm
                out[mm] = get(mm, 0) + c * lc
        if p is not None:
            out = {m: c % p for m, c in out.items()}
        return out

    def horner(terms: list, i: int) -> dict:
        while i < n and all(e[i] == 0 for e, _ in terms):
            i += 1
        if i == n:
            c = sum(c for _, c in terms)
            return {0: c % p if p is not None else c}
        buckets: dict[int, list] = {}
        for t in terms:
            buckets.setdefault(t[0][i], []).append(t)
        acc: dict = {}
        for d in range(max(buckets), -1, -1):
            if acc:
                acc = times_linear(acc, i)
            if d in buckets:
                part = horner(buckets[d], i + 1)
                get = acc.get
                for m, c in part.items():
                    acc[m] = get(m, 0) + c
        return acc

    if not f:
        return f
    acc = horner([(unpack(m), c) for m, c in f.terms], 0)
    return Polynomial._new(ring, _normalized(acc, dom))


def diagonal_action(
    sigma: Permutation, tau: LinearVariableMap, xi_k, tau_inv: LinearVariableMap | None = None
) -> DiagonalAction:
    """Exponents ``nu`` with ``tau(sigma(tau^-1(x_i))) = xi_k**nu_i * x_i``."""
    from .permutation import decompose

    ring = tau.ring
    dom = ring.domain
    decomp = decompose(sigma)
    k = decomp.order()
    xi_k = dom.convert(xi_k)
    if tau_inv is None:
        tau_inv = build_tau_inverse(tau, decomp, xi_k)
    powers = {root_power(dom, xi_k, e): e for e in range(k)}
    nu = []
    for i, x in enumerate(ring.gens()):
        img = apply_map(tau, apply_to_polynomial(sigma, tau_inv.images[i]))
        if len(img) != 1 or img.LM != x.LM or img.LC not in powers:
            raise NonDiagonalError(f"conjugated image of {x} is {img}, not a root-of-unity multiple")
        nu.append(powers[img.LC])
    return DiagonalAction(tuple(nu), k, xi_k)
