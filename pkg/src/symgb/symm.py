"""Groebner bases of ideals with a cyclic variable symmetry.

``symm_std`` moves the ideal to coordinates in which the symmetry acts
diagonally, computes a basis there, pulls it back and recomputes. The result
is the reduced basis of the input ideal, identical to ``buchberger(F)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .coeff import primitive_kth_root
from .groebner import GroebnerBasis, buchberger, _check_ring
from .permutation import Permutation, apply_to_polynomial, check_symmetry, decompose
from .polynomial import Polynomial, Ring
from .transform import (
    DiagonalAction,
    LinearVariableMap,
    NotApplicableError,
    UnsupportedExtensionError,
    apply_map,
    build_tau,
    build_tau_inverse,
    check_root,
    diagonal_action,
    root_power,
)

__all__ = [
    "NotSymmetricError",
    "check_eigen_properties",
    "SymmStdReport",
    "default_root",
    "eigen_exponent",
    "symm_std",
]


class NotSymmetricError(ValueError):
    """The input ideal is not fixed by the permutation."""


@dataclass(frozen=True)
class SymmStdReport:
    basis: GroebnerBasis
    k: int
    xi_used: object
    eigen_exponents: DiagonalAction
    timings: dict[str, float] = field(default_factory=dict)
    # intermediate data, useful for checking the eigenvector properties
    transformed: GroebnerBasis | None = None
    pullback: tuple[Polynomial, ...] = ()
    tau: LinearVariableMap | None = None
    tau_inverse: LinearVariableMap | None = None


def default_root(ring: Ring, k: int):
    """The primitive k-th root of unity used when the caller supplies none."""
    dom = ring.domain
    ch = dom.characteristic
    if ch and k % ch == 0:
        raise NotApplicableError(f"algorithm is not applicable: characteristic {ch} divides k={k}")
    if dom.is_rational():
        if k > 2:
            raise UnsupportedExtensionError(
                f"no primitive {k}-th root of unity in QQ; use a prime field or the modular algorithm"
            )
        return dom.convert(1 if k == 1 else -1)
    return primitive_kth_root(dom, k)


def eigen_exponent(sigma_image: Polynomial, g: Polynomial, xi, k: int) -> int | None:
    """The ``nu`` in ``[0, k)`` with ``sigma_image == xi**nu * g``, or None."""
    dom = g.ring.domain
    for nu in range(k):
        if sigma_image == g.scale(root_power(dom, xi, nu)):
            return nu
    return None


def symm_std(
    F: Sequence[Polynomial],
    sigma: Permutation,
    *,
    ring: Ring | None = None,
    xi=None,
    verify_symmetry: bool = False,
) -> SymmStdReport:
    """Reduced Groebner basis of a sigma-symmetric ideal via the diagonal transform.

    Raises NotApplicableError if the characteristic divides ``ord(sigma)``,
    UnsupportedExtensionError over QQ when ``ord(sigma) > 2`` and
    NoRootError over GF(p) when ``ord(sigma)`` does not divide ``p - 1``.
    """
    F = list(F)
    ring = _check_ring(F) or ring
    if ring is None:
        raise ValueError("empty generator list needs an explicit ring")
    if sigma.n != ring.n:
        raise ValueError(f"permutation on {sigma.n} points, ring has {ring.n} variables")
    if not ring.order.is_degree_ordering(ring.n):
        raise ValueError(f"ordering {ring.order} is not a degree ordering")
    decomp = decompose(sigma)
    k = decomp.order()
    timings: dict[str, float] = {}

    if verify_symmetry:
        t0 = time.perf_counter()
        G0 = buchberger(F, ring=ring)
        ok = check_symmetry(F, sigma, G0)
        timings["verify_symmetry"] = time.perf_counter() - t0
        if not ok:
            raise NotSymmetricError(f"ideal is not symmetric under {sigma}")

    if k == 1:
        t0 = time.perf_counter()
        G = buchberger(F, ring=ring)
        timings["std"] = time.perf_counter() - t0
        one = ring.domain.convert(1)
        return SymmStdReport(
            G, 1, one, DiagonalAction((0,) * ring.n, 1, one), timings, G, tuple(G.elements)
        )

    if xi is None:
        xi = default_root(ring, k)
    xi = ring.domain.convert(xi)
    check_root(ring, k, xi)

    t0 = time.perf_counter()
    tau = build_tau(decomp, xi, ring)
    tau_inv = build_tau_inverse(tau, decomp, xi)
    action = diagonal_action(sigma, tau, xi, tau_inv)
    F_tau = [apply_map(tau, f) for f in F]
    t1 = time.perf_counter()
    G_tau = buchberger(F_tau, ring=ring)
    t2 = time.perf_counter()
    pull = tuple(apply_map(tau_inv, g) for g in G_tau)
    seeds = [g.primitive() for g in pull] if ring.domain.is_rational() else list(pull)
    t3 = time.perf_counter()
    G = buchberger(seeds, ring=ring)
    t4 = time.perf_counter()
    timings.update(transform=t1 - t0, first_std=t2 - t1, pullback=t3 - t2, second_std=t4 - t3)
    return SymmStdReport(G, k, xi, action, timings, G_tau, pull, tau, tau_inv)


def check_eigen_properties(report: SymmStdReport, sigma: Permutation) -> list[str]:
    """Failures of the two eigenvector properties on a report; empty when all hold.

    Every element of the transformed basis must be an eigenvector of the
    diagonal action, and every pulled-back element an eigenvector of sigma,
    with eigenvalues powers of ``xi_used``.
    """
    bad = []
    k, xi = report.k, report.xi_used
    if report.transformed is None:
        return bad
    for g in report.transformed:
        if eigen_exponent(report.eigen_exponents.apply(g), g, xi, k) is None:
            bad.append(f"transformed element {g} is not an eigenvector")
    for g in report.pullback:
        if eigen_exponent(apply_to_polynomial(sigma, g), g, xi, k) is None:
            bad.append(f"pulled-back element {g} is not an eigenvector")
    return bad
