import random

import pytest
from hypothesis import given, strategies as st

from symgb import Ring
from symgb.groebner import buchberger
from symgb.permutation import (
    Permutation,
    apply_to_polynomial,
    check_symmetry,
    decompose,
    order,
    parse_cycles,
    symmetrize_generators,
)


def perms(max_n=10):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


def test_decompose_swap_with_fixed_point():
    d = decompose(Permutation([2, 1, 3]))
    assert d.cycles == ((1, 2), (3,))
    assert d.cycle_string() == "(1 2)(3)"


def test_decompose_identity():
    d = decompose(Permutation.identity(4))
    assert d.cycles == ((1,), (2,), (3,), (4,))
    assert d.cycle_type == (1, 1, 1, 1)


def test_decompose_two_four_cycles():
    sigma = parse_cycles("(1 7 5 3)(2 8 6 4)", 8)
    d = decompose(sigma)
    assert d.cycles == ((1, 7, 5, 3), (2, 8, 6, 4))
    assert d.cycle_type == (4, 4)


def test_decompose_rotates_to_minimum():
    d = decompose(parse_cycles("(3 1 2)(5 4)", 5))
    assert d.cycles == ((1, 2, 3), (4, 5))


def test_order_examples():
    assert order(Permutation([2, 1, 3])) == 2
    assert order(Permutation.identity(5)) == 1
    assert order(parse_cycles("(1 7 5 3)(2 8 6 4)", 8)) == 4
    assert order(parse_cycles("(1 2)(3 4 5)", 5)) == 6


@given(perms())
def test_decompose_recompose(sigma):
    d = decompose(sigma)
    assert d.permutation() == sigma
    assert sum(d.cycle_type) == sigma.n
    flat = [i for c in d.cycles for i in c]
    assert sorted(flat) == list(range(1, sigma.n + 1))


@given(perms())
def test_order_is_least_power(sigma):
    k = order(sigma)
    p = sigma
    for i in range(1, k):
        assert not p.is_identity(), i
        p = sigma * p
    assert p.is_identity()


def test_parse_cycles_separators():
    assert parse_cycles("(1 2)(3)", 3) == parse_cycles("(1,2)(3)", 3) == Permutation([2, 1, 3])
    assert parse_cycles("(1 6)(2 5)(3 4)", 7).images == (6, 5, 4, 3, 2, 1, 7)
    assert parse_cycles("(10 11)", 12)(10) == 11


@pytest.mark.parametrize("bad", ["(1 2", "(1 2)(2 3)", "(1 4)", "(a b)", "x(1 2)", "(0 1)"])
def test_parse_cycles_rejects(bad):
    with pytest.raises(ValueError):
        parse_cycles(bad, 3)


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])


def test_apply_swaps_generators(xyz):
    sigma = Permutation([2, 1, 3])
    assert apply_to_polynomial(sigma, xyz("x*y - 2*y + 3*z")) == xyz("x*y - 2*x + 3*z")


def test_apply_identity(xyz):
    f = xyz("x^3 - y*z + 2")
    assert apply_to_polynomial(Permutation.identity(3), f) == f


def test_apply_symmetric_monomial(xyz):
    f = xyz("x^2*y^2 - z")
    assert apply_to_polynomial(Permutation([2, 1, 3]), f) == f


@given(perms(6), st.integers(0, 2**32))
def test_apply_inverse_roundtrip(sigma, seed):
    from support import random_sparse

    R = Ring([f"v{i}" for i in range(sigma.n)], 101)
    f = random_sparse(R, random.Random(seed), nterms=5, maxdeg=4, height=50)
    assert apply_to_polynomial(sigma, apply_to_polynomial(sigma.inverse(), f)) == f


def test_symmetrize_adds_orbit(xyz):
    out = symmetrize_generators([xyz("x*y - 2*y + 3*z")], Permutation([2, 1, 3]))
    assert out == [xyz("x*y - 2*y + 3*z"), xyz("x*y - 2*x + 3*z")]


def test_symmetrize_invariant_set_unchanged(worked):
    _, F, sigma = worked
    assert symmetrize_generators(F, sigma) == F


def test_symmetrize_variable_orbit(xyz):
    assert symmetrize_generators([xyz("x")], parse_cycles("(1 2 3)", 3)) == [xyz("x"), xyz("y"), xyz("z")]


@given(perms(5), st.integers(0, 2**32))
def test_symmetrize_output_is_fixed_set(sigma, seed):
    from support import random_sparse

    R = Ring([f"v{i}" for i in range(sigma.n)], 31)
    rng = random.Random(seed)
    F = [random_sparse(R, rng) for _ in range(2)]
    out = symmetrize_generators(F, sigma)
    assert {apply_to_polynomial(sigma, f) for f in out} == set(out)


def test_check_symmetry_worked_example(worked):
    _, F, sigma = worked
    assert check_symmetry(F, sigma, buchberger(F))


def test_check_symmetry_false(xyz):
    R = Ring("x y")
    assert not check_symmetry([R("x")], Permutation([2, 1]), [R("x")])


def test_check_symmetry_identity(xyz):
    F = [xyz("x^2 - y"), xyz("y*z + 1")]
    assert check_symmetry(F, Permutation.identity(3), buchberger(F))


def test_power_and_inverse():
    sigma = parse_cycles("(1 2 3 4)", 4)
    assert sigma**4 == Permutation.identity(4)
    assert sigma**-1 == sigma.inverse() == sigma**3
    assert sigma * sigma.inverse() == Permutation.identity(4)
