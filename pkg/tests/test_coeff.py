import random
from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import given, strategies as st

from symgb.coeff import (
    QQ,
    CrtAccumulator,
    NoRootError,
    PrimeField,
    crt_extend,
    farey_reconstruct,
    is_prime,
    is_primitive_kth_root,
    primitive_kth_root,
)


def test_fp_mul_small():
    assert PrimeField(7).mul(3, 5) == 1


def test_fp_inv_small():
    assert PrimeField(7).inv(3) == 5


def test_fp_mul_largest_word_prime():
    F = PrimeField(2147483647)
    assert F.mul(2147483646, 2147483646) == 1


def test_fp_inv_zero_raises():
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inv(0)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 31, 97, 101])
def test_fp_inverse_exhaustive(p):
    F = PrimeField(p)
    for x in range(1, p):
        assert F.mul(F.inv(x), x) == 1


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 2**31 + 11, 2**31 - 2])
def test_prime_field_rejects(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_fp_convert_fraction():
    F = PrimeField(7)
    assert F.convert(Fraction(1, 2)) == 4
    assert F.convert(-1) == 6
    with pytest.raises(ZeroDivisionError):
        F.convert(Fraction(1, 7))


def test_symmetric_representative():
    F = PrimeField(7)
    assert [F.symmetric(a) for a in range(7)] == [0, 1, 2, 3, -3, -2, -1]


def test_root_k2_is_minus_one():
    assert primitive_kth_root(PrimeField(13), 2) == 12


def test_root_k4_mod13():
    xi = primitive_kth_root(PrimeField(13), 4)
    assert xi in (5, 8)
    assert pow(xi, 2, 13) == 12 and pow(xi, 4, 13) == 1


def test_root_missing():
    with pytest.raises(NoRootError):
        primitive_kth_root(PrimeField(7), 4)


def test_root_brute_force_agrees():
    # the primitive 4th roots mod 13, by scanning every element
    roots = {x for x in range(1, 13) if pow(x, 4, 13) == 1 and pow(x, 2, 13) != 1}
    assert roots == {5, 8}
    assert all(is_primitive_kth_root(x, 4, 13) for x in roots)


@pytest.mark.parametrize("p,k", [(127, 7), (127, 6), (30817, 24), (100003, 2), (181, 9), (2147483647, 7)])
def test_root_is_primitive(p, k):
    xi = primitive_kth_root(PrimeField(p), k)
    assert pow(xi, k, p) == 1
    for d in range(1, k):
        if k % d == 0:
            assert pow(xi, d, p) != 1


def test_root_deterministic_by_default():
    F = PrimeField(30817)
    assert primitive_kth_root(F, 8) == primitive_kth_root(F, 8)


def test_crt_small():
    acc = crt_extend(CrtAccumulator(2, 3), 3, 5)
    assert (acc.residue, acc.modulus) == (8, 15)
    # exhaustive check of the residue
    assert [r for r in range(15) if r % 3 == 2 and r % 5 == 3] == [8]


def test_crt_identity_start():
    acc = crt_extend(CrtAccumulator(), 4, 7)
    assert (acc.residue, acc.modulus) == (4, 7)


def test_crt_not_coprime():
    with pytest.raises(ValueError):
        crt_extend(CrtAccumulator(8, 15), 8, 15)


def test_farey_one():
    for N in (3, 10, 1155, 2**61 - 1):
        assert farey_reconstruct(1, N) == 1


def test_farey_minus_five_sevenths():
    # 7 must be invertible, so the modulus avoids the factor 7
    N = 3 * 5 * 11 * 13
    r = -5 * pow(7, -1, N) % N
    assert farey_reconstruct(r, N) == Fraction(-5, 7)


def test_farey_failure_certified_by_scan():
    N = 1155
    bound = isqrt((N - 1) // 2)
    for r in range(N):
        sols = [
            (a, b)
            for b in range(1, bound + 1)
            for a in range(-bound, bound + 1)
            if (a - r * b) % N == 0 and gcd(b, N) == 1
        ]
        got = farey_reconstruct(r, N)
        if not sols:
            assert got is None
            break
    else:
        pytest.fail("every residue had a Farey preimage")


def test_farey_matches_scan_small_modulus():
    N = 7 * 11 * 13
    bound = isqrt((N - 1) // 2)
    for r in range(N):
        got = farey_reconstruct(r, N)
        if got is not None:
            assert abs(got.numerator) <= bound and 0 < got.denominator <= bound
            assert (got.numerator - r * got.denominator) % N == 0


@given(st.integers(-(2**60) + 1, 2**60 - 1), st.integers(1, 2**60 - 1))
def test_farey_roundtrip_property(a, b):
    q = Fraction(a, b)
    rng = random.Random(a ^ b)
    need = 2 * max(q.numerator**2, q.denominator**2)
    acc = CrtAccumulator()
    while acc.modulus <= need:
        p = rng.randrange(2**30, 2**31) | 1
        if not is_prime(p) or q.denominator % p == 0 or acc.modulus % p == 0:
            continue
        acc = crt_extend(acc, PrimeField(p).convert(q), p)
    assert farey_reconstruct(acc.residue, acc.modulus) == q


def test_qq_basics():
    assert QQ.convert(3) == Fraction(3)
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert QQ.characteristic == 0
    with pytest.raises(ZeroDivisionError):
        QQ.inv(0)
