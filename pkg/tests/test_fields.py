"""Tower-field arithmetic checked against generic oracles."""

import random

import pytest
from gmpy2 import mpz

from tnrss.curve.fields import (
    BLS_X,
    FP2_ONE,
    FP12_ONE,
    GROUP_ORDER,
    P,
    Fp2,
    Fp6,
    Fp12,
    fp_is_square,
    fp_sqrt,
)

rng = random.Random(2024)


def rand_fp2():
    return Fp2(mpz(rng.randrange(P)), mpz(rng.randrange(P)))


def rand_fp6():
    return Fp6(rand_fp2(), rand_fp2(), rand_fp2())


def rand_fp12():
    return Fp12(rand_fp6(), rand_fp6())


def test_curve_family_relations():
    # q = x^4 - x^2 + 1 and p = (x-1)^2 q / 3 + x for x = -BLS_X
    x = -int(BLS_X)
    assert GROUP_ORDER == x**4 - x**2 + 1
    assert P == ((x - 1) ** 2 * (x**4 - x**2 + 1)) // 3 + x


def test_moduli_are_prime():
    import sympy

    assert sympy.isprime(int(P))
    assert sympy.isprime(int(GROUP_ORDER))
    assert P % 4 == 3


@pytest.mark.parametrize("make,one", [
    (rand_fp2, FP2_ONE),
    (rand_fp6, Fp6(FP2_ONE, Fp2.of(0), Fp2.of(0))),
    (rand_fp12, FP12_ONE),
])
def test_ring_laws(make, one):
    for _ in range(20):
        a, b, c = make(), make(), make()
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a * one == a
        assert a.sqr() == a * a


@pytest.mark.parametrize("make", [rand_fp2, rand_fp6, rand_fp12])
def test_inverse_law(make):
    for _ in range(10):
        a = make()
        assert a * a.inv() == (a * a.inv()) * (a * a.inv())  # idempotent
        assert (a * a.inv()) * a == a


def test_fp2_inverse_exact():
    for _ in range(10):
        a = rand_fp2()
        assert a * a.inv() == FP2_ONE


def test_fp_sqrt_roundtrip():
    for _ in range(30):
        v = mpz(rng.randrange(P))
        sq = v * v % P
        root = fp_sqrt(sq)
        assert root is not None and root * root % P == sq
        assert fp_is_square(sq)


def test_fp2_sqrt():
    squares = 0
    for _ in range(40):
        a = rand_fp2()
        sq = a.sqr()
        root = sq.sqrt()
        assert root is not None and root.sqr() == sq
        if a.is_square():
            squares += 1
    # non-residues must be detected, not mapped to garbage
    non_residues = 0
    for _ in range(40):
        a = rand_fp2()
        if not a.is_square():
            non_residues += 1
            assert a.sqrt() is None
    assert non_residues > 0


def test_frobenius_matches_generic_power():
    for _ in range(2):
        a = rand_fp12()
        assert a.frobenius() == a.pow(P)
    a = rand_fp12()
    assert a.frobenius2() == a.frobenius().frobenius()
    assert a.frobenius3() == a.frobenius2().frobenius()
    assert a.conj() == a.frobenius().frobenius2().frobenius3()  # p^6


def test_cyclotomic_square_agrees_in_subgroup():
    for _ in range(5):
        f = rand_fp12()
        t = f.conj() * f.inv()
        m = t.frobenius2() * t  # now in the cyclotomic subgroup
        assert m.cyclotomic_sqr() == m.sqr()
        e = rng.randrange(1, 2**64)
        assert m.cyclotomic_pow(e) == m.pow(e)


def test_sparse_mul_matches_dense():
    for _ in range(10):
        a = rand_fp12()
        o0, o1, o4 = rand_fp2(), rand_fp2(), rand_fp2()
        sparse = Fp12(Fp6(o0, o1, Fp2.of(0)), Fp6(Fp2.of(0), o4, Fp2.of(0)))
        assert a.mul_by_014(o0, o1, o4) == a * sparse


def test_fp6_sparse_helpers():
    for _ in range(10):
        a = rand_fp6()
        b0, b1 = rand_fp2(), rand_fp2()
        assert a.mul_by_01(b0, b1) == a * Fp6(b0, b1, Fp2.of(0))
        assert a.mul_by_1(b1) == a * Fp6(Fp2.of(0), b1, Fp2.of(0))
        assert a.mul_by_v() == a * Fp6(Fp2.of(0), FP2_ONE, Fp2.of(0))
