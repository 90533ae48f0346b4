"""Secret sharing: field reconstruction, exponent reconstruction, boundaries."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from tnrss import shamir
from tnrss.curve import BLS12_381, GROUP_ORDER, rand_scalar
from tnrss.errors import BadSubset, InvalidThreshold

rng = random.Random(4242)

Q = GROUP_ORDER


def naive_eval(coeffs, x):
    """Oracle: plain sum of a_i * x^i."""
    return sum(c * pow(x, i, Q) for i, c in enumerate(coeffs)) % Q


def test_evaluate_hand_example():
    # f(X) = 3 + 2X evaluated by direct polynomial arithmetic
    poly = shamir.SharePolynomial((3, 2))
    assert shamir.evaluate(poly, 1) == 5
    assert shamir.evaluate(poly, 2) == 7
    assert shamir.evaluate(poly, 0) == 3


@given(st.lists(st.integers(0, Q - 1), min_size=1, max_size=6),
       st.integers(0, 10_000))
@settings(max_examples=60)
def test_evaluate_matches_naive_sum(coeffs, x):
    poly = shamir.SharePolynomial(tuple(coeffs))
    assert shamir.evaluate(poly, x) == naive_eval(coeffs, x)


def test_sample_polynomial_shapes():
    poly = shamir.sample_polynomial(3, rng)
    assert poly.threshold == 3 and len(poly.coefficients) == 3
    solo = shamir.sample_polynomial(1, rng)
    for x in (0, 1, 5):
        assert shamir.evaluate(solo, x) == solo.coefficients[0]
    with pytest.raises(InvalidThreshold):
        shamir.sample_polynomial(0, rng)


def test_coefficient_uniformity_chi_square():
    # coarse check over the low 4 bits of 1000 sampled coefficients
    counts = [0] * 16
    for _ in range(250):
        poly = shamir.sample_polynomial(4, rng)
        for c in poly.coefficients:
            counts[c & 0xF] += 1
    n = sum(counts)
    expected = n / 16
    chi2 = sum((c - expected) ** 2 / expected for c in counts)
    assert chi2 < 37.7  # df=15, far tail (p ~ 0.001)


def test_lagrange_examples():
    assert shamir.lagrange_coefficient(1, {1}) == 1
    # hand-expansion for J = {1, 2}: gamma_1 = 2/(2-1), gamma_2 = 1/(1-2)
    assert shamir.lagrange_coefficient(1, {1, 2}) == 2
    assert shamir.lagrange_coefficient(2, {1, 2}) == Q - 1
    with pytest.raises(BadSubset):
        shamir.lagrange_coefficient(3, {1, 2})
    with pytest.raises(BadSubset):
        shamir.lagrange_coefficient(0, {0, 1})


def test_field_reconstruction_exhaustive_small():
    for n in range(1, 7):
        for t in range(1, n + 1):
            poly = shamir.sample_polynomial(t, rng)
            shares = shamir.make_shares(poly, n)
            secret = shamir.evaluate(poly, 0)
            for subset in combinations(range(1, n + 1), t):
                assert shamir.reconstruct_field(shares, subset) == secret


def test_exponent_reconstruction_against_direct_exponentiation():
    g1 = BLS12_381.g1
    for t, n in ((1, 1), (2, 3), (3, 4)):
        poly = shamir.sample_polynomial(t, rng)
        h = g1 ** rand_scalar(rng)
        expected = h ** shamir.evaluate(poly, 0)  # direct-exponentiation oracle
        exp_shares = {s.index: h ** s.value for s in shamir.make_shares(poly, n)}
        for subset in combinations(sorted(exp_shares), t):
            assert shamir.reconstruct_in_exponent(exp_shares, subset) == expected


def test_exponent_reconstruction_single_share_is_identity_map():
    poly = shamir.sample_polynomial(1, rng)
    h = BLS12_381.g1 ** rand_scalar(rng)
    share = h ** shamir.evaluate(poly, 1)
    assert shamir.reconstruct_in_exponent({1: share}, {1}) == share


def test_wrong_polynomial_negative_control():
    g1 = BLS12_381.g1
    mismatches = 0
    for _ in range(20):
        poly = shamir.sample_polynomial(2, rng)
        other = shamir.sample_polynomial(2, rng)
        h = g1 ** rand_scalar(rng)
        target = h ** shamir.evaluate(poly, 0)
        bogus = {s.index: h ** s.value for s in shamir.make_shares(other, 3)}
        if shamir.reconstruct_in_exponent(bogus, {1, 2}) != target:
            mismatches += 1
    assert mismatches == 20


def test_undersized_subsets_disagree():
    # a (t-1)-subset reconstruction must almost never land on h^f(0)
    g1 = BLS12_381.g1
    bad = 0
    trials = 200
    for _ in range(trials):
        poly = shamir.sample_polynomial(3, rng)
        h = g1 ** rand_scalar(rng)
        expected = h ** shamir.evaluate(poly, 0)
        exp_shares = {s.index: h ** s.value for s in shamir.make_shares(poly, 4)}
        subset = rng.sample(sorted(exp_shares), 2)
        if shamir.reconstruct_in_exponent(exp_shares, subset) == expected:
            bad += 1
    assert bad == 0


def test_exponent_field_commutation_exhaustive():
    g1 = BLS12_381.g1
    for n in range(1, 7):
        t = rng.randint(1, n)
        poly = shamir.sample_polynomial(t, rng)
        h = g1 ** rand_scalar(rng)
        shares = shamir.make_shares(poly, n)
        exp_shares = {s.index: h ** s.value for s in shares}
        for subset in combinations(range(1, n + 1), t):
            lhs = shamir.reconstruct_in_exponent(exp_shares, subset)
            rhs = h ** shamir.reconstruct_field(shares, subset)
            assert lhs == rhs


def test_missing_share_raises():
    poly = shamir.sample_polynomial(2, rng)
    shares = shamir.make_shares(poly, 3)
    with pytest.raises(BadSubset):
        shamir.reconstruct_field(shares, {1, 7})
    with pytest.raises(BadSubset):
        shamir.Share(0, 5)


def test_zero_share_value_allowed():
    # probability ~1/q in the wild; must be representable
    s = shamir.Share(2, 0)
    assert s.value == 0
