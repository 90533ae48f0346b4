"""Point arithmetic against naive affine oracles, plus serialization."""

import random

import pytest

from tnrss.curve import encode
from tnrss.curve.fields import GROUP_ORDER, P, Fp2, fp_inv
from tnrss.curve.points import PointG1, PointG2, g1_sqrt_y
from tnrss.errors import DeserializeError

rng = random.Random(555)


def rand_g1():
    return PointG1.generator().mul(rng.randrange(1, GROUP_ORDER))


def rand_g2():
    return PointG2.generator().mul(rng.randrange(1, GROUP_ORDER))


def affine_add_g1(a, b):
    """Textbook chord-tangent addition on affine tuples (oracle)."""
    if a is None:
        return b
    if b is None:
        return a
    (x1, y1), (x2, y2) = a, b
    if x1 == x2 and (y1 + y2) % P == 0:
        return None
    if a == b:
        lam = 3 * x1 * x1 % P * fp_inv(2 * y1 % P) % P
    else:
        lam = (y2 - y1) % P * fp_inv((x2 - x1) % P) % P
    x3 = (lam * lam - x1 - x2) % P
    return (x3, (lam * (x1 - x3) - y1) % P)


def test_add_matches_affine_oracle():
    for _ in range(15):
        a, b = rand_g1(), rand_g1()
        got = a.add(b).to_affine()
        want = affine_add_g1(a.to_affine(), b.to_affine())
        assert got == want
        assert a.dbl().to_affine() == affine_add_g1(a.to_affine(), a.to_affine())


def test_scalar_mul_matches_repeated_addition():
    g = PointG1.generator()
    acc = None
    for k in range(1, 12):
        acc = affine_add_g1(acc, g.to_affine())
        assert g.mul(k).to_affine() == acc
    assert g.mul(0).is_infinity()
    assert g.mul(GROUP_ORDER).is_infinity()


def test_group_laws_g2():
    g = PointG2.generator()
    a, b = rand_g2(), rand_g2()
    assert a.add(b).eq(b.add(a))
    assert a.add(a.neg()).is_infinity()
    assert g.mul(GROUP_ORDER).is_infinity()
    k1, k2 = rng.randrange(GROUP_ORDER), rng.randrange(GROUP_ORDER)
    assert g.mul(k1).add(g.mul(k2)).eq(g.mul((k1 + k2) % GROUP_ORDER))


def test_subgroup_check_equals_order_multiplication():
    # the parameter-chain check must agree with literal [q]P
    for _ in range(5):
        p1, p2 = rand_g1(), rand_g2()
        assert p1.in_subgroup() == p1.mul(GROUP_ORDER).is_infinity()
        assert p2.in_subgroup() == p2.mul(GROUP_ORDER).is_infinity()
    assert PointG1.infinity().in_subgroup()
    assert PointG2.infinity().in_subgroup()


def _off_subgroup_g1():
    """A curve point outside the prime-order subgroup (cofactor > 1)."""
    x = 0
    while True:
        x += 1
        y = g1_sqrt_y(x)
        if y is None:
            continue
        pt = PointG1.from_affine(x, y)
        if not pt.in_subgroup():
            return pt


def test_off_subgroup_point_exists_and_detected():
    pt = _off_subgroup_g1()
    assert pt.is_on_curve() and not pt.in_subgroup()


# -- serialization ------------------------------------------------------------


def test_g1_roundtrip_and_sign_bit():
    for _ in range(10):
        a = rand_g1()
        data = encode.g1_to_bytes(a)
        assert len(data) == 48 and data[0] & 0x80
        back = encode.g1_from_bytes(data)
        assert back.eq(a)
        neg = encode.g1_to_bytes(a.neg())
        assert neg != data and neg[1:] == data[1:]
        assert (neg[0] ^ data[0]) == 0x20


def test_g2_roundtrip_and_sign_bit():
    for _ in range(6):
        a = rand_g2()
        data = encode.g2_to_bytes(a)
        assert len(data) == 96 and data[0] & 0x80
        assert encode.g2_from_bytes(data).eq(a)
        neg = encode.g2_to_bytes(a.neg())
        assert (neg[0] ^ data[0]) == 0x20


def test_infinity_encodings():
    inf1 = encode.g1_to_bytes(PointG1.infinity())
    assert inf1 == bytes([0xC0]) + bytes(47)
    assert encode.g1_from_bytes(inf1).is_infinity()
    inf2 = encode.g2_to_bytes(PointG2.infinity())
    assert inf2 == bytes([0xC0]) + bytes(95)
    assert encode.g2_from_bytes(inf2).is_infinity()


@pytest.mark.parametrize("mutate", [
    lambda b: b[:-1],                                   # short
    lambda b: b + b"\x00",                              # long
    lambda b: bytes([b[0] & 0x1F]) + b[1:],             # compression bit off
    lambda b: bytes([b[0] | 0x40]) + b[1:],             # infinity with payload
    lambda b: bytes([0xC0 | 0x20]) + bytes(len(b) - 1),  # infinity with sign
    lambda b: bytes([b[0] | 0x1F]) + b"\xff" * (len(b) - 1),  # x >= p
])
def test_g1_malformed_rejected(mutate):
    data = encode.g1_to_bytes(rand_g1())
    with pytest.raises(DeserializeError):
        encode.g1_from_bytes(bytes(mutate(bytearray(data))))


def test_g1_not_on_curve_rejected():
    # find an x with no square y^2 = x^3 + 4
    x = 0
    while g1_sqrt_y(x) is not None:
        x += 1
    raw = bytearray(int(x).to_bytes(48, "big"))
    raw[0] |= 0x80
    with pytest.raises(DeserializeError):
        encode.g1_from_bytes(bytes(raw))


def test_off_subgroup_encoding_rejected():
    pt = _off_subgroup_g1()
    data = encode.g1_to_bytes(pt)
    with pytest.raises(DeserializeError):
        encode.g1_from_bytes(data)
    assert encode.g1_from_bytes(data, subgroup_check=False).eq(pt)


def test_scalar_codec():
    for _ in range(10):
        s = rng.randrange(GROUP_ORDER)
        assert encode.scalar_from_bytes(encode.scalar_to_bytes(s)) == s
    with pytest.raises(DeserializeError):
        encode.scalar_from_bytes(int(GROUP_ORDER).to_bytes(32, "big"))
    with pytest.raises(DeserializeError):
        encode.scalar_from_bytes(bytes(31))


def test_g2_x_swapped_halves_rejected_or_distinct():
    # c0/c1 order in the encoding is part of the contract; swapping the
    # halves must never round-trip to the same point
    a = rand_g2()
    data = encode.g2_to_bytes(a)
    swapped = bytearray(data[48:] + data[:48])
    swapped[0] |= 0x80
    swapped[48] &= 0x1F
    try:
        other = encode.g2_from_bytes(bytes(swapped))
        assert not other.eq(a)
    except DeserializeError:
        pass
