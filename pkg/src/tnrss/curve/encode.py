"""Canonical byte encodings for curve points and scalars.

G1 compresses to 48 bytes, G2 to 96, scalars to 32 big-endian bytes.
The three flag bits in the leading byte follow the de-facto standard for
this curve: 0x80 = compressed (always set), 0x40 = point at infinity,
0x20 = y is the lexicographically larger of the two roots.  Decoding
rejects every non-canonical string: bad flags, x >= p, x off the curve,
points outside the prime-order subgroup, and scalars >= q.
"""

from __future__ import annotations

from gmpy2 import mpz

from ..errors import DeserializeError
from .fields import P, GROUP_ORDER, Fp2
from .points import PointG1, PointG2, g1_sqrt_y, g2_sqrt_y

G1_BYTES = 48
G2_BYTES = 96
SCALAR_BYTES = 32

_FLAG_COMPRESSED = 0x80
_FLAG_INFINITY = 0x40
_FLAG_SIGN = 0x20


def _y_is_larger_fp(y) -> bool:
    return y * 2 > P


def _y_is_larger_fp2(y: Fp2) -> bool:
    if y.c1 != 0:
        return y.c1 * 2 > P
    return y.c0 * 2 > P


def g1_to_bytes(pt: PointG1) -> bytes:
    aff = pt.to_affine()
    if aff is None:
        return bytes([_FLAG_COMPRESSED | _FLAG_INFINITY]) + bytes(G1_BYTES - 1)
    x, y = aff
    flags = _FLAG_COMPRESSED | (_FLAG_SIGN if _y_is_larger_fp(y) else 0)
    raw = bytearray(int(x).to_bytes(G1_BYTES, "big"))
    raw[0] |= flags
    return bytes(raw)


def g1_from_bytes(data: bytes, subgroup_check: bool = True) -> PointG1:
    if len(data) != G1_BYTES:
        raise DeserializeError(f"G1 encoding must be {G1_BYTES} bytes")
    flags = data[0] & 0xE0
    if not flags & _FLAG_COMPRESSED:
        raise DeserializeError("uncompressed G1 encodings are not accepted")
    body = bytes([data[0] & 0x1F]) + data[1:]
    if flags & _FLAG_INFINITY:
        if flags & _FLAG_SIGN or any(body):
            raise DeserializeError("non-canonical G1 infinity encoding")
        return PointG1.infinity()
    x = mpz(int.from_bytes(body, "big"))
    if x >= P:
        raise DeserializeError("G1 x-coordinate out of range")
    y = g1_sqrt_y(x)
    if y is None:
        raise DeserializeError("G1 x-coordinate not on the curve")
    if bool(flags & _FLAG_SIGN) != _y_is_larger_fp(y):
        y = (P - y) % P
    pt = PointG1.from_affine(x, y)
    if subgroup_check and not pt.in_subgroup():
        raise DeserializeError("G1 point outside the prime-order subgroup")
    return pt


def g2_to_bytes(pt: PointG2) -> bytes:
    aff = pt.to_affine()
    if aff is None:
        return bytes([_FLAG_COMPRESSED | _FLAG_INFINITY]) + bytes(G2_BYTES - 1)
    x, y = aff
    flags = _FLAG_COMPRESSED | (_FLAG_SIGN if _y_is_larger_fp2(y) else 0)
    raw = bytearray(int(x.c1).to_bytes(48, "big") + int(x.c0).to_bytes(48, "big"))
    raw[0] |= flags
    return bytes(raw)


def g2_from_bytes(data: bytes, subgroup_check: bool = True) -> PointG2:
    if len(data) != G2_BYTES:
        raise DeserializeError(f"G2 encoding must be {G2_BYTES} bytes")
    flags = data[0] & 0xE0
    if not flags & _FLAG_COMPRESSED:
        raise DeserializeError("uncompressed G2 encodings are not accepted")
    body = bytes([data[0] & 0x1F]) + data[1:]
    if flags & _FLAG_INFINITY:
        if flags & _FLAG_SIGN or any(body):
            raise DeserializeError("non-canonical G2 infinity encoding")
        return PointG2.infinity()
    c1 = mpz(int.from_bytes(body[:48], "big"))
    c0 = mpz(int.from_bytes(body[48:], "big"))
    if c0 >= P or c1 >= P:
        raise DeserializeError("G2 x-coordinate out of range")
    x = Fp2(c0, c1)
    y = g2_sqrt_y(x)
    if y is None:
        raise DeserializeError("G2 x-coordinate not on the curve")
    if bool(flags & _FLAG_SIGN) != _y_is_larger_fp2(y):
        y = -y
    pt = PointG2.from_affine(x, y)
    if subgroup_check and not pt.in_subgroup():
        raise DeserializeError("G2 point outside the prime-order subgroup")
    return pt


def scalar_to_bytes(s: int) -> bytes:
    return int(s % GROUP_ORDER).to_bytes(SCALAR_BYTES, "big")


def scalar_from_bytes(data: bytes) -> int:
    if len(data) != SCALAR_BYTES:
        raise DeserializeError(f"scalar encoding must be {SCALAR_BYTES} bytes")
    v = int.from_bytes(data, "big")
    if v >= GROUP_ORDER:
        raise DeserializeError("scalar out of range")
    return v
