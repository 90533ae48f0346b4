"""Canonical byte layouts and the hash-to-G1 primitive (profile TNRSS-V1).

Two hash inputs exist in the scheme: the aggregate input binding the
document ID to the ordered non-redactable set, and the per-block input
binding the document ID to one message block.  Bare concatenation of
those parts would be ambiguous, so both layouts are tag-separated and
length-prefixed, which makes them injective over their logical inputs:

    adm input   = 0x01 || did || (len_8be || block)*   over ordered blocks
    block input = 0x02 || did || len_8be || block

``hash_to_g1`` follows the standard hash-to-curve construction for
random-oracle suites: expand_message_xmd with SHA-256, two field elements,
the Shallue-van de Woestijne map (which applies directly to j = 0 curves),
and cofactor clearing.  The domain separation tag is the profile id.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

import gmpy2
from gmpy2 import mpz

from .curve import G1Element
from .curve.fields import P, fp_inv, fp_is_square, fp_sqrt
from .curve.points import PointG1

PROFILE_ID = "TNRSS-V1"
HASH_DST = b"TNRSS-V1"
DID_BYTES = 32            # 256-bit document IDs
MAX_BLOCK_BYTES = 1 << 20
MAX_BLOCKS = 1024

_TAG_ADM = b"\x01"
_TAG_BLOCK = b"\x02"


def ord_blocks(blocks) -> tuple:
    """Deterministic bytewise-lexicographic ordering of a block set."""
    return tuple(sorted(blocks))


def check_block(block: bytes) -> bytes:
    if not isinstance(block, (bytes, bytearray)):
        raise TypeError("blocks must be byte strings")
    if len(block) > MAX_BLOCK_BYTES:
        raise ValueError(f"block exceeds {MAX_BLOCK_BYTES} bytes")
    return bytes(block)


def check_did(did: bytes) -> bytes:
    if not isinstance(did, (bytes, bytearray)) or len(did) != DID_BYTES:
        raise ValueError(f"document ID must be exactly {DID_BYTES} bytes")
    return bytes(did)


def new_document_id(rng) -> bytes:
    return rng.getrandbits(8 * DID_BYTES).to_bytes(DID_BYTES, "big")


def encode_adm_input(did: bytes, adm) -> bytes:
    parts = [_TAG_ADM, check_did(did)]
    for block in ord_blocks(adm):
        parts.append(len(block).to_bytes(8, "big"))
        parts.append(block)
    return b"".join(parts)


def encode_block_input(did: bytes, block: bytes) -> bytes:
    return b"".join((_TAG_BLOCK, check_did(did),
                     len(block).to_bytes(8, "big"), block))


# -- hash to G1 ----------------------------------------------------------------

_L = 64  # per-element expansion width: ceil((381 + 128) / 8)


def _expand_message_xmd(msg: bytes, dst: bytes, length: int) -> bytes:
    h = hashlib.sha256
    b_len, r_len = 32, 64
    ell = (length + b_len - 1) // b_len
    dst_prime = dst + len(dst).to_bytes(1, "big")
    b0 = h(bytes(r_len) + msg + length.to_bytes(2, "big") + b"\x00" + dst_prime).digest()
    chunks = []
    prev = h(b0 + b"\x01" + dst_prime).digest()
    chunks.append(prev)
    for i in range(2, ell + 1):
        prev = h(bytes(a ^ b for a, b in zip(b0, prev))
                 + i.to_bytes(1, "big") + dst_prime).digest()
        chunks.append(prev)
    return b"".join(chunks)[:length]


def _hash_to_field(msg: bytes, count: int) -> list:
    raw = _expand_message_xmd(msg, HASH_DST, count * _L)
    return [mpz(int.from_bytes(raw[i * _L:(i + 1) * _L], "big")) % P
            for i in range(count)]


# Shallue-van de Woestijne constants for y^2 = x^3 + 4 with Z = -3; the
# derivation procedure is reproduced in the test suite.
_SVDW_Z = P - 3
_SVDW_C1 = mpz((pow(_SVDW_Z, 3, P) + 4) % P)                 # g(Z)
_SVDW_C2 = mpz(-_SVDW_Z * fp_inv(mpz(2)) % P)                # -Z / 2
_SVDW_C3 = gmpy2.powmod((-_SVDW_C1 * (3 * _SVDW_Z * _SVDW_Z)) % P,
                        (P + 1) // 4, P)                     # sqrt(-g(Z)(3Z^2))
if _SVDW_C3 & 1:
    _SVDW_C3 = P - _SVDW_C3                                  # sgn0(c3) = 0
_SVDW_C4 = mpz(-4 * _SVDW_C1 * fp_inv(mpz(3 * _SVDW_Z * _SVDW_Z)) % P)

# Effective cofactor for clearing G1 to the prime-order subgroup: 1 - x.
_H_EFF = mpz(0xD201000000010001)


def _map_to_curve_svdw(u) -> PointG1:
    tv1 = u * u % P * _SVDW_C1 % P
    tv2 = (1 + tv1) % P
    tv1 = (1 - tv1) % P
    tv3 = tv1 * tv2 % P
    tv3 = fp_inv(tv3) if tv3 != 0 else mpz(0)
    tv4 = u * tv1 % P * tv3 % P * _SVDW_C3 % P
    x1 = (_SVDW_C2 - tv4) % P
    gx1 = (x1 * x1 % P * x1 + 4) % P
    if fp_is_square(gx1):
        x, gx = x1, gx1
    else:
        x2 = (_SVDW_C2 + tv4) % P
        gx2 = (x2 * x2 % P * x2 + 4) % P
        if fp_is_square(gx2):
            x, gx = x2, gx2
        else:
            x3 = (tv2 * tv2 % P * tv3 % P) ** 2 % P * _SVDW_C4 % P
            x3 = (x3 + _SVDW_Z) % P
            x, gx = x3, (x3 * x3 % P * x3 + 4) % P
    y = fp_sqrt(gx)
    if int(u & 1) != int(y & 1):
        y = (P - y) % P
    return PointG1.from_affine(x, y)


@lru_cache(maxsize=65536)
def hash_to_g1(data: bytes) -> G1Element:
    """Deterministic hash onto the prime-order subgroup of G1."""
    u0, u1 = _hash_to_field(data, 2)
    q = _map_to_curve_svdw(u0).add(_map_to_curve_svdw(u1))
    return G1Element(q.mul(_H_EFF))
