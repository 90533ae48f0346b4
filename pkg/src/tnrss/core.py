"""Stateless scheme algorithms: key generation, signing, verification.

A signer key has two halves: a fixed scalar anchoring the non-redactable
part of a document, and an aggregate scalar that is simultaneously the
constant term of a secret-sharing polynomial whose other evaluations are
the redactor keys.  A signature is the pair

    sigma_fix = H(adm input)^sk_fix
    sigma_agg = ( H(adm input) * prod_m H(block input m) )^sk_agg

and verification checks both via the bilinear map.  Verification is total:
it never raises on any (document, signature) pair, it only accepts or
rejects.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from typing import Iterable, Optional

from . import shamir
from .curve import (
    BLS12_381,
    G1Element,
    G2Element,
    PairingContext,
    g1_product,
    pairing,
    rand_scalar,
)
from .encoding import (
    DID_BYTES,
    MAX_BLOCKS,
    PROFILE_ID,
    check_block,
    check_did,
    encode_adm_input,
    encode_block_input,
    hash_to_g1,
    new_document_id,
)
from .errors import AdmNotSubset, DeserializeError, InvalidParams, TooManyBlocks

MAX_REDACTORS = 4096
SIGNATURE_VERSION = 1


@dataclass(frozen=True)
class PublicKey:
    pk_fix: G2Element
    pk_agg: G2Element
    t: int
    n: int
    curve_id: str = BLS12_381.curve_id
    profile_id: str = PROFILE_ID


class SecretKey:
    """Signer secret (fixed scalar, aggregate scalar).

    ``wipe`` overwrites the references on a best-effort basis; CPython
    integers are immutable, so erasure of copies cannot be guaranteed.
    """

    __slots__ = ("fix", "agg")

    def __init__(self, fix: int, agg: int):
        self.fix = fix
        self.agg = agg

    def wipe(self):
        self.fix = 0
        self.agg = 0


class RedactorKey:
    """Share (index, f(index)) handed to redactor ``index``."""

    __slots__ = ("index", "share")

    def __init__(self, index: int, share: int):
        self.index = index
        self.share = share

    def wipe(self):
        self.share = 0


@dataclass(frozen=True)
class RedactorVerificationSet:
    """Optional public points g2^f(i), usable to pre-validate shares."""

    points: tuple  # of (index, G2Element)

    def point_for(self, index: int) -> Optional[G2Element]:
        for i, pt in self.points:
            if i == index:
                return pt
        return None


@dataclass(frozen=True)
class Document:
    """Message block set, non-redactable subset, and document ID.

    The constructor validates shapes (DID length, block sizes, block-count
    cap) but deliberately does not require ``adm <= blocks``: the verifier
    must be able to *reject* such tuples, so they have to be representable.
    Honest constructors only ever produce admissible documents.
    """

    blocks: frozenset
    adm: frozenset
    did: bytes

    def __post_init__(self):
        object.__setattr__(self, "blocks",
                           frozenset(check_block(b) for b in self.blocks))
        object.__setattr__(self, "adm",
                           frozenset(check_block(b) for b in self.adm))
        object.__setattr__(self, "did", check_did(self.did))

    def is_admissible(self) -> bool:
        return self.adm <= self.blocks

    def redactable(self) -> frozenset:
        return self.blocks - self.adm


@dataclass(frozen=True)
class Signature:
    sigma_fix: G1Element
    sigma_agg: G1Element

    def to_bytes(self) -> bytes:
        return (bytes([SIGNATURE_VERSION])
                + self.sigma_fix.to_bytes() + self.sigma_agg.to_bytes())

    @classmethod
    def from_bytes(cls, data: bytes) -> "Signature":
        if len(data) != 97 or data[0] != SIGNATURE_VERSION:
            raise DeserializeError("bad signature encoding")
        return cls(G1Element.from_bytes(data[1:49]),
                   G1Element.from_bytes(data[49:]))


def keygen(t: int, n: int, rng=None,
           ctx: PairingContext = BLS12_381):
    """Generate (public key, secret key, redactor keys).

    Requires 1 <= t <= n <= MAX_REDACTORS.  The aggregate secret is f(0)
    of a fresh degree-(t-1) polynomial and redactor i receives f(i).
    """
    if not (isinstance(t, int) and isinstance(n, int)):
        raise InvalidParams("t and n must be integers")
    if t < 1 or n < 1 or t > n or n > MAX_REDACTORS:
        raise InvalidParams(f"need 1 <= t <= n <= {MAX_REDACTORS}, got t={t}, n={n}")
    rng = rng or secrets.SystemRandom()
    sk_fix = rand_scalar(rng)
    poly = shamir.sample_polynomial(t, rng)
    sk_agg = shamir.evaluate(poly, 0)
    sk = SecretKey(sk_fix, sk_agg)
    pk = PublicKey(ctx.g2 ** sk_fix, ctx.g2 ** sk_agg, t, n,
                   curve_id=ctx.curve_id)
    rks = [RedactorKey(s.index, s.value) for s in shamir.make_shares(poly, n)]
    # exponent consistency is checked at generation time
    if ctx.g2 ** sk.fix != pk.pk_fix or ctx.g2 ** sk.agg != pk.pk_agg:
        raise InvalidParams("generated key material is inconsistent")
    return pk, sk, rks


def verification_set(redactor_keys: Iterable[RedactorKey],
                     ctx: PairingContext = BLS12_381) -> RedactorVerificationSet:
    """Publishable per-redactor points g2^f(i) (off the critical path)."""
    return RedactorVerificationSet(
        tuple((rk.index, ctx.g2 ** rk.share) for rk in redactor_keys))


def sign(sk: SecretKey, blocks, adm, rng=None,
         ctx: PairingContext = BLS12_381):
    """Sign a block set with a fresh random document ID."""
    rng = rng or secrets.SystemRandom()
    return sign_with_did(sk, blocks, adm, new_document_id(rng), ctx=ctx)


def sign_with_did(sk: SecretKey, blocks, adm, did: bytes,
                  ctx: PairingContext = BLS12_381):
    """Deterministic signing core with a caller-supplied document ID."""
    blocks = frozenset(check_block(b) for b in blocks)
    adm = frozenset(check_block(b) for b in adm)
    if not adm <= blocks:
        raise AdmNotSubset("non-redactable set must be contained in the message")
    if len(blocks) > MAX_BLOCKS:
        raise TooManyBlocks(f"message exceeds {MAX_BLOCKS} blocks")
    doc = Document(blocks, adm, did)
    h_adm = hash_to_g1(encode_adm_input(doc.did, doc.adm))
    sigma_fix = h_adm ** sk.fix
    h_all = g1_product([h_adm] + [hash_to_g1(encode_block_input(doc.did, m))
                                  for m in doc.blocks])
    sigma_agg = h_all ** sk.agg
    return doc, Signature(sigma_fix, sigma_agg)


def verify(pk: PublicKey, doc: Document, sig: Signature,
           ctx: PairingContext = BLS12_381) -> bool:
    """Accept/reject a (document, signature) pair.  Total; never raises.

    Uses the product-of-hashes form: the aggregate equation is checked as
    e(sigma_agg, g2) == e(h_adm * prod_m h_m, pk_agg), which costs three
    distinct pairings instead of |M| + 4.  ``verify_naive`` is the literal
    per-block form; both must agree everywhere.
    """
    if not doc.is_admissible():
        return False
    if len(doc.blocks) > MAX_BLOCKS:
        return False
    h_adm = hash_to_g1(encode_adm_input(doc.did, doc.adm))
    if pairing(sig.sigma_fix, ctx.g2) != pairing(h_adm, pk.pk_fix):
        return False
    h_all = g1_product([h_adm] + [hash_to_g1(encode_block_input(doc.did, m))
                                  for m in doc.blocks])
    return pairing(sig.sigma_agg, ctx.g2) == pairing(h_all, pk.pk_agg)


def verify_naive(pk: PublicKey, doc: Document, sig: Signature,
                 ctx: PairingContext = BLS12_381) -> bool:
    """Literal verification: 2 + |M| + 2 pairings, one per hash value."""
    if not doc.is_admissible():
        return False
    if len(doc.blocks) > MAX_BLOCKS:
        return False
    h_adm = hash_to_g1(encode_adm_input(doc.did, doc.adm))
    if pairing(sig.sigma_fix, ctx.g2) != pairing(h_adm, pk.pk_fix):
        return False
    rhs = pairing(h_adm, pk.pk_agg)
    for m in doc.blocks:
        rhs = rhs * pairing(hash_to_g1(encode_block_input(doc.did, m)), pk.pk_agg)
    return pairing(sig.sigma_agg, ctx.g2) == rhs
