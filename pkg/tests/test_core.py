"""Key generation, signing, and verification."""

import random
from itertools import combinations

import pytest

from tnrss import shamir
from tnrss.core import (
    Document,
    Signature,
    keygen,
    sign,
    sign_with_did,
    verification_set,
    verify,
    verify_naive,
)
from tnrss.curve import BLS12_381, pairing
from tnrss.encoding import (
    encode_adm_input,
    encode_block_input,
    hash_to_g1,
    new_document_id,
)
from tnrss.errors import AdmNotSubset, InvalidParams, TooManyBlocks

rng = random.Random(2718)


def random_blocks(k, size=12):
    out = set()
    while len(out) < k:
        out.add(rng.randbytes(size))
    return out


def test_keygen_validation():
    for bad in ((0, 1), (4, 3), (1, 0), (0, 0), (-1, 2)):
        with pytest.raises(InvalidParams):
            keygen(*bad, rng)
    with pytest.raises(InvalidParams):
        keygen(1, 5000, rng)


def test_keygen_key_consistency(small_keys):
    pk, sk, rks = small_keys
    g2 = BLS12_381.g2
    assert g2 ** sk.fix == pk.pk_fix
    assert g2 ** sk.agg == pk.pk_agg
    assert pk.t == 2 and pk.n == 3
    assert [rk.index for rk in rks] == [1, 2, 3]


def test_keygen_single_redactor_share_is_secret_in_exponent(solo_keys):
    pk, sk, rks = solo_keys
    h = hash_to_g1(b"probe")
    share_val = h ** rks[0].share
    assert shamir.reconstruct_in_exponent({1: share_val}, {1}) == h ** sk.agg


def test_keygen_threshold_sharing(small_keys):
    # any 2 of 3 shares reconstruct h^sk_agg; any single share does not
    pk, sk, rks = small_keys
    h = hash_to_g1(b"threshold-probe")
    target = h ** sk.agg
    exp_shares = {rk.index: h ** rk.share for rk in rks}
    for subset in combinations(exp_shares, 2):
        assert shamir.reconstruct_in_exponent(exp_shares, subset) == target
    for i in exp_shares:
        assert shamir.reconstruct_in_exponent(exp_shares, {i}) != target


def test_verification_set_matches_shares(small_keys):
    _, _, rks = small_keys
    rvs = verification_set(rks)
    g2 = BLS12_381.g2
    for rk in rks:
        assert rvs.point_for(rk.index) == g2 ** rk.share
    assert rvs.point_for(99) is None


def test_sign_rejects_bad_inputs(small_keys):
    _, sk, _ = small_keys
    with pytest.raises(AdmNotSubset):
        sign(sk, {b"a"}, {b"b"}, rng)
    big = {i.to_bytes(4, "big") for i in range(1025)}
    with pytest.raises(TooManyBlocks):
        sign(sk, big, set(), rng)


def test_sign_and_verify_roundtrip(small_keys):
    pk, sk, _ = small_keys
    blocks = random_blocks(5)
    adm = set(list(blocks)[:2])
    doc, sig = sign(sk, blocks, adm, rng)
    assert doc.is_admissible()
    assert verify(pk, doc, sig)
    assert verify_naive(pk, doc, sig)


def test_empty_message_signature_structure(small_keys):
    # with M = ADM = {} the aggregate is just the ADM hash to the power
    # of the aggregate key (empty product contributes nothing)
    pk, sk, _ = small_keys
    doc, sig = sign(sk, set(), set(), rng)
    h_adm = hash_to_g1(encode_adm_input(doc.did, set()))
    assert sig.sigma_agg == h_adm ** sk.agg
    assert sig.sigma_fix == h_adm ** sk.fix
    assert verify(pk, doc, sig)


def test_sign_with_did_deterministic(small_keys):
    pk, sk, _ = small_keys
    blocks = random_blocks(4)
    did = new_document_id(rng)
    d1, s1 = sign_with_did(sk, blocks, set(), did)
    d2, s2 = sign_with_did(sk, blocks, set(), did)
    assert d1 == d2
    assert s1.to_bytes() == s2.to_bytes()
    assert verify(pk, d1, s1)


def test_sign_is_sign_with_did_plus_fresh_did(small_keys):
    pk, sk, _ = small_keys
    blocks = random_blocks(3)
    r1, r2 = random.Random(5), random.Random(5)
    doc_a, sig_a = sign(sk, blocks, set(), r1)
    did = new_document_id(r2)
    doc_b, sig_b = sign_with_did(sk, blocks, set(), did)
    assert doc_a.did == did
    assert sig_a.to_bytes() == sig_b.to_bytes()


def test_verify_rejects_every_single_block_flip(small_keys):
    pk, sk, _ = small_keys
    blocks = random_blocks(6)
    doc, sig = sign(sk, blocks, set(), rng)
    for target in doc.blocks:
        flipped = bytearray(target)
        flipped[0] ^= 0x01
        tampered = Document(doc.blocks - {target} | {bytes(flipped)},
                            doc.adm, doc.did)
        assert not verify(pk, tampered, sig)
        assert not verify_naive(pk, tampered, sig)


def test_verify_rejects_did_swap(small_keys):
    pk, sk, _ = small_keys
    blocks = random_blocks(4)
    doc_a, sig_a = sign(sk, blocks, set(), rng)
    doc_b, _ = sign(sk, blocks, set(), rng)
    assert doc_a.did != doc_b.did
    crossed = Document(doc_a.blocks, doc_a.adm, doc_b.did)
    assert not verify(pk, crossed, sig_a)


def test_verify_rejects_component_swap(small_keys):
    pk, sk, _ = small_keys
    doc_a, sig_a = sign(sk, random_blocks(3), set(), rng)
    doc_b, sig_b = sign(sk, random_blocks(3), set(), rng)
    assert not verify(pk, doc_a, Signature(sig_a.sigma_fix, sig_b.sigma_agg))
    assert not verify(pk, doc_a, Signature(sig_b.sigma_fix, sig_a.sigma_agg))


def test_verify_rejects_adm_removal(small_keys):
    pk, sk, _ = small_keys
    blocks = random_blocks(4)
    adm = {sorted(blocks)[0]}
    doc, sig = sign(sk, blocks, adm, rng)
    stripped = Document(doc.blocks - adm, doc.adm, doc.did)
    assert not stripped.is_admissible()
    assert not verify(pk, stripped, sig)


def test_verify_is_total_on_weird_documents(small_keys):
    pk, sk, _ = small_keys
    doc, sig = sign(sk, {b"x"}, set(), rng)
    hostile = Document(frozenset(), frozenset({b"ghost"}), doc.did)
    assert verify(pk, hostile, sig) is False


def test_optimized_and_naive_verify_agree(small_keys):
    pk, sk, _ = small_keys
    for _ in range(5):
        doc, sig = sign(sk, random_blocks(rng.randint(0, 6)), set(), rng)
        assert verify(pk, doc, sig) == verify_naive(pk, doc, sig) is True
        bad = Signature(sig.sigma_fix, sig.sigma_agg * sig.sigma_fix)
        assert verify(pk, doc, bad) == verify_naive(pk, doc, bad) is False


def test_verify_pairing_equations_directly(small_keys):
    # spot-check the two pairing identities the verifier relies on
    pk, sk, _ = small_keys
    doc, sig = sign(sk, {b"m1", b"m2"}, {b"m1"}, rng)
    g2 = BLS12_381.g2
    h_adm = hash_to_g1(encode_adm_input(doc.did, doc.adm))
    assert pairing(sig.sigma_fix, g2) == pairing(h_adm, pk.pk_fix)
    lhs = pairing(sig.sigma_agg, g2)
    rhs = pairing(h_adm, pk.pk_agg)
    for m in doc.blocks:
        rhs = rhs * pairing(hash_to_g1(encode_block_input(doc.did, m)), pk.pk_agg)
    assert lhs == rhs


def test_signature_codec(small_keys):
    _, sk, _ = small_keys
    _, sig = sign(sk, {b"blk"}, set(), rng)
    data = sig.to_bytes()
    assert len(data) == 97 and data[0] == 1
    assert Signature.from_bytes(data) == sig


def test_secret_key_wipe(small_keys):
    _, _, _ = small_keys
    _, sk, rks = keygen(2, 3, random.Random(1))
    sk.wipe()
    assert sk.fix == 0 and sk.agg == 0
    rks[0].wipe()
    assert rks[0].share == 0 and rks[0].index == 1


def test_document_validation():
    with pytest.raises(ValueError):
        Document(frozenset({b"a"}), frozenset(), b"short-did")
    doc = Document(frozenset({b"a", b"b"}), frozenset({b"a"}), bytes(32))
    assert doc.redactable() == {b"b"}
