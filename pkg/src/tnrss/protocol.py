"""One-round redaction protocol: per-redactor voting and threshold combining.

Each redactor holds a replay list of document IDs.  A vote request for a
document whose ID was seen before aborts immediately and changes nothing.
Otherwise the ID is recorded *first* (so an invalid request still burns
the ID for that redactor — deliberate fidelity to the protocol's step
order), then the vote set and the signature are validated, and only then
are per-block partial signatures released.

The combiner tallies votes per block, removes exactly the blocks with at
least t votes, reconstructs each removed block's aggregate-share in the
exponent from the t smallest contributing indices, divides it out of the
aggregate signature, and post-verifies the result before releasing it.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

try:
    import fcntl
except ImportError:  # non-POSIX: journal locking degrades to best effort
    fcntl = None

from . import shamir
from .core import (
    Document,
    PublicKey,
    RedactorKey,
    RedactorVerificationSet,
    Signature,
    verify,
)
from .curve import BLS12_381, G1Element, PairingContext, g1_product, pairing
from .encoding import encode_adm_input, encode_block_input, hash_to_g1
from .errors import (
    BadSignature,
    CombineFailed,
    DidReplayed,
    DuplicateRedactor,
    InvalidMod,
    InvalidRedactorIndex,
)


class ReplayJournal:
    """Append-only record of processed document IDs.

    In-memory set, optionally mirrored to a file (one lowercase-hex DID
    per line) that is loaded on open, locked exclusively while open, and
    fsynced on every append so one-time semantics survive restarts.
    """

    def __init__(self, path: Optional[Path] = None):
        self._dids = set()
        self._path = Path(path) if path is not None else None
        self._fh = None
        if self._path is not None:
            self._fh = open(self._path, "a+", encoding="ascii")
            if fcntl is not None:
                try:
                    fcntl.flock(self._fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
                except OSError:
                    self._fh.close()
                    raise
            self._fh.seek(0)
            for line in self._fh:
                line = line.strip()
                if line:
                    self._dids.add(bytes.fromhex(line))

    def __contains__(self, did: bytes) -> bool:
        return did in self._dids

    def add(self, did: bytes):
        self._dids.add(did)
        if self._fh is not None:
            self._fh.write(did.hex() + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def __len__(self):
        return len(self._dids)


class RedactorState:
    """A redactor's key plus its monotonically growing replay list.

    ``red_inf`` requires exclusive access while it checks and appends the
    replay list; the internal lock makes that atomic per state object.
    """

    def __init__(self, key: RedactorKey, journal: Optional[ReplayJournal] = None):
        self.key = key
        self.journal = journal if journal is not None else ReplayJournal()
        self._lock = threading.Lock()

    @classmethod
    def open(cls, key: RedactorKey, state_dir) -> "RedactorState":
        state_dir = Path(state_dir)
        state_dir.mkdir(parents=True, exist_ok=True)
        journal = ReplayJournal(state_dir / f"redactor-{key.index}.journal")
        return cls(key, journal)

    def close(self):
        self.journal.close()


@dataclass(frozen=True)
class RedactionInfo:
    """One redactor's vote: partial signatures for the blocks it removes.

    ``shares`` maps block -> H(block input)^f(i); blocks absent from the
    map were not voted for.
    """

    redactor_index: int
    shares: Mapping[bytes, G1Element]

    @classmethod
    def empty(cls, index: int) -> "RedactionInfo":
        return cls(index, {})


def red_inf(state: RedactorState, pk: PublicKey, doc: Document,
            sig: Signature, mod: Iterable[bytes],
            ctx: PairingContext = BLS12_381) -> RedactionInfo:
    """Run one redactor's vote step, updating the replay list.

    Raises DidReplayed (state unchanged), InvalidMod or BadSignature (the
    document ID is already recorded in both cases); shares are only
    released on full success.
    """
    mod = frozenset(bytes(m) for m in mod)
    with state._lock:
        if doc.did in state.journal:
            raise DidReplayed(
                f"redactor {state.key.index} already processed this document ID")
        state.journal.add(doc.did)
        if (mod & doc.adm) or not mod <= doc.blocks:
            raise InvalidMod(
                "vote set must avoid the non-redactable set and stay inside the message")
        h_adm = hash_to_g1(encode_adm_input(doc.did, doc.adm))
        if pairing(sig.sigma_fix, ctx.g2) != pairing(h_adm, pk.pk_fix):
            raise BadSignature("anchor signature check failed")
        h_all = g1_product(
            [h_adm] + [hash_to_g1(encode_block_input(doc.did, m))
                       for m in doc.blocks])
        if pairing(sig.sigma_agg, ctx.g2) != pairing(h_all, pk.pk_agg):
            raise BadSignature("aggregate signature check failed")
        shares = {m: hash_to_g1(encode_block_input(doc.did, m)) ** state.key.share
                  for m in mod}
        return RedactionInfo(state.key.index, shares)


def thr_red(pk: PublicKey, doc: Document, sig: Signature,
            ri_set: Sequence[RedactionInfo],
            verification_set: Optional[RedactorVerificationSet] = None,
            validate_shares: bool = False,
            ctx: PairingContext = BLS12_381):
    """Combine votes: remove every block with >= t votes and update the
    signature.  Returns the redacted (document, signature).

    The output is post-verified; malformed shares surface as CombineFailed
    rather than as a garbage signature.
    """
    seen = set()
    for ri in ri_set:
        if ri.redactor_index in seen:
            raise DuplicateRedactor(
                f"two redaction entries for index {ri.redactor_index}")
        if not 1 <= ri.redactor_index <= pk.n:
            raise InvalidRedactorIndex(
                f"redactor index {ri.redactor_index} outside [1, {pk.n}]")
        seen.add(ri.redactor_index)

    if validate_shares and verification_set is not None:
        ri_set = [_drop_invalid_shares(ri, doc, verification_set, ctx)
                  for ri in ri_set]

    votes = {}
    for ri in ri_set:
        for block, share in ri.shares.items():
            if block in doc.blocks:
                votes.setdefault(block, []).append((ri.redactor_index, share))

    mod = {block for block, contribs in votes.items() if len(contribs) >= pk.t}
    sigma_mod_parts = []
    for block in mod:
        contribs = dict(votes[block])
        j_set = sorted(contribs)[:pk.t]
        sigma_mod_parts.append(shamir.reconstruct_in_exponent(contribs, j_set))

    new_doc = Document(doc.blocks - mod, doc.adm, doc.did)
    new_sig = Signature(sig.sigma_fix,
                        sig.sigma_agg / g1_product(sigma_mod_parts))
    if not verify(pk, new_doc, new_sig, ctx=ctx):
        raise CombineFailed("combined signature failed post-verification")
    return new_doc, new_sig


def _drop_invalid_shares(ri: RedactionInfo, doc: Document,
                         rvs: RedactorVerificationSet,
                         ctx: PairingContext) -> RedactionInfo:
    y_i = rvs.point_for(ri.redactor_index)
    if y_i is None:
        return ri
    kept = {}
    for block, share in ri.shares.items():
        h_m = hash_to_g1(encode_block_input(doc.did, block))
        if pairing(share, ctx.g2) == pairing(h_m, y_i):
            kept[block] = share
    return RedactionInfo(ri.redactor_index, kept)


def run_redact(pk: PublicKey, doc: Document, sig: Signature,
               votes: Mapping[int, Iterable[bytes]],
               states: Sequence[RedactorState],
               ctx: PairingContext = BLS12_381):
    """Orchestrate the one-round protocol over all redactors.

    A redactor whose vote step aborts simply stops interacting and
    contributes an empty vote; only CombineFailed propagates.
    """
    ri_set = []
    for state in states:
        mod = votes.get(state.key.index, frozenset())
        try:
            ri_set.append(red_inf(state, pk, doc, sig, mod, ctx=ctx))
        except (DidReplayed, InvalidMod, BadSignature):
            ri_set.append(RedactionInfo.empty(state.key.index))
    return thr_red(pk, doc, sig, ri_set, ctx=ctx)
