"""On-disk formats: key files, document files, and redaction-info files.

Key files are versioned binary: 4-byte magic ``TNR1``, one profile byte,
then canonical point/scalar encodings (public keys additionally embed t
and n as 4-byte big-endian integers).

Document files are JSON with base64 blocks, ADM referenced by index into
the block list, and optional hex ``did`` / ``signature`` fields.  Block
order in the file is the canonical lexicographic order, so a round-trip
reproduces identical hash inputs.

Redaction-info files are binary: version byte, 4-byte redactor index,
4-byte share count, then per share an 8-byte block length, the block
bytes, and the 48-byte partial-signature point.
"""

from __future__ import annotations

import base64
import binascii
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .core import (
    Document,
    PublicKey,
    RedactorKey,
    RedactorVerificationSet,
    SecretKey,
    Signature,
)
from .curve import (
    G1Element,
    G2Element,
    scalar_from_bytes,
    scalar_to_bytes,
)
from .encoding import DID_BYTES, PROFILE_ID, check_block
from .errors import DeserializeError, FileFormatError
from .protocol import RedactionInfo

MAGIC = b"TNR1"
PROFILE_BYTES = {PROFILE_ID: 0x01}
RI_VERSION = 1

_G1_LEN = 48
_G2_LEN = 96
_SCALAR_LEN = 32


def _header() -> bytes:
    return MAGIC + bytes([PROFILE_BYTES[PROFILE_ID]])


def _strip_header(data: bytes, kind: str) -> bytes:
    if len(data) < 5 or data[:4] != MAGIC:
        raise FileFormatError(f"{kind}: missing TNR1 magic")
    if data[4] != PROFILE_BYTES[PROFILE_ID]:
        raise FileFormatError(f"{kind}: unknown profile byte {data[4]}")
    return data[5:]


# -- key files -----------------------------------------------------------------

def public_key_to_bytes(pk: PublicKey) -> bytes:
    return (_header() + pk.t.to_bytes(4, "big") + pk.n.to_bytes(4, "big")
            + pk.pk_fix.to_bytes() + pk.pk_agg.to_bytes())


def public_key_from_bytes(data: bytes) -> PublicKey:
    body = _strip_header(data, "public key")
    if len(body) != 8 + 2 * _G2_LEN:
        raise FileFormatError("public key: wrong length")
    t = int.from_bytes(body[0:4], "big")
    n = int.from_bytes(body[4:8], "big")
    try:
        pk_fix = G2Element.from_bytes(body[8:8 + _G2_LEN])
        pk_agg = G2Element.from_bytes(body[8 + _G2_LEN:])
    except DeserializeError as exc:
        raise FileFormatError(f"public key: {exc}") from exc
    if not 1 <= t <= n:
        raise FileFormatError(f"public key: bad parameters t={t} n={n}")
    return PublicKey(pk_fix, pk_agg, t, n)


def secret_key_to_bytes(sk: SecretKey) -> bytes:
    return _header() + scalar_to_bytes(sk.fix) + scalar_to_bytes(sk.agg)


def secret_key_from_bytes(data: bytes) -> SecretKey:
    body = _strip_header(data, "secret key")
    if len(body) != 2 * _SCALAR_LEN:
        raise FileFormatError("secret key: wrong length")
    try:
        return SecretKey(scalar_from_bytes(body[:_SCALAR_LEN]),
                         scalar_from_bytes(body[_SCALAR_LEN:]))
    except DeserializeError as exc:
        raise FileFormatError(f"secret key: {exc}") from exc


def redactor_key_to_bytes(rk: RedactorKey) -> bytes:
    return _header() + rk.index.to_bytes(4, "big") + scalar_to_bytes(rk.share)


def redactor_key_from_bytes(data: bytes) -> RedactorKey:
    body = _strip_header(data, "redactor key")
    if len(body) != 4 + _SCALAR_LEN:
        raise FileFormatError("redactor key: wrong length")
    index = int.from_bytes(body[:4], "big")
    if index < 1:
        raise FileFormatError("redactor key: index must be >= 1")
    try:
        return RedactorKey(index, scalar_from_bytes(body[4:]))
    except DeserializeError as exc:
        raise FileFormatError(f"redactor key: {exc}") from exc


def verification_set_to_bytes(rvs: RedactorVerificationSet) -> bytes:
    out = [_header(), len(rvs.points).to_bytes(4, "big")]
    for index, point in rvs.points:
        out.append(index.to_bytes(4, "big"))
        out.append(point.to_bytes())
    return b"".join(out)


def verification_set_from_bytes(data: bytes) -> RedactorVerificationSet:
    body = _strip_header(data, "verification set")
    if len(body) < 4:
        raise FileFormatError("verification set: truncated")
    count = int.from_bytes(body[:4], "big")
    body = body[4:]
    entry = 4 + _G2_LEN
    if len(body) != count * entry:
        raise FileFormatError("verification set: wrong length")
    points = []
    for i in range(count):
        chunk = body[i * entry:(i + 1) * entry]
        try:
            points.append((int.from_bytes(chunk[:4], "big"),
                           G2Element.from_bytes(chunk[4:])))
        except DeserializeError as exc:
            raise FileFormatError(f"verification set: {exc}") from exc
    return RedactorVerificationSet(tuple(points))


def save_bytes(data: bytes, path) -> Path:
    path = Path(path)
    path.write_bytes(data)
    return path


def load_bytes(path) -> bytes:
    return Path(path).read_bytes()


# -- document files -------------------------------------------------------------

@dataclass
class DocumentFile:
    """JSON projection of a document plus optional signature.

    Blocks are stored in canonical (lexicographic) order as standard
    base64; ADM entries are indices into that list; ``did`` and
    ``signature`` are lowercase hex when present.
    """

    blocks: list
    adm_indices: list
    did: Optional[bytes] = None
    signature: Optional[Signature] = None

    @classmethod
    def from_document(cls, doc: Document,
                      sig: Optional[Signature] = None) -> "DocumentFile":
        ordered = sorted(doc.blocks)
        adm_indices = sorted(ordered.index(b) for b in doc.adm)
        return cls(ordered, adm_indices, doc.did, sig)

    @classmethod
    def from_blocks(cls, blocks, adm_indices) -> "DocumentFile":
        """Build from blocks in caller order; ADM indices refer to that
        order and are remapped onto the canonical stored order."""
        given = [check_block(b) for b in blocks]
        if len(set(given)) != len(given):
            raise FileFormatError("document: duplicate blocks")
        cls._check_indices(adm_indices, len(given))
        ordered = sorted(given)
        return cls(ordered, sorted(ordered.index(given[i]) for i in adm_indices))

    @staticmethod
    def _check_indices(indices, block_count):
        seen = set()
        for i in indices:
            if not isinstance(i, int) or not 0 <= i < block_count:
                raise FileFormatError(f"document: ADM index {i} out of range")
            if i in seen:
                raise FileFormatError(f"document: duplicate ADM index {i}")
            seen.add(i)

    def adm_blocks(self) -> frozenset:
        return frozenset(self.blocks[i] for i in self.adm_indices)

    def to_document(self) -> Document:
        if self.did is None:
            raise FileFormatError("document: missing document ID")
        return Document(frozenset(self.blocks), self.adm_blocks(), self.did)

    def dumps(self) -> str:
        obj = {
            "blocks": [base64.b64encode(b).decode("ascii") for b in self.blocks],
            "adm_indices": list(self.adm_indices),
        }
        if self.did is not None:
            obj["did"] = self.did.hex()
        if self.signature is not None:
            obj["signature"] = self.signature.to_bytes().hex()
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "DocumentFile":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"document: invalid JSON ({exc})") from exc
        if not isinstance(obj, dict):
            raise FileFormatError("document: top level must be an object")
        raw_blocks = obj.get("blocks")
        if not isinstance(raw_blocks, list):
            raise FileFormatError("document: 'blocks' must be a list")
        try:
            blocks = [base64.b64decode(b, validate=True) for b in raw_blocks]
        except (binascii.Error, TypeError, ValueError) as exc:
            raise FileFormatError(f"document: bad base64 block ({exc})") from exc
        if len(set(blocks)) != len(blocks):
            raise FileFormatError("document: duplicate blocks")
        adm_indices = obj.get("adm_indices", [])
        if not isinstance(adm_indices, list):
            raise FileFormatError("document: 'adm_indices' must be a list")
        cls._check_indices(adm_indices, len(blocks))
        did = None
        if "did" in obj:
            did = _hex_field(obj["did"], "did")
            if len(did) != DID_BYTES:
                raise FileFormatError(f"document: DID must be {DID_BYTES} bytes")
        signature = None
        if "signature" in obj:
            try:
                signature = Signature.from_bytes(
                    _hex_field(obj["signature"], "signature"))
            except DeserializeError as exc:
                raise FileFormatError(f"document: {exc}") from exc
        return cls([check_block(b) for b in blocks], sorted(adm_indices),
                   did, signature)

    def save(self, path) -> Path:
        path = Path(path)
        path.write_text(self.dumps(), encoding="ascii")
        return path

    @classmethod
    def load(cls, path) -> "DocumentFile":
        return cls.loads(Path(path).read_text(encoding="ascii"))


def _hex_field(value, name: str) -> bytes:
    if not isinstance(value, str):
        raise FileFormatError(f"document: '{name}' must be a hex string")
    try:
        return bytes.fromhex(value)
    except ValueError as exc:
        raise FileFormatError(f"document: bad hex in '{name}'") from exc


# -- redaction-info files ---------------------------------------------------------

def redaction_info_to_bytes(ri: RedactionInfo) -> bytes:
    out = [bytes([RI_VERSION]),
           ri.redactor_index.to_bytes(4, "big"),
           len(ri.shares).to_bytes(4, "big")]
    for block in sorted(ri.shares):
        out.append(len(block).to_bytes(8, "big"))
        out.append(block)
        out.append(ri.shares[block].to_bytes())
    return b"".join(out)


def redaction_info_from_bytes(data: bytes) -> RedactionInfo:
    if len(data) < 9 or data[0] != RI_VERSION:
        raise FileFormatError("redaction info: bad header")
    index = int.from_bytes(data[1:5], "big")
    if index < 1:
        raise FileFormatError("redaction info: index must be >= 1")
    count = int.from_bytes(data[5:9], "big")
    shares = {}
    offset = 9
    for _ in range(count):
        if offset + 8 > len(data):
            raise FileFormatError("redaction info: truncated share entry")
        blen = int.from_bytes(data[offset:offset + 8], "big")
        offset += 8
        if offset + blen + _G1_LEN > len(data):
            raise FileFormatError("redaction info: truncated share entry")
        block = data[offset:offset + blen]
        offset += blen
        try:
            point = G1Element.from_bytes(data[offset:offset + _G1_LEN])
        except DeserializeError as exc:
            raise FileFormatError(f"redaction info: {exc}") from exc
        offset += _G1_LEN
        if block in shares:
            raise FileFormatError("redaction info: duplicate block entry")
        shares[block] = point
    if offset != len(data):
        raise FileFormatError("redaction info: trailing bytes")
    return RedactionInfo(index, shares)
