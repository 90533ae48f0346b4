"""t-out-of-n redactable signatures in the one-time redaction model.

A signer signs a set of message blocks together with a non-redactable
subset (ADM) and a random document ID.  Each of n redactors votes on
blocks to remove; a combiner removes exactly the blocks with at least t
votes and updates the signature, which keeps verifying under the original
public key.  Each redactor processes any document ID at most once; the
``harness`` module demonstrates the forgery that becomes possible when
that rule is dropped.
"""

from .core import (
    Document,
    PublicKey,
    RedactorKey,
    RedactorVerificationSet,
    SecretKey,
    Signature,
    keygen,
    sign,
    sign_with_did,
    verification_set,
    verify,
    verify_naive,
)
from .curve import BLS12_381, G1Element, G2Element, GTElement, PairingContext, pairing
from .encoding import PROFILE_ID, hash_to_g1, new_document_id
from .errors import TnrssError
from .protocol import (
    RedactionInfo,
    RedactorState,
    ReplayJournal,
    red_inf,
    run_redact,
    thr_red,
)

__version__ = "0.1.0"

__all__ = [
    "BLS12_381",
    "Document",
    "G1Element",
    "G2Element",
    "GTElement",
    "PairingContext",
    "PublicKey",
    "PROFILE_ID",
    "RedactionInfo",
    "RedactorKey",
    "RedactorState",
    "RedactorVerificationSet",
    "ReplayJournal",
    "SecretKey",
    "Signature",
    "TnrssError",
    "hash_to_g1",
    "keygen",
    "new_document_id",
    "pairing",
    "red_inf",
    "run_redact",
    "sign",
    "sign_with_did",
    "thr_red",
    "verification_set",
    "verify",
    "verify_naive",
]
