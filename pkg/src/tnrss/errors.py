"""Exception hierarchy shared across the package.

Every error raised by the library derives from :class:`TnrssError` so
callers (notably the CLI) can map failures to exit codes in one place.
"""


class TnrssError(Exception):
    """Base class for all library errors."""


# -- group / scalar arithmetic ------------------------------------------------

class InvertZero(TnrssError):
    """Attempted to invert the zero scalar."""


class DeserializeError(TnrssError):
    """A byte string is not a canonical encoding of a group element or scalar."""


# -- secret sharing -----------------------------------------------------------

class InvalidThreshold(TnrssError):
    """Threshold t is outside the usable range."""


class BadSubset(TnrssError):
    """Reconstruction subset is inconsistent with the supplied shares."""


# -- signing core -------------------------------------------------------------

class InvalidParams(TnrssError):
    """Key generation parameters (t, n) are unusable."""


class AdmNotSubset(TnrssError):
    """The non-redactable set is not contained in the message."""


class TooManyBlocks(TnrssError):
    """Message exceeds the configured block-count cap."""


# -- redaction protocol -------------------------------------------------------

class DidReplayed(TnrssError):
    """This redactor has already processed the document ID."""


class InvalidMod(TnrssError):
    """A vote set overlaps the non-redactable set or leaves the message."""


class BadSignature(TnrssError):
    """Signature rejected by a redactor's pairing checks."""


class DuplicateRedactor(TnrssError):
    """Two redaction-information entries carry the same redactor index."""


class InvalidRedactorIndex(TnrssError):
    """A redactor index lies outside [1, n]."""


class CombineFailed(TnrssError):
    """Combined signature failed post-verification (malformed shares)."""


# -- file formats -------------------------------------------------------------

class FileFormatError(TnrssError):
    """On-disk key/document/redaction file is malformed."""
