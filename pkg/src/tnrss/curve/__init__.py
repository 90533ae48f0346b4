"""Group abstraction over BLS12-381.

Exposes immutable multiplicative wrappers :class:`G1Element`,
:class:`G2Element` and :class:`GTElement` plus scalar-field helpers.
Group notation matches the scheme: ``a * b`` composes, ``a / b`` divides,
``a ** k`` exponentiates, and ``pairing(a, b)`` is the bilinear map.

Everything here is a pure function over immutable values and may be used
from any number of threads; the internal caches (pairing results, Miller
line precomputation) only memoize pure computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import InvertZero
from . import encode as _enc
from .fields import GROUP_ORDER as _Q_MPZ, Fp12, FP12_ONE
from .pairing import pairing as _pairing_points
from .points import PointG1, PointG2

GROUP_ORDER = int(_Q_MPZ)
CURVE_ID = "BLS12-381"


class G1Element:
    """Point in the prime-order subgroup of G1 (affine, immutable)."""

    __slots__ = ("_pt", "_aff")

    def __init__(self, pt: PointG1):
        self._pt = pt
        aff = pt.to_affine()
        self._aff = (int(aff[0]), int(aff[1])) if aff else None

    @classmethod
    def generator(cls) -> "G1Element":
        return _G1_GEN

    @classmethod
    def identity(cls) -> "G1Element":
        return _G1_ID

    @classmethod
    def from_bytes(cls, data: bytes) -> "G1Element":
        return cls(_enc.g1_from_bytes(data))

    def to_bytes(self) -> bytes:
        return _enc.g1_to_bytes(self._pt)

    def __mul__(self, o: "G1Element") -> "G1Element":
        return G1Element(self._pt.add(o._pt))

    def __truediv__(self, o: "G1Element") -> "G1Element":
        return G1Element(self._pt.add(o._pt.neg()))

    def __pow__(self, k: int) -> "G1Element":
        return G1Element(self._pt.mul(int(k) % GROUP_ORDER))

    def inverse(self) -> "G1Element":
        return G1Element(self._pt.neg())

    def is_identity(self) -> bool:
        return self._aff is None

    def __eq__(self, o) -> bool:
        return isinstance(o, G1Element) and self._aff == o._aff

    def __hash__(self):
        return hash(("G1", self._aff))

    def __repr__(self):
        return f"G1Element({self.to_bytes().hex()})"


class G2Element:
    """Point in the prime-order subgroup of G2 (affine, immutable)."""

    __slots__ = ("_pt", "_key")

    def __init__(self, pt: PointG2):
        aff = pt.to_affine()
        if aff is None:
            self._key = None
            self._pt = PointG2.infinity()
        else:
            x, y = aff
            self._key = (int(x.c0), int(x.c1), int(y.c0), int(y.c1))
            self._pt = PointG2.from_affine(x, y)

    @classmethod
    def generator(cls) -> "G2Element":
        return _G2_GEN

    @classmethod
    def identity(cls) -> "G2Element":
        return _G2_ID

    @classmethod
    def from_bytes(cls, data: bytes) -> "G2Element":
        return cls(_enc.g2_from_bytes(data))

    def to_bytes(self) -> bytes:
        return _enc.g2_to_bytes(self._pt)

    def __mul__(self, o: "G2Element") -> "G2Element":
        return G2Element(self._pt.add(o._pt))

    def __truediv__(self, o: "G2Element") -> "G2Element":
        return G2Element(self._pt.add(o._pt.neg()))

    def __pow__(self, k: int) -> "G2Element":
        return G2Element(self._pt.mul(int(k) % GROUP_ORDER))

    def inverse(self) -> "G2Element":
        return G2Element(self._pt.neg())

    def is_identity(self) -> bool:
        return self._key is None

    def __eq__(self, o) -> bool:
        return isinstance(o, G2Element) and self._key == o._key

    def __hash__(self):
        return hash(("G2", self._key))

    def __repr__(self):
        return f"G2Element({self.to_bytes().hex()})"


class GTElement:
    """Element of the order-q target group inside Fp12."""

    __slots__ = ("_v",)

    def __init__(self, v: Fp12):
        self._v = v

    @classmethod
    def identity(cls) -> "GTElement":
        return _GT_ID

    def __mul__(self, o: "GTElement") -> "GTElement":
        return GTElement(self._v * o._v)

    def __truediv__(self, o: "GTElement") -> "GTElement":
        return GTElement(self._v * o._v.conj())

    def __pow__(self, k: int) -> "GTElement":
        # GT elements sit in the cyclotomic subgroup, so the fast squaring
        # applies; the conjugate is the inverse there.
        return GTElement(self._v.cyclotomic_pow(int(k) % GROUP_ORDER))

    def inverse(self) -> "GTElement":
        return GTElement(self._v.conj())

    def is_identity(self) -> bool:
        return self._v == FP12_ONE

    def __eq__(self, o) -> bool:
        return isinstance(o, GTElement) and self._v == o._v

    def __hash__(self):
        return hash(self._v)

    def __repr__(self):
        return f"GTElement({'identity' if self.is_identity() else 'non-identity'})"


_G1_GEN = G1Element(PointG1.generator())
_G1_ID = G1Element(PointG1.infinity())
_G2_GEN = G2Element(PointG2.generator())
_G2_ID = G2Element(PointG2.infinity())
_GT_ID = GTElement(FP12_ONE)


@lru_cache(maxsize=8192)
def pairing(a: G1Element, b: G2Element) -> GTElement:
    """Bilinear map e(a, b).  Memoized: the map is a pure function and the
    protocol re-evaluates the same handful of argument pairs constantly."""
    return GTElement(_pairing_points(a._pt, b._pt))


def g1_product(elements) -> G1Element:
    """Product of G1 elements with a single final normalization."""
    acc = PointG1.infinity()
    for el in elements:
        acc = acc.add(el._pt)
    return G1Element(acc)


# -- scalar field helpers -----------------------------------------------------

def scalar_add(a: int, b: int) -> int:
    return (a + b) % GROUP_ORDER


def scalar_mul(a: int, b: int) -> int:
    return (a * b) % GROUP_ORDER


def scalar_neg(a: int) -> int:
    return -a % GROUP_ORDER


def scalar_inv(a: int) -> int:
    if a % GROUP_ORDER == 0:
        raise InvertZero("cannot invert 0 modulo the group order")
    return pow(a, GROUP_ORDER - 2, GROUP_ORDER)


def rand_scalar(rng) -> int:
    return rng.randrange(GROUP_ORDER)


def scalar_to_bytes(s: int) -> bytes:
    return _enc.scalar_to_bytes(s)


def scalar_from_bytes(data: bytes) -> int:
    return _enc.scalar_from_bytes(data)


@dataclass(frozen=True)
class PairingContext:
    """Descriptor of the pairing group every other module computes against."""

    group_order_q: int
    g1: G1Element
    g2: G2Element
    curve_id: str

    def pairing(self, a: G1Element, b: G2Element) -> GTElement:
        return pairing(a, b)


BLS12_381 = PairingContext(
    group_order_q=GROUP_ORDER,
    g1=_G1_GEN,
    g2=_G2_GEN,
    curve_id=CURVE_ID,
)
