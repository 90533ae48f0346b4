"""(t, n) secret sharing over the scalar field, in the field and in the exponent.

The dealer samples a degree-(t-1) polynomial f; the secret is f(0) and
share i is (i, f(i)) for i >= 1.  Reconstruction uses the standard
interpolation coefficients

    gamma(i, J) = prod_{j in J, j != i} j * (j - i)^(-1)  (mod q)

either directly on field values or "in the exponent": given group values
h^f(i) for a t-subset J, prod_i (h^f(i))^gamma(i,J) = h^f(0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .curve import GROUP_ORDER, G1Element, g1_product, rand_scalar, scalar_inv
from .errors import BadSubset, InvalidThreshold


@dataclass(frozen=True)
class SharePolynomial:
    """Coefficients a_0 .. a_{t-1}; a_0 is the secret."""

    coefficients: tuple

    @property
    def threshold(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class Share:
    index: int
    value: int

    def __post_init__(self):
        if self.index < 1:
            raise BadSubset("share indices start at 1; 0 is the dealer secret")


def sample_polynomial(t: int, rng) -> SharePolynomial:
    if t < 1:
        raise InvalidThreshold(f"threshold must be >= 1, got {t}")
    return SharePolynomial(tuple(rand_scalar(rng) for _ in range(t)))


def evaluate(poly: SharePolynomial, x: int) -> int:
    acc = 0
    for coeff in reversed(poly.coefficients):
        acc = (acc * x + coeff) % GROUP_ORDER
    return acc


def make_shares(poly: SharePolynomial, n: int) -> list:
    return [Share(i, evaluate(poly, i)) for i in range(1, n + 1)]


def lagrange_coefficient(i: int, j_set) -> int:
    js = set(j_set)
    if i not in js:
        raise BadSubset(f"index {i} not in reconstruction subset {sorted(js)}")
    if any(j < 1 for j in js):
        raise BadSubset("reconstruction indices must be >= 1")
    gamma = 1
    for j in js:
        if j != i:
            gamma = gamma * j % GROUP_ORDER
            gamma = gamma * scalar_inv(j - i) % GROUP_ORDER
    return gamma


def reconstruct_field(shares: Mapping[int, int] | Sequence[Share], j_set) -> int:
    values = _share_map(shares)
    js = _checked_subset(values, j_set)
    acc = 0
    for i in js:
        acc = (acc + lagrange_coefficient(i, js) * values[i]) % GROUP_ORDER
    return acc


def reconstruct_in_exponent(shares, j_set) -> G1Element:
    """Combine group-valued shares {i: h^f(i)} over subset J into h^f(0)."""
    values = _share_map(shares)
    js = _checked_subset(values, j_set)
    return g1_product(values[i] ** lagrange_coefficient(i, js) for i in js)


def _share_map(shares) -> dict:
    if isinstance(shares, Mapping):
        return dict(shares)
    return {s.index: s.value for s in shares}


def _checked_subset(values: dict, j_set) -> frozenset:
    js = frozenset(j_set)
    missing = js - values.keys()
    if missing:
        raise BadSubset(f"no share for indices {sorted(missing)}")
    return js
