"""Pairing correctness via two independent oracles.

The fast path (twist-side Miller loop with sparse line evaluation, then a
cyclotomic addition chain for the hard exponent) is checked against:

* a textbook Miller loop over untwisted points with affine chord-tangent
  line functions and full Fp12 arithmetic, and
* the hard part computed as a single generic exponentiation by
  (p^4 - p^2 + 1) / q.  The fast chain lands on the cube of that value, a
  fixed multiple coprime to q, so 'fast == naive^3' everywhere.
"""

import random

from tnrss.curve.fields import (
    BLS_X,
    FP2_ONE,
    FP2_ZERO,
    FP6_ONE,
    FP6_ZERO,
    FP12_ONE,
    GROUP_ORDER,
    P,
    Fp2,
    Fp6,
    Fp12,
)
from tnrss.curve.pairing import final_exponentiation, miller_loop, pairing
from tnrss.curve.points import PointG1, PointG2

rng = random.Random(31337)

_W = Fp12(FP6_ZERO, FP6_ONE)  # the Fp12 generator z, with z^2 = v


def _embed_fp(v) -> Fp12:
    return Fp12(Fp6(Fp2.of(v), FP2_ZERO, FP2_ZERO), FP6_ZERO)


def _embed_fp2(v: Fp2) -> Fp12:
    return Fp12(Fp6(v, FP2_ZERO, FP2_ZERO), FP6_ZERO)


def _untwist(q: PointG2):
    """psi(x', y') = (x'/z^2, y'/z^3) maps the twist into the full curve."""
    x, y = q.to_affine()
    zinv = _W.inv()
    zinv2 = zinv * zinv
    return _embed_fp2(x) * zinv2, _embed_fp2(y) * zinv2 * zinv


def _line(a, b, t):
    ax, ay = a
    bx, by = b
    tx, ty = t
    if ax == bx and ay == by:
        lam = (ax * ax + ax * ax + ax * ax) * (ay + ay).inv()
    elif ax == bx:
        return tx - ax  # vertical
    else:
        lam = (by - ay) * (bx - ax).inv()
    return (ty - ay) - lam * (tx - ax)


def _pt_add(a, b):
    ax, ay = a
    bx, by = b
    if a == b:
        lam = (ax * ax + ax * ax + ax * ax) * (ay + ay).inv()
    else:
        lam = (by - ay) * (bx - ax).inv()
    x3 = lam * lam - ax - bx
    return x3, lam * (ax - x3) - ay


def naive_miller(p: PointG1, q: PointG2) -> Fp12:
    """Textbook Miller loop over untwisted coordinates (test oracle)."""
    px, py = p.to_affine()
    pt = (_embed_fp(px), _embed_fp(py))
    qt = _untwist(q)
    f = FP12_ONE
    r = qt
    for bit in bin(int(BLS_X))[3:]:
        f = f.sqr() * _line(r, r, pt)
        r = _pt_add(r, r)
        if bit == "1":
            f = f * _line(r, qt, pt)
            r = _pt_add(r, qt)
    return f.conj()  # negative curve parameter


def test_untwisted_point_is_on_curve():
    x, y = _untwist(PointG2.generator())
    four = _embed_fp(4)
    assert y * y == x * x * x + four


def test_miller_loop_matches_textbook_oracle():
    for _ in range(3):
        p = PointG1.generator().mul(rng.randrange(1, GROUP_ORDER))
        q = PointG2.generator().mul(rng.randrange(1, GROUP_ORDER))
        fast = final_exponentiation(miller_loop(p, q))
        naive = final_exponentiation(naive_miller(p, q))
        assert fast == naive


def test_final_exponentiation_matches_generic_power():
    hard_exp = (P**4 - P**2 + 1) // GROUP_ORDER
    for _ in range(2):
        p = PointG1.generator().mul(rng.randrange(1, GROUP_ORDER))
        f = miller_loop(p, PointG2.generator())
        easy = f.conj() * f.inv()
        easy = easy.frobenius2() * easy
        assert final_exponentiation(f) == easy.pow(3 * hard_exp)


def test_bilinearity():
    g1, g2 = PointG1.generator(), PointG2.generator()
    base = pairing(g1, g2)
    assert not base.is_one()
    assert base.pow(GROUP_ORDER).is_one()
    for _ in range(8):
        x = rng.randrange(1, GROUP_ORDER)
        y = rng.randrange(1, GROUP_ORDER)
        assert pairing(g1.mul(x), g2.mul(y)) == base.pow(x * y % GROUP_ORDER)
    assert pairing(g1.mul(5), g2) == pairing(g1, g2.mul(5))


def test_pairing_with_identity_inputs():
    g1, g2 = PointG1.generator(), PointG2.generator()
    assert pairing(PointG1.infinity(), g2).is_one()
    assert pairing(g1, PointG2.infinity()).is_one()
    assert pairing(g1.mul(0), g2).is_one()


def test_pairing_product_identity():
    # e(a+b, c) = e(a, c) * e(b, c)
    g1, g2 = PointG1.generator(), PointG2.generator()
    a = g1.mul(rng.randrange(1, GROUP_ORDER))
    b = g1.mul(rng.randrange(1, GROUP_ORDER))
    assert pairing(a.add(b), g2) == pairing(a, g2) * pairing(b, g2)
