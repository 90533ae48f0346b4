"""Jacobian-coordinate point arithmetic on BLS12-381 and its sextic twist.

G1 lives on E: y^2 = x^3 + 4 over Fp; G2 on the M-type twist
E': y^2 = x^3 + 4(1 + i) over Fp2.  The two implementations are kept
separate rather than generic: the base-field version works on raw gmpy2
integers with explicit reduction, which the generic route cannot match.

Points are value objects; the zero point is represented by z = 0.
"""

from __future__ import annotations

from gmpy2 import mpz

from .fields import (
    P,
    GROUP_ORDER,
    BLS_X,
    Fp2,
    FP2_ONE,
    FP2_ZERO,
    fp_inv,
    fp_sqrt,
)

B_G1 = mpz(4)
B_G2 = Fp2(mpz(4), mpz(4))

_G1X = mpz(0x17F1D3A73197D7942695638C4FA9AC0FC3688C4F9774B905A14E3A3F171BAC586C55E83FF97A1AEFFB3AF00ADB22C6BB)
_G1Y = mpz(0x08B3F481E3AAA0F1A09E30ED741D8AE4FCF5E095D5D00AF600DB18CB2C04B3EDD03CC744A2888AE40CAA232946C5E7E1)
_G2X = Fp2(
    mpz(0x024AA2B2F08F0A91260805272DC51051C6E47AD4FA403B02B4510B647AE3D1770BAC0326A805BBEFD48056C8C121BDB8),
    mpz(0x13E02B6052719F607DACD3A088274F65596BD0D09920B61AB5DA61BBDC7F5049334CF11213945D57E5AC7D055D042B7E),
)
_G2Y = Fp2(
    mpz(0x0CE5D527727D6E118CC9CDC6DA2E351AADFD9BAA8CBDD3A76D429A695160D12C923AC9CC3BACA289E193548608B82801),
    mpz(0x0606C4A02EA734CC32ACD2B02BC28B99CB3E287E85A763AF267492AB572E99AB3F370D275CEC1DA1AAA9075FF05F79BE),
)


class PointG1:
    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x = x
        self.y = y
        self.z = z

    @classmethod
    def infinity(cls):
        return cls(mpz(1), mpz(1), mpz(0))

    @classmethod
    def from_affine(cls, x, y):
        return cls(mpz(x) % P, mpz(y) % P, mpz(1))

    @classmethod
    def generator(cls):
        return cls(_G1X, _G1Y, mpz(1))

    def is_infinity(self):
        return self.z == 0

    def dbl(self):
        # dbl-2009-l (a = 0)
        x, y, z = self.x, self.y, self.z
        if z == 0 or y == 0:
            return PointG1.infinity()
        a = x * x % P
        b = y * y % P
        c = b * b % P
        t = (x + b)
        d = (t * t - a - c) % P
        d = (d + d) % P
        e = (3 * a) % P
        f = e * e % P
        x3 = (f - d - d) % P
        y3 = (e * (d - x3) - 8 * c) % P
        z3 = (2 * y * z) % P
        return PointG1(x3, y3, z3)

    def add(self, o):
        # add-2007-bl with doubling fallback
        if self.z == 0:
            return o
        if o.z == 0:
            return self
        x1, y1, z1 = self.x, self.y, self.z
        x2, y2, z2 = o.x, o.y, o.z
        z1z1 = z1 * z1 % P
        z2z2 = z2 * z2 % P
        u1 = x1 * z2z2 % P
        u2 = x2 * z1z1 % P
        s1 = y1 * z2 * z2z2 % P
        s2 = y2 * z1 * z1z1 % P
        h = (u2 - u1) % P
        r = (s2 - s1) % P
        if h == 0:
            if r == 0:
                return self.dbl()
            return PointG1.infinity()
        i = (2 * h) % P
        i = i * i % P
        j = h * i % P
        r = (r + r) % P
        v = u1 * i % P
        x3 = (r * r - j - 2 * v) % P
        y3 = (r * (v - x3) - 2 * s1 * j) % P
        z3 = ((z1 + z2) * (z1 + z2) - z1z1 - z2z2) % P * h % P
        return PointG1(x3, y3, z3)

    def neg(self):
        if self.z == 0:
            return self
        return PointG1(self.x, -self.y % P, self.z)

    def mul(self, k):
        k = int(k)
        if k < 0:
            return self.neg().mul(-k)
        acc = PointG1.infinity()
        if k == 0 or self.z == 0:
            return acc
        for bit in bin(k)[2:]:
            acc = acc.dbl()
            if bit == "1":
                acc = acc.add(self)
        return acc

    def to_affine(self):
        """Return (x, y) or None for the zero point."""
        if self.z == 0:
            return None
        zi = fp_inv(self.z)
        zi2 = zi * zi % P
        return (self.x * zi2 % P, self.y * zi2 * zi % P)

    def is_on_curve(self):
        if self.z == 0:
            return True
        x, y, z = self.x, self.y, self.z
        z2 = z * z % P
        z6 = z2 * z2 % P * z2 % P
        return (y * y - x * x * x) % P == B_G1 * z6 % P

    def in_subgroup(self):
        # q = x^4 - x^2 + 1, so [q]P folds into four short multiplications.
        if not self.is_on_curve():
            return False
        x2p = self.mul(BLS_X).mul(BLS_X)
        x4p = x2p.mul(BLS_X).mul(BLS_X)
        return x4p.add(x2p.neg()).add(self).is_infinity()

    def eq(self, o):
        if self.z == 0 or o.z == 0:
            return self.z == 0 and o.z == 0
        z1z1 = self.z * self.z % P
        z2z2 = o.z * o.z % P
        if self.x * z2z2 % P != o.x * z1z1 % P:
            return False
        return self.y * o.z * z2z2 % P == o.y * self.z * z1z1 % P

    def __repr__(self):
        aff = self.to_affine()
        return "PointG1(inf)" if aff is None else f"PointG1({hex(aff[0])}, {hex(aff[1])})"


class PointG2:
    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x = x
        self.y = y
        self.z = z

    @classmethod
    def infinity(cls):
        return cls(FP2_ONE, FP2_ONE, FP2_ZERO)

    @classmethod
    def from_affine(cls, x, y):
        return cls(x, y, FP2_ONE)

    @classmethod
    def generator(cls):
        return cls(_G2X, _G2Y, FP2_ONE)

    def is_infinity(self):
        return self.z.is_zero()

    def dbl(self):
        x, y, z = self.x, self.y, self.z
        if z.is_zero() or y.is_zero():
            return PointG2.infinity()
        a = x.sqr()
        b = y.sqr()
        c = b.sqr()
        d = (x + b).sqr() - a - c
        d = d + d
        e = a + a + a
        f = e.sqr()
        x3 = f - d - d
        c8 = c.scale(8)
        y3 = e * (d - x3) - c8
        y2 = y + y
        z3 = y2 * z
        return PointG2(x3, y3, z3)

    def add(self, o):
        if self.z.is_zero():
            return o
        if o.z.is_zero():
            return self
        x1, y1, z1 = self.x, self.y, self.z
        x2, y2, z2 = o.x, o.y, o.z
        z1z1 = z1.sqr()
        z2z2 = z2.sqr()
        u1 = x1 * z2z2
        u2 = x2 * z1z1
        s1 = y1 * z2 * z2z2
        s2 = y2 * z1 * z1z1
        h = u2 - u1
        r = s2 - s1
        if h.is_zero():
            if r.is_zero():
                return self.dbl()
            return PointG2.infinity()
        i = (h + h).sqr()
        j = h * i
        r = r + r
        v = u1 * i
        x3 = r.sqr() - j - v - v
        s1j = s1 * j
        y3 = r * (v - x3) - s1j - s1j
        z3 = ((z1 + z2).sqr() - z1z1 - z2z2) * h
        return PointG2(x3, y3, z3)

    def neg(self):
        if self.z.is_zero():
            return self
        return PointG2(self.x, -self.y, self.z)

    def mul(self, k):
        k = int(k)
        if k < 0:
            return self.neg().mul(-k)
        acc = PointG2.infinity()
        if k == 0 or self.z.is_zero():
            return acc
        for bit in bin(k)[2:]:
            acc = acc.dbl()
            if bit == "1":
                acc = acc.add(self)
        return acc

    def to_affine(self):
        if self.z.is_zero():
            return None
        zi = self.z.inv()
        zi2 = zi.sqr()
        return (self.x * zi2, self.y * zi2 * zi)

    def is_on_curve(self):
        if self.z.is_zero():
            return True
        x, y, z = self.x, self.y, self.z
        z2 = z.sqr()
        z6 = z2.sqr() * z2
        return y.sqr() - x.sqr() * x == B_G2 * z6

    def in_subgroup(self):
        if not self.is_on_curve():
            return False
        x2p = self.mul(BLS_X).mul(BLS_X)
        x4p = x2p.mul(BLS_X).mul(BLS_X)
        return x4p.add(x2p.neg()).add(self).is_infinity()

    def eq(self, o):
        if self.z.is_zero() or o.z.is_zero():
            return self.z.is_zero() and o.z.is_zero()
        z1z1 = self.z.sqr()
        z2z2 = o.z.sqr()
        if self.x * z2z2 != o.x * z1z1:
            return False
        return self.y * o.z * z2z2 == o.y * self.z * z1z1

    def __repr__(self):
        aff = self.to_affine()
        return "PointG2(inf)" if aff is None else f"PointG2({aff[0]!r}, {aff[1]!r})"


def g1_sqrt_y(x):
    """y with y^2 = x^3 + 4, or None when x is not on the curve."""
    return fp_sqrt((x * x % P * x + B_G1) % P)


def g2_sqrt_y(x):
    rhs = x.sqr() * x + B_G2
    return rhs.sqrt()
