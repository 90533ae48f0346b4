"""Tower-field arithmetic for the 381-bit pairing curve BLS12-381.

The tower is the conventional one:

    Fp2  = Fp[i]  / (i^2 + 1)
    Fp6  = Fp2[v] / (v^3 - xi),  xi = 1 + i
    Fp12 = Fp6[w] / (w^2 - v)

Coefficients are gmpy2 integers kept reduced in [0, P).  All field values
are immutable; no method mutates its receiver.  Hot paths (the Miller loop
and the final exponentiation) only use the dedicated methods defined here,
so the operator sugar stays thin.
"""

from __future__ import annotations

import gmpy2
from gmpy2 import mpz

# Base field modulus p and the prime subgroup order q.  These satisfy the
# BLS12 family relations for the parameter x = -0xd201000000010000:
#     q = x^4 - x^2 + 1,   p = (x - 1)^2 * q / 3 + x
# (asserted in the test suite).
P = mpz(0x1A0111EA397FE69A4B1BA7B6434BACD764774B84F38512BF6730D2A0F6B0F6241EABFFFEB153FFFFB9FEFFFFFFFFAAAB)
GROUP_ORDER = mpz(0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001)
BLS_X = mpz(0xD201000000010000)  # |x|; the curve parameter itself is negative

_P_MINUS_2 = P - 2
_SQRT_EXP = (P + 1) // 4          # p = 3 (mod 4)
_LEGENDRE_EXP = (P - 1) // 2


def fp_inv(a):
    if a == 0:
        raise ZeroDivisionError("division by zero in Fp")
    return gmpy2.invert(a, P)


def fp_sqrt(a):
    """Square root in Fp, or None when a is a non-residue."""
    a = a % P
    r = gmpy2.powmod(a, _SQRT_EXP, P)
    return r if (r * r) % P == a else None


def fp_is_square(a):
    a = a % P
    return a == 0 or gmpy2.powmod(a, _LEGENDRE_EXP, P) == 1


class Fp2:
    """Element a = c0 + c1*i of Fp2, with i^2 = -1."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0, c1):
        # Internal constructor: callers must pass values already in [0, P).
        self.c0 = c0
        self.c1 = c1

    @classmethod
    def of(cls, c0, c1=0):
        return cls(mpz(c0) % P, mpz(c1) % P)

    def __add__(self, o):
        return Fp2((self.c0 + o.c0) % P, (self.c1 + o.c1) % P)

    def __sub__(self, o):
        return Fp2((self.c0 - o.c0) % P, (self.c1 - o.c1) % P)

    def __neg__(self):
        return Fp2(-self.c0 % P, -self.c1 % P)

    def __mul__(self, o):
        # Karatsuba: 3 base multiplications.
        a0, a1, b0, b1 = self.c0, self.c1, o.c0, o.c1
        t0 = a0 * b0
        t1 = a1 * b1
        return Fp2((t0 - t1) % P, ((a0 + a1) * (b0 + b1) - t0 - t1) % P)

    def sqr(self):
        a0, a1 = self.c0, self.c1
        t = a0 * a1
        return Fp2((a0 + a1) * (a0 - a1) % P, (t + t) % P)

    def scale(self, k):
        """Multiply by a base-field scalar (mpz/int)."""
        return Fp2(self.c0 * k % P, self.c1 * k % P)

    def mul_by_xi(self):
        """Multiply by the Fp6 non-residue xi = 1 + i."""
        return Fp2((self.c0 - self.c1) % P, (self.c0 + self.c1) % P)

    def conj(self):
        return Fp2(self.c0, -self.c1 % P)

    def inv(self):
        # 1 / (a + bi) = (a - bi) / (a^2 + b^2)
        a0, a1 = self.c0, self.c1
        norm = (a0 * a0 + a1 * a1) % P
        if norm == 0:
            raise ZeroDivisionError("division by zero in Fp2")
        t = gmpy2.invert(norm, P)
        return Fp2(a0 * t % P, -a1 * t % P)

    def pow(self, e):
        e = int(e)
        if e < 0:
            return self.inv().pow(-e)
        acc = FP2_ONE
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base.sqr()
            e >>= 1
        return acc

    def is_square(self):
        # a is a square in Fp2 iff its norm a0^2 + a1^2 is a square in Fp.
        return fp_is_square(self.c0 * self.c0 + self.c1 * self.c1)

    def sqrt(self):
        """Square root in Fp2 (p = 3 mod 4), or None for non-residues."""
        if self.is_zero():
            return FP2_ZERO
        a1 = self.pow((P - 3) // 4)
        x0 = a1 * self
        alpha = a1 * x0
        if alpha.c0 == P - 1 and alpha.c1 == 0:
            cand = Fp2(-x0.c1 % P, x0.c0)          # i * x0
        else:
            b = (FP2_ONE + alpha).pow((P - 1) // 2)
            cand = b * x0
        return cand if cand.sqr() == self else None

    def sgn0(self):
        # Parity-based sign per the hash-to-curve convention.
        if self.c0 != 0:
            return int(self.c0 & 1)
        return int(self.c1 & 1)

    def is_zero(self):
        return self.c0 == 0 and self.c1 == 0

    def __eq__(self, o):
        return isinstance(o, Fp2) and self.c0 == o.c0 and self.c1 == o.c1

    def __hash__(self):
        return hash((int(self.c0), int(self.c1)))

    def __repr__(self):
        return f"Fp2({hex(self.c0)}, {hex(self.c1)})"


FP2_ZERO = Fp2(mpz(0), mpz(0))
FP2_ONE = Fp2(mpz(1), mpz(0))
XI = Fp2(mpz(1), mpz(1))


class Fp6:
    """Element c0 + c1*v + c2*v^2 of Fp6 over Fp2, with v^3 = xi."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0, c1, c2):
        self.c0 = c0
        self.c1 = c1
        self.c2 = c2

    def __add__(self, o):
        return Fp6(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)

    def __sub__(self, o):
        return Fp6(self.c0 - o.c0, self.c1 - o.c1, self.c2 - o.c2)

    def __neg__(self):
        return Fp6(-self.c0, -self.c1, -self.c2)

    def __mul__(self, o):
        # Karatsuba for the cubic extension: 6 Fp2 multiplications.
        a0, a1, a2 = self.c0, self.c1, self.c2
        b0, b1, b2 = o.c0, o.c1, o.c2
        v0 = a0 * b0
        v1 = a1 * b1
        v2 = a2 * b2
        c0 = ((a1 + a2) * (b1 + b2) - v1 - v2).mul_by_xi() + v0
        c1 = (a0 + a1) * (b0 + b1) - v0 - v1 + v2.mul_by_xi()
        c2 = (a0 + a2) * (b0 + b2) - v0 - v2 + v1
        return Fp6(c0, c1, c2)

    def sqr(self):
        a0, a1, a2 = self.c0, self.c1, self.c2
        s0 = a0.sqr()
        t = a0 * a1
        s1 = t + t
        s2 = (a0 - a1 + a2).sqr()
        t = a1 * a2
        s3 = t + t
        s4 = a2.sqr()
        return Fp6(s0 + s3.mul_by_xi(),
                   s1 + s4.mul_by_xi(),
                   s1 + s2 + s3 - s0 - s4)

    def mul_by_v(self):
        """Multiply by v (shifts coefficients, wrapping through xi)."""
        return Fp6(self.c2.mul_by_xi(), self.c0, self.c1)

    def mul_by_01(self, b0, b1):
        """Multiply by the sparse element b0 + b1*v."""
        a0, a1, a2 = self.c0, self.c1, self.c2
        t0 = a0 * b0
        t1 = a1 * b1
        c0 = (a2 * b1).mul_by_xi() + t0
        c1 = (a0 + a1) * (b0 + b1) - t0 - t1
        c2 = a2 * b0 + t1
        return Fp6(c0, c1, c2)

    def mul_by_1(self, b1):
        """Multiply by the sparse element b1*v."""
        return Fp6((self.c2 * b1).mul_by_xi(), self.c0 * b1, self.c1 * b1)

    def scale(self, k):
        return Fp6(self.c0.scale(k), self.c1.scale(k), self.c2.scale(k))

    def inv(self):
        a0, a1, a2 = self.c0, self.c1, self.c2
        t0 = a0.sqr() - (a1 * a2).mul_by_xi()
        t1 = a2.sqr().mul_by_xi() - a0 * a1
        t2 = a1.sqr() - a0 * a2
        d = (a0 * t0 + (a2 * t1).mul_by_xi() + (a1 * t2).mul_by_xi()).inv()
        return Fp6(t0 * d, t1 * d, t2 * d)

    def is_zero(self):
        return self.c0.is_zero() and self.c1.is_zero() and self.c2.is_zero()

    def __eq__(self, o):
        return (isinstance(o, Fp6) and self.c0 == o.c0
                and self.c1 == o.c1 and self.c2 == o.c2)

    def __hash__(self):
        return hash((self.c0, self.c1, self.c2))

    def __repr__(self):
        return f"Fp6({self.c0!r}, {self.c1!r}, {self.c2!r})"


FP6_ZERO = Fp6(FP2_ZERO, FP2_ZERO, FP2_ZERO)
FP6_ONE = Fp6(FP2_ONE, FP2_ZERO, FP2_ZERO)


class Fp12:
    """Element c0 + c1*w of Fp12 over Fp6, with w^2 = v."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0, c1):
        self.c0 = c0
        self.c1 = c1

    @classmethod
    def one(cls):
        return FP12_ONE

    def __add__(self, o):
        return Fp12(self.c0 + o.c0, self.c1 + o.c1)

    def __sub__(self, o):
        return Fp12(self.c0 - o.c0, self.c1 - o.c1)

    def __neg__(self):
        return Fp12(-self.c0, -self.c1)

    def __mul__(self, o):
        a0, a1 = self.c0, self.c1
        b0, b1 = o.c0, o.c1
        v0 = a0 * b0
        v1 = a1 * b1
        return Fp12(v0 + v1.mul_by_v(), (a0 + a1) * (b0 + b1) - v0 - v1)

    def sqr(self):
        a0, a1 = self.c0, self.c1
        v0 = a0 * a1
        t = (a0 + a1) * (a0 + a1.mul_by_v()) - v0 - v0.mul_by_v()
        return Fp12(t, v0 + v0)

    def conj(self):
        """Conjugation over Fp6; equals the p^6 Frobenius."""
        return Fp12(self.c0, -self.c1)

    def inv(self):
        a0, a1 = self.c0, self.c1
        d = (a0.sqr() - a1.sqr().mul_by_v()).inv()
        return Fp12(a0 * d, -(a1 * d))

    def mul_by_014(self, o0, o1, o4):
        """Multiply by the sparse line value o0 + o1*v + (o4*v)*w."""
        a0, a1 = self.c0, self.c1
        t0 = a0.mul_by_01(o0, o1)
        t1 = a1.mul_by_1(o4)
        t2 = (a0 + a1).mul_by_01(o0, o1 + o4) - t0 - t1
        return Fp12(t1.mul_by_v() + t0, t2)

    def pow(self, e):
        """Generic square-and-multiply (used by oracles and GT arithmetic)."""
        e = int(e)
        if e < 0:
            return self.inv().pow(-e)
        acc = FP12_ONE
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base.sqr()
            e >>= 1
        return acc

    # -- cyclotomic-subgroup helpers (valid once f^(p^4 - p^2 + 1) = 1) ------

    def cyclotomic_sqr(self):
        # Granger-Scott squaring in the cyclotomic subgroup.
        c0c0, c0c1, c0c2 = self.c0.c0, self.c0.c1, self.c0.c2
        c1c0, c1c1, c1c2 = self.c1.c0, self.c1.c1, self.c1.c2
        t3, t4 = _fp4_sqr(c0c0, c1c1)
        t5, t6 = _fp4_sqr(c1c0, c0c2)
        t7, t8 = _fp4_sqr(c0c1, c1c2)
        t9 = t8.mul_by_xi()
        d0 = t3 - c0c0
        d1 = t5 - c0c1
        d2 = t7 - c0c2
        e0 = t9 + c1c0
        e1 = t4 + c1c1
        e2 = t6 + c1c2
        return Fp12(
            Fp6(d0 + d0 + t3, d1 + d1 + t5, d2 + d2 + t7),
            Fp6(e0 + e0 + t9, e1 + e1 + t4, e2 + e2 + t6),
        )

    def cyclotomic_pow(self, e):
        e = int(e)
        if e < 0:
            return self.conj().cyclotomic_pow(-e)
        if e == 0:
            return FP12_ONE
        acc = self
        for bit in bin(e)[3:]:
            acc = acc.cyclotomic_sqr()
            if bit == "1":
                acc = acc * self
        return acc

    # -- Frobenius endomorphisms ---------------------------------------------

    def _frob(self, coeffs, conjugate):
        flat = (self.c0.c0, self.c1.c0, self.c0.c1,
                self.c1.c1, self.c0.c2, self.c1.c2)
        if conjugate:
            flat = tuple(c.conj() for c in flat)
        g = tuple(c * k for c, k in zip(flat, coeffs))
        return Fp12(Fp6(g[0], g[2], g[4]), Fp6(g[1], g[3], g[5]))

    def frobenius(self):
        return self._frob(_FROB1, True)

    def frobenius2(self):
        return self._frob(_FROB2, False)

    def frobenius3(self):
        return self._frob(_FROB3, True)

    def is_one(self):
        return self == FP12_ONE

    def __eq__(self, o):
        return isinstance(o, Fp12) and self.c0 == o.c0 and self.c1 == o.c1

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __repr__(self):
        return f"Fp12({self.c0!r}, {self.c1!r})"


FP12_ONE = Fp12(FP6_ONE, FP6_ZERO)


def _fp4_sqr(a, b):
    """Squaring in Fp4 = Fp2[s]/(s^2 - xi): (a + bs)^2."""
    t0 = a.sqr()
    t1 = b.sqr()
    return t1.mul_by_xi() + t0, (a + b).sqr() - t0 - t1


def _frob_coeffs(power):
    """Coefficient table xi^(i * (p^power - 1) / 6) for i = 0..5."""
    base = XI.pow((P ** power - 1) // 6)
    out = [FP2_ONE]
    for _ in range(5):
        out.append(out[-1] * base)
    return tuple(out)


_FROB1 = _frob_coeffs(1)
_FROB2 = _frob_coeffs(2)
_FROB3 = _frob_coeffs(3)
