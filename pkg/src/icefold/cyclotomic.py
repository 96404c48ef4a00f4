"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are coefficient vectors over the power basis 1, z, ..., z^(phi(m)-1)
with rational entries, reduced modulo the m-th cyclotomic polynomial. This is
enough for character inner products of abelian groups of small exponent.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        q[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Coefficients of the m-th cyclotomic polynomial, low degree first."""
    if m == 1:
        return (Fraction(-1), Fraction(1))
    num = [Fraction(0)] * (m + 1)
    num[0], num[m] = Fraction(-1), Fraction(1)
    for d in range(1, m):
        if m % d == 0:
            phi_d = list(cyclotomic_polynomial(d))
            num, rem = _poly_divmod(num, phi_d)
            if rem:
                raise ArithmeticError(f"x^{m}-1 not divisible by Phi_{d}")
    return tuple(num)


class Cyclotomic:
    """An element of Q(zeta_m) over the power basis of zeta_m."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        self.m = m
        deg = len(cyclotomic_polynomial(m)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce(cs, m)
        cs += [Fraction(0)] * (deg - len(cs))
        self.coeffs = tuple(cs[:deg])

    @classmethod
    def zero(cls, m: int) -> "Cyclotomic":
        return cls(m, [])

    @classmethod
    def one(cls, m: int) -> "Cyclotomic":
        return cls(m, [Fraction(1)])

    @classmethod
    def rational(cls, m: int, q) -> "Cyclotomic":
        return cls(m, [Fraction(q)])

    @classmethod
    def root_of_unity(cls, m: int, k: int) -> "Cyclotomic":
        """zeta_m ** k."""
        k %= m
        cs = [Fraction(0)] * (k + 1)
        cs[k] = Fraction(1)
        return cls(m, cs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta -> zeta^(m-1)... i.e. zeta -> zeta^{-1}."""
        out = [Fraction(0)] * self.m
        for k, c in enumerate(self.coeffs):
            out[(-k) % self.m] += c
        return Cyclotomic(self.m, out)

    def __add__(self, other):
        other = _coerce(self.m, other)
        return Cyclotomic(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Cyclotomic(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(self.m, other))

    def __mul__(self, other):
        other = _coerce(self.m, other)
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n - 1 if n else 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    prod[i + j] += a * b
        return Cyclotomic(self.m, prod)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1, 1) / Fraction(other)
            return Cyclotomic(self.m, [c * inv for c in self.coeffs])
        raise TypeError("division only by rationals")

    def __eq__(self, other):
        try:
            other = _coerce(self.m, other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                bits.append(str(c))
            else:
                bits.append(f"{c}*z^{k}" if k > 1 else f"{c}*z")
        return " + ".join(bits) if bits else "0"


def _reduce(coeffs: list[Fraction], m: int) -> list[Fraction]:
    phi = list(cyclotomic_polynomial(m))
    _, rem = _poly_divmod(list(coeffs), phi)
    return rem


def _coerce(m: int, x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        if x.m != m:
            raise TypeError(f"mixed cyclotomic orders {x.m} and {m}")
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.rational(m, x)
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(zeta_{m})")
