"""Exact arithmetic in the cyclotomic field Q(zeta_N)."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

__all__ = ["cyclotomic_poly", "Cyclotomic"]


def _poly_divexact(a: list, b: list) -> list:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    assert not any(a), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _reduce(coeffs: list, n: int) -> tuple:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        lead = c[k]
        if lead:
            for j in range(deg + 1):
                c[k - deg + j] -= lead * phi[j]
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(Fraction(x) for x in c)


class Cyclotomic:
    """Element of Q(zeta_N) in the power basis modulo Phi_N."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        self.n = n
        self.coeffs = _reduce(list(coeffs), n)

    @classmethod
    def root(cls, n: int, k: int) -> "Cyclotomic":
        """zeta_n^k."""
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def rational(cls, n: int, value) -> "Cyclotomic":
        return cls(n, [Fraction(value)])

    def _check(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(self.n, other)
        if other.n != self.n:
            raise ValueError("cyclotomic elements from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        out = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Cyclotomic(self.n, out)

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclotomic":
        out = [Fraction(0)] * self.n
        for k, a in enumerate(self.coeffs):
            out[(-k) % self.n] += a
        return Cyclotomic(self.n, out)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(self.n, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def to_mpc(self):
        total = mpmath.mpc(0)
        for k, a in enumerate(self.coeffs):
            if a:
                total += mpmath.mpf(a.numerator) / a.denominator * mpmath.expjpi(mpmath.mpf(2 * k) / self.n)
        return total

    def __complex__(self):
        return complex(self.to_mpc())

    def __repr__(self):
        terms = [f"{a}*z^{k}" if k else str(a) for k, a in enumerate(self.coeffs) if a]
        return f"Cyclotomic({self.n}: {' + '.join(terms) or '0'})"
