"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element is a coefficient vector of length phi(m) in the power basis
1, zeta, ..., zeta^(phi(m)-1), reduced modulo the m-th cyclotomic polynomial.
Elements over different m are compared and combined in Q(zeta_lcm).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

__all__ = ["CycScalar", "parse_scalar"]


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, low degree first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(coeffs: list, m: int) -> tuple[Fraction, ...]:
    phi = _cyclotomic(m)
    d = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    for k in range(len(c) - 1, d - 1, -1):
        lead = c[k]
        if lead:
            # Phi_m is monic
            for j in range(d + 1):
                c[k - d + j] -= lead * phi[j]
    c = c[:d] + [Fraction(0)] * max(0, d - len(c))
    return tuple(c)


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = list(a)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = rem[k + len(b) - 1] / lead
        quot[k] = coef
        for j, bj in enumerate(b):
            rem[k + j] -= coef * bj
    return quot, _poly_trim(rem)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, m: int):
    """Inverse of a modulo Phi_m via the extended Euclidean algorithm."""
    r0, r1 = [Fraction(c) for c in _cyclotomic(m)], _poly_trim(a)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        quot, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1))
        if not r1:
            raise ZeroDivisionError("non-invertible cyclotomic element")
    if not r1:
        raise ZeroDivisionError("division by zero in Q(zeta_m)")
    c = r1[0]
    return [x / c for x in s1]


class CycScalar:
    """Element of Q(zeta_m); m = 1 is plain Q."""

    __slots__ = ("m", "coeffs")

    def __init__(self, coeffs, m: int = 1):
        self.m = m
        self.coeffs = _reduce(list(coeffs), m)

    @classmethod
    def from_rational(cls, x) -> "CycScalar":
        return cls([Fraction(x)], 1)

    @classmethod
    def zero(cls) -> "CycScalar":
        return cls([0], 1)

    @classmethod
    def one(cls) -> "CycScalar":
        return cls([1], 1)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycScalar":
        """zeta_m ** k."""
        k %= m
        c = [0] * (k + 1)
        c[k] = 1
        return cls(c, m).simplify()

    # field bookkeeping

    def lift(self, M: int) -> "CycScalar":
        """Same element viewed in Q(zeta_M), m | M."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"cannot embed Q(zeta_{self.m}) in Q(zeta_{M})")
        step = M // self.m
        c = [Fraction(0)] * (step * len(self.coeffs) or 1)
        for i, x in enumerate(self.coeffs):
            c[i * step] = x
        return CycScalar(c, M)

    def simplify(self) -> "CycScalar":
        """Drop to Q when the element is rational."""
        if self.m != 1 and all(x == 0 for x in self.coeffs[1:]):
            return CycScalar([self.coeffs[0] if self.coeffs else 0], 1)
        return self

    @staticmethod
    def _common(x: "CycScalar", y: "CycScalar"):
        if x.m == y.m:
            return x, y, x.m
        M = x.m * y.m // gcd(x.m, y.m)
        return x.lift(M), y.lift(M), M

    @staticmethod
    def coerce(x) -> "CycScalar":
        if isinstance(x, CycScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return CycScalar.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycScalar")

    # arithmetic

    def __add__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        x, y, M = CycScalar._common(self, other)
        return CycScalar([a + b for a, b in zip(x.coeffs, y.coeffs)], M).simplify()

    __radd__ = __add__

    def __neg__(self):
        return CycScalar([-a for a in self.coeffs], self.m)

    def __sub__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.m == 1:
            c = other.coeffs[0]
            return CycScalar([a * c for a in self.coeffs], self.m)
        if self.m == 1:
            c = self.coeffs[0]
            return CycScalar([a * c for a in other.coeffs], other.m)
        x, y, M = CycScalar._common(self, other)
        return CycScalar(_poly_mul(list(x.coeffs), list(y.coeffs)) or [0], M).simplify()

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.m == 1:
            if self.coeffs[0] == 0:
                raise ZeroDivisionError("division by zero")
            return CycScalar([1 / self.coeffs[0]], 1)
        return CycScalar(_poly_inverse_mod(self.coeffs, self.m), self.m).simplify()

    def __truediv__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycScalar.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # predicates and conversion

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        try:
            other = CycScalar.coerce(other)
        except TypeError:
            return NotImplemented
        x, y, _ = CycScalar._common(self, other)
        return x.coeffs == y.coeffs

    def __hash__(self):
        s = self.simplify()
        return hash((s.m, s.coeffs)) if s.m != 1 else hash(s.coeffs[0])

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(a) * z**i for i, a in enumerate(self.coeffs))

    def __repr__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                terms.append(str(a))
            else:
                mono = f"zeta_{self.m}" + (f"^{i}" if i > 1 else "")
                terms.append(mono if a == 1 else f"{a}*{mono}")
        return " + ".join(terms)


_ZETA = re.compile(r"^zeta_(\d+)(?:\^(-?\d+))?$")


def parse_scalar(text: str) -> CycScalar:
    """Parse ``num/den`` or ``zeta_m^k`` (optionally ``c*zeta_m^k``)."""
    text = text.strip().replace(" ", "")
    coef = Fraction(1)
    if "*" in text:
        head, text = text.split("*", 1)
        coef = Fraction(head)
    match = _ZETA.match(text)
    if match:
        m = int(match.group(1))
        k = int(match.group(2) or 1)
        return CycScalar.zeta(m, k) * coef
    return CycScalar.from_rational(Fraction(text) * coef)
