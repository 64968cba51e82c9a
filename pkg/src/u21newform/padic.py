"""
Truncated arithmetic in F = Q_p and its unramified quadratic extension E = F[sqrt(eps)].

Every non-zero element is stored as ``p**val * unit`` where ``unit`` is a residue
modulo ``p**prec`` prime to p.  Cancellation in a sum raises the valuation and
eats relative precision; when a sum cancels every known digit the result is an
``O(p**k)`` element, which may take part in further arithmetic and in equality
tests at working precision, but whose valuation cannot be read off.

    >>> ctx = Context(3, 24)
    >>> ctx.eps
    2
    >>> x = ctx.ext(1, 1)
    >>> x.norm().a.to_fraction()
    Fraction(-1, 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, isqrt

from .cyclotomic import CycScalar

__all__ = [
    "PrecisionError",
    "Context",
    "context_new",
    "LocalElem",
    "ExtElem",
    "residue_transversal",
    "additive_char_sum",
    "additive_character",
]

MIN_PRECISION = 4
DEFAULT_PRECISION = 24

_INF = float("inf")


class PrecisionError(ArithmeticError):
    """Raised when a result would depend on digits beyond the tracked precision."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _rational_reconstruct(u: int, mod: int) -> Fraction:
    """a/b = u mod `mod` with |a|, b <= sqrt(mod/2) (half-extended Euclid); balanced residue if none."""
    bound = isqrt(mod // 2)
    r0, r1, s0, s1 = mod, u % mod, 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 != 0 and abs(s1) <= bound and gcd(r1, abs(s1)) == 1:
        return Fraction(r1, s1)
    return Fraction(u if u <= mod // 2 else u - mod)


@dataclass(frozen=True)
class Context:
    """Residue characteristic, working precision and the non-square unit eps."""

    p: int
    M: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.p == 2:
            raise ValueError("residual characteristic 2 is not supported")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.M < MIN_PRECISION:
            raise ValueError(f"precision must be at least {MIN_PRECISION}")

    @property
    def q(self) -> int:
        return self.p

    @cached_property
    def eps(self) -> int:
        squares = {(x * x) % self.p for x in range(1, self.p)}
        return next(e for e in range(2, self.p) if e not in squares)

    @cached_property
    def modulus(self) -> int:
        return self.p**self.M

    # constructors

    @cached_property
    def _small(self) -> dict:
        # elements are immutable, so small integer constants can be shared
        return {n: LocalElem.from_rational(self, n) for n in range(-4, 5)}

    def F(self, x) -> "LocalElem":
        if isinstance(x, LocalElem):
            return x
        if type(x) is int and -4 <= x <= 4:
            return self._small[x]
        return LocalElem.from_rational(self, x)

    def ext(self, a=0, b=0) -> "ExtElem":
        return ExtElem(self.F(a), self.F(b))

    def pi_power(self, k: int) -> "LocalElem":
        return LocalElem(self, k, 1, self.M)

    def zero(self) -> "LocalElem":
        return LocalElem.exact_zero(self)

    def one(self) -> "LocalElem":
        return LocalElem(self, 0, 1, self.M)

    @cached_property
    def sqrt_eps(self) -> "ExtElem":
        return ExtElem(self.zero(), self.one())


def context_new(p: int, M: int = DEFAULT_PRECISION) -> Context:
    return Context(p, M)


class LocalElem:
    """An element of F known modulo p**(val + prec).

    Three states: exact zero (``prec`` infinite), a genuine element with a unit
    part, or ``O(p**val)`` (``unit == 0``, ``prec == 0``) meaning every known
    digit vanished.
    """

    __slots__ = ("ctx", "val", "unit", "prec")

    def __init__(self, ctx: Context, val, unit: int, prec):
        self.ctx = ctx
        self.val = val
        self.unit = unit
        self.prec = prec

    @classmethod
    def exact_zero(cls, ctx: Context) -> "LocalElem":
        return cls(ctx, _INF, 0, _INF)

    @classmethod
    def big_oh(cls, ctx: Context, k: int) -> "LocalElem":
        return cls(ctx, k, 0, 0)

    @classmethod
    def from_rational(cls, ctx: Context, x) -> "LocalElem":
        x = Fraction(x)
        if x == 0:
            return cls.exact_zero(ctx)
        p = ctx.p
        num, den = x.numerator, x.denominator
        a, b = _vp(num, p), _vp(den, p)
        num //= p**a
        den //= p**b
        mod = ctx.modulus
        return cls(ctx, a - b, (num * pow(den, -1, mod)) % mod, ctx.M)

    # state

    @property
    def is_exact_zero(self) -> bool:
        return self.prec == _INF

    @property
    def is_big_oh(self) -> bool:
        return self.prec == 0

    @property
    def absprec(self):
        return self.val + self.prec

    def valuation(self) -> int:
        if self.is_exact_zero:
            return _INF
        if self.is_big_oh:
            raise PrecisionError(f"valuation of O(p^{self.val}) is undetermined")
        return self.val

    def val_at_least(self, t) -> bool:
        """Decide ``val(self) >= t``; raises if the known digits do not settle it."""
        if self.is_exact_zero:
            return True
        if self.is_big_oh:
            if self.val >= t:
                return True
            raise PrecisionError(f"cannot decide val >= {t} for O(p^{self.val})")
        return self.val >= t

    def is_zero(self) -> bool:
        """Zero at working precision (exact zero or every known digit vanished)."""
        return self.unit == 0

    def abs_value(self) -> Fraction:
        v = self.valuation()
        if v == _INF:
            return Fraction(0)
        return Fraction(1, self.ctx.p) ** v

    # arithmetic

    def _coerce(self, other) -> "LocalElem":
        if isinstance(other, LocalElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.F(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        ctx = self.ctx
        p = ctx.p
        absprec = min(self.absprec, other.absprec)
        v = min(self.val, other.val)
        width = absprec - v
        if width <= 0:
            return LocalElem.big_oh(ctx, absprec)
        mod = p**width
        s = (self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)) % mod
        if s == 0:
            return LocalElem.big_oh(ctx, absprec)
        e = 0
        while s % p == 0:
            s //= p
            e += 1
        prec = min(width - e, ctx.M)
        return LocalElem(ctx, v + e, s % p**prec, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return LocalElem(self.ctx, self.val, (-self.unit) % self.ctx.p**self.prec, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact_zero or other.is_exact_zero:
            return LocalElem.exact_zero(self.ctx)
        if self.is_big_oh or other.is_big_oh:
            return LocalElem.big_oh(self.ctx, self.val + other.val + min(self.prec, other.prec))
        prec = min(self.prec, other.prec)
        return LocalElem(self.ctx, self.val + other.val, (self.unit * other.unit) % self.ctx.p**prec, prec)

    __rmul__ = __mul__

    def inverse(self) -> "LocalElem":
        if self.is_exact_zero:
            raise ZeroDivisionError("inverse of exact zero")
        if self.is_big_oh:
            raise PrecisionError("inverse of an element with no known digits")
        mod = self.ctx.p**self.prec
        return LocalElem(self.ctx, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LocalElem":
        """Multiply by p**k."""
        if self.is_exact_zero:
            return self
        return LocalElem(self.ctx, self.val + k, self.unit, self.prec)

    scale_by_pi_power = shift

    # comparisons

    def equals(self, other) -> bool:
        """Equality at working precision: the difference vanishes to its known precision."""
        other = self._coerce(other)
        d = self - other
        return d.is_exact_zero or d.is_big_oh

    def __eq__(self, other):
        if not isinstance(other, (LocalElem, int, Fraction)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    # conversion

    def residue_int(self, lo: int, hi: int) -> int:
        """Integer in [0, p**(hi-lo)) representing p**(-lo) * self modulo p**(hi-lo)."""
        if self.is_exact_zero:
            return 0
        if not self.val_at_least(lo):
            raise ValueError(f"element has valuation {self.val} < {lo}")
        width = hi - lo
        if self.absprec < hi:
            raise PrecisionError("not enough precision to read residue")
        if self.is_big_oh:
            return 0
        if self.val >= hi:
            return 0
        return (self.unit * self.ctx.p ** (self.val - lo)) % self.ctx.p**width

    def to_fraction(self) -> Fraction:
        """Smallest-height rational lift (balanced residue); for display and tests only."""
        if self.unit == 0:
            return Fraction(0)
        mod = self.ctx.p**self.prec
        return _rational_reconstruct(self.unit, mod) * Fraction(self.ctx.p) ** self.val

    def __repr__(self):
        if self.is_exact_zero:
            return "0"
        if self.is_big_oh:
            return f"O(p^{self.val})"
        return f"{self.to_fraction()} + O(p^{self.absprec})"


class ExtElem:
    """a + b*sqrt(eps) with a, b in F."""

    __slots__ = ("a", "b")

    def __init__(self, a: LocalElem, b: LocalElem):
        self.a = a
        self.b = b

    @property
    def ctx(self) -> Context:
        return self.a.ctx

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            return other
        if isinstance(other, LocalElem):
            return ExtElem(other, LocalElem.exact_zero(other.ctx))
        if isinstance(other, (int, Fraction)):
            return self.ctx.ext(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtElem(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtElem(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LocalElem)):
            c = self.a._coerce(other)
            return ExtElem(self.a * c, self.b * c)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        if b.is_exact_zero and d.is_exact_zero:
            return ExtElem(a * c, b)
        if d.is_exact_zero:
            return ExtElem(a * c, b * c)
        if b.is_exact_zero:
            return ExtElem(a * c, a * d)
        eps = self.ctx.eps
        return ExtElem(a * c + (b * d) * eps, a * d + b * c)

    __rmul__ = __mul__

    def conj(self) -> "ExtElem":
        return ExtElem(self.a, -self.b)

    def norm(self) -> "ExtElem":
        return ExtElem(self.a * self.a - (self.b * self.b) * self.ctx.eps, LocalElem.exact_zero(self.ctx))

    def trace(self) -> "ExtElem":
        return ExtElem(self.a * 2, LocalElem.exact_zero(self.ctx))

    def inverse(self) -> "ExtElem":
        n = self.norm().a
        if n.is_exact_zero:
            raise ZeroDivisionError("inverse of exact zero")
        ninv = n.inverse()
        c = self.conj()
        return ExtElem(c.a * ninv, c.b * ninv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.ext(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "ExtElem":
        return ExtElem(self.a.shift(k), self.b.shift(k))

    scale_by_pi_power = shift

    def valuation(self):
        """min(val a, val b); {1, sqrt(eps)} is an integral basis since E/F is unramified."""
        a, b = self.a, self.b
        if a.is_exact_zero:
            return b.valuation()
        if b.is_exact_zero:
            return a.valuation()
        if not a.is_big_oh and not b.is_big_oh:
            return min(a.val, b.val)
        if a.is_big_oh and b.is_big_oh:
            raise PrecisionError("valuation undetermined")
        known, unknown = (a, b) if b.is_big_oh else (b, a)
        if known.val < unknown.val:
            return known.val
        raise PrecisionError("valuation undetermined")

    def val_at_least(self, t) -> bool:
        return self.a.val_at_least(t) and self.b.val_at_least(t)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    @property
    def is_exact_zero(self) -> bool:
        return self.a.is_exact_zero and self.b.is_exact_zero

    def in_F(self) -> bool:
        return self.b.is_zero()

    def abs_value(self) -> Fraction:
        """|x|_E = q**(-2 val x)."""
        v = self.valuation()
        if v == _INF:
            return Fraction(0)
        return Fraction(1, self.ctx.q) ** (2 * v)

    def equals(self, other) -> bool:
        other = self._coerce(other)
        return self.a.equals(other.a) and self.b.equals(other.b)

    def __eq__(self, other):
        if not isinstance(other, (ExtElem, LocalElem, int, Fraction)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def residue_key(self, lo: int, hi: int) -> tuple[int, int]:
        return self.a.residue_int(lo, hi), self.b.residue_int(lo, hi)

    def __repr__(self):
        if self.b.is_exact_zero:
            return repr(self.a)
        return f"({self.a!r}) + ({self.b!r})*sqrt({self.ctx.eps})"


def residue_transversal(ctx: Context, field: str, lo: int, hi: int) -> list[ExtElem]:
    """Representatives of p^lo / p^hi in F (``field='F'``) or E (``field='E'``).

    Representatives are ``p**lo * sum(d_k p**k)`` with digits in ``range(p)``;
    for E each of the two coordinates runs independently.
    """
    if lo >= hi:
        raise ValueError("need lo < hi")
    if field not in ("F", "E"):
        raise ValueError("field must be 'F' or 'E'")
    p = ctx.p
    width = hi - lo
    scalars = [ctx.F(n).shift(lo) for n in range(p**width)]
    zero = ctx.zero()
    if field == "F":
        return [ExtElem(s, zero) for s in scalars]
    return [ExtElem(s, t) for s, t in product(scalars, scalars)]


def additive_character(ctx: Context, y: ExtElem) -> CycScalar:
    """psi_E(y) = zeta_p ** (p * Tr(y) mod p) for y in p_E^{-1}; conductor o_E."""
    if not y.val_at_least(-1):
        raise ValueError("additive character only realized on p_E^-1")
    tr = y.trace().a
    k = tr.shift(1).residue_int(0, 1)
    return CycScalar.zeta(ctx.p, k)


def additive_char_sum(ctx: Context, lo: int = -1) -> CycScalar:
    """Sum of psi_E over p_E^lo / o_E."""
    if lo == 0:
        return CycScalar.one()
    if lo != -1:
        raise ValueError(f"unsupported range p_E^{lo}/o_E")
    total = CycScalar.zero()
    for y in residue_transversal(ctx, "E", -1, 0):
        total = total + additive_character(ctx, y)
    return total
