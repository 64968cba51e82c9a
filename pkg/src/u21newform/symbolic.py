"""
Rational functions in X = q^(-2s) with coefficients in Q(nu, lam, a, q).

Parameters live in a sympy rational function field; rational functions of X
are stored as reduced numerator/denominator polynomials over that field plus a
power of X, so Laurent shifts coming from s -> 1 - s stay exact.
"""

from __future__ import annotations

import re
from fractions import Fraction

import sympy
from sympy import QQ
from sympy.polys.fields import field
from sympy.polys.rings import ring

from .cyclotomic import CycScalar

__all__ = [
    "K",
    "NU",
    "LAM",
    "A",
    "Q",
    "R",
    "X",
    "NotDivisibleError",
    "ZetaRational",
    "param",
    "l_factor",
    "whittaker_seq",
    "zeta_series",
    "zeta_closed",
    "zeta_factored",
    "lambda_from_nu",
    "alpha_from_ratio",
    "divides",
    "epsilon_factor",
    "monomial_check",
    "series_expand",
    "substitute_reflect",
    "divide_exact",
    "specialize",
    "render",
    "parse",
    "ru1_ratio",
]

K, NU, LAM, A, Q = field("nu,lam,a,q", QQ)
R, X = ring("X", K)
_SYMBOLS = {str(s): s for s in sympy.symbols("nu lam a q X")}


class NotDivisibleError(ArithmeticError):
    pass


def param(x):
    """Coerce int, Fraction, rational CycScalar, numeric string or field element into K."""
    if isinstance(x, CycScalar):
        x = x.to_fraction()
    if isinstance(x, Fraction):
        return K(QQ(x.numerator, x.denominator))
    if isinstance(x, str):
        return K.from_expr(sympy.sympify(x, locals=_SYMBOLS))
    if isinstance(x, int):
        return K(x)
    if getattr(x, "field", None) == K:
        return x
    raise TypeError(f"cannot interpret {x!r} as a parameter")


def _strip_x(p):
    """(k, p / X^k) with p(0) != 0 afterwards (p non-zero)."""
    k = min(m[0] for m in p.monoms())
    if k == 0:
        return 0, p
    return k, R({(m[0] - k,): c for m, c in p.terms()})


class ZetaRational:
    """X^shift * num / den, reduced, den(0) = 1."""

    __slots__ = ("num", "den", "shift")

    def __init__(self, num, den=None, shift: int = 0):
        num = R(num)
        den = R(1) if den is None else R(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num, self.den, self.shift = R(0), R(1), 0
            return
        k1, num = _strip_x(num)
        k2, den = _strip_x(den)
        g = num.gcd(den)
        if g != 1:
            num, den = num.exquo(g), den.exquo(g)
        c0 = den.coeff(1)
        num, den = num.quo_ground(c0), den.quo_ground(c0)
        self.num, self.den, self.shift = num, den, shift + k1 - k2

    @classmethod
    def const(cls, c) -> "ZetaRational":
        return cls(R(param(c)))

    @classmethod
    def monomial(cls, c, k: int) -> "ZetaRational":
        return cls(R(param(c)), shift=k)

    @staticmethod
    def coerce(x) -> "ZetaRational":
        if isinstance(x, ZetaRational):
            return x
        return ZetaRational.const(x)

    def _parts(self):
        """(numerator, denominator) as polynomials with the shift absorbed."""
        if self.shift >= 0:
            return self.num * X**self.shift, self.den
        return self.num, self.den * X ** (-self.shift)

    def __add__(self, other):
        other = ZetaRational.coerce(other)
        n1, d1 = self._parts()
        n2, d2 = other._parts()
        return ZetaRational(n1 * d2 + n2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return ZetaRational(-self.num, self.den, self.shift)

    def __sub__(self, other):
        return self + (-ZetaRational.coerce(other))

    def __rsub__(self, other):
        return ZetaRational.coerce(other) - self

    def __mul__(self, other):
        other = ZetaRational.coerce(other)
        return ZetaRational(self.num * other.num, self.den * other.den, self.shift + other.shift)

    __rmul__ = __mul__

    def inverse(self) -> "ZetaRational":
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return ZetaRational(self.den, self.num, -self.shift)

    def __truediv__(self, other):
        return self * ZetaRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return ZetaRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ZetaRational.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = ZetaRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.shift == other.shift

    def __hash__(self):
        return hash((str(self.num), str(self.den), self.shift))

    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_laurent_polynomial(self) -> bool:
        return self.den == 1

    def is_monomial(self) -> bool:
        return self.den == 1 and len(self.num.terms()) == 1

    def coefficients(self) -> dict:
        """{exponent: coefficient} for a Laurent polynomial."""
        if not self.is_laurent_polynomial():
            raise ValueError("not a Laurent polynomial")
        return {m[0] + self.shift: c for m, c in self.num.terms()}

    def evaluate(self, x):
        """Value at a parameter point X = x (ParamScalar result)."""
        x = param(x)
        n = sum((c * x ** m[0] for m, c in self.num.terms()), K(0))
        d = sum((c * x ** m[0] for m, c in self.den.terms()), K(0))
        return n / d * x**self.shift

    def __repr__(self):
        return f"ZetaRational({render(self)})"


# -- poly_ops -------------------------------------------------------------------


def series_expand(f: ZetaRational, M: int) -> list:
    """Coefficients of X^0..X^M in the power series of f (requires no pole at 0)."""
    if f.shift < 0:
        raise ZeroDivisionError("pole at X = 0")
    num = [f.num.coeff(X**i) if i else f.num.coeff(1) for i in range(M + 1)]
    den = [f.den.coeff(X**i) if i else f.den.coeff(1) for i in range(M + 1)]
    out = []
    for i in range(M + 1):
        acc = num[i] - sum((den[j] * out[i - j] for j in range(1, i + 1)), K(0))
        out.append(acc)  # den(0) = 1
    shifted = [K(0)] * f.shift + out
    return shifted[: M + 1]


def _reflect_poly(p, q):
    """p(q^-2 X^-1) = X^-deg * poly."""
    d = p.degree()
    out = R({(d - m[0],): c * q ** (-2 * m[0]) for m, c in p.terms()})
    return d, out


def substitute_reflect(f: ZetaRational, q=None) -> ZetaRational:
    """s -> 1 - s, i.e. X -> q^-2 X^-1."""
    q = Q if q is None else param(q)
    dn, n = _reflect_poly(f.num, q)
    dd, d = _reflect_poly(f.den, q)
    scale = q ** (-2 * f.shift)
    return ZetaRational(n * scale, d, dd - dn - f.shift)


def divide_exact(f: ZetaRational, g: ZetaRational) -> ZetaRational:
    """f / g, required to be a monomial over a polynomial (no new zeros)."""
    h = f / g
    if len(h.num.terms()) != 1:
        raise NotDivisibleError("quotient has a non-monomial numerator")
    return h


def specialize(f, values: dict):
    """Substitute parameter values ({'q': 3, ...} or {Q: 3, ...})."""
    subs = {}
    for k, v in values.items():
        name = k if isinstance(k, str) else str(k.as_expr())
        subs[_SYMBOLS[name]] = param(v).as_expr()

    def sub(c):
        return K.from_expr(sympy.together(c.as_expr().subs(subs)))

    if isinstance(f, ZetaRational):
        num = R({m: sub(c) for m, c in f.num.terms()})
        den = R({m: sub(c) for m, c in f.den.terms()})
        return ZetaRational(num, den, f.shift)
    return sub(param(f))


# -- L-factors and zeta integrals -------------------------------------------------


def l_factor(chi) -> ZetaRational:
    """1/(1 - chi(p) X) for an unramified value, 1 for ``'ramified'``."""
    if isinstance(chi, str) and chi == "ramified":
        return ZetaRational.const(1)
    if isinstance(chi, str) and chi == "trivial":
        chi = 1
    c = param(chi)
    if c == 0:
        raise ValueError("an unramified character value is non-zero")
    return ZetaRational(R(1), 1 - c * X)


def whittaker_seq(nu=NU, lam=LAM, q=Q, M: int = 24) -> list:
    """c_0..c_M from c_0 = 1, q^4 c_1 = (nu - q^3) c_0 and the three-term recursion."""
    nu, lam, q = param(nu), param(lam), param(q)
    c = [K(1), (nu - q**3) / q**4]
    while len(c) < M + 1:
        i = len(c) - 2
        c.append(((nu + q**2 - lam) * c[i] + q * (nu + q**2 - q**3) * c[i + 1]) / q**5)
    return c[: M + 1]


def zeta_series(c: list, q=Q) -> ZetaRational:
    q = param(q)
    return ZetaRational(R({(i,): ci * q ** (2 * i) for i, ci in enumerate(c) if ci != 0}) if any(ci != 0 for ci in c) else R(0))


def zeta_closed(nu=NU, lam=LAM, q=Q) -> ZetaRational:
    nu, lam, q = param(nu), param(lam), param(q)
    den = 1 - (nu + q**2 - q**3) / q**2 * X - (nu + q**2 - lam) / q * X**2
    return ZetaRational(1 - X, den)


def zeta_factored(nu=NU, a=A, q=Q) -> ZetaRational:
    nu, a, q = param(nu), param(a), param(q)
    return l_factor(a) * ZetaRational(R(1), 1 - (nu + q**2 - q**3 - q**2 * a) / q**2 * X)


def lambda_from_nu(nu=NU, a=A, q=Q):
    nu, a, q = param(nu), param(a), param(q)
    return (nu + q**2 - q**2 * a) * (1 + a / q)


def alpha_from_ratio(a=A, q=Q, r=None):
    """Root of the second L-factor from r = (theta' f)(gamma_N) / f(e)."""
    a, q = param(a), param(q)
    r = param(r) if r is not None else None
    if q**2 / a + q == 0:
        raise ZeroDivisionError("q^2/a + q vanishes at the reducibility locus")
    return 1 / a + (q**2 - 1) / (a * (q**2 / a + q)) * r


def ru1_ratio(q=Q):
    """The gamma ratio forcing alpha = 0 at a = q^-2."""
    q = param(q)
    return -q * (q**2 - q + 1) / (q - 1)


def divides(f: ZetaRational, g: ZetaRational) -> bool:
    """For f, g of the form 1/P: P_f divides P_g, i.e. f/g is a Laurent polynomial."""
    for h in (f, g):
        if h.is_zero() or len(h.num.terms()) != 1:
            raise ValueError("divides expects reciprocals of polynomials")
    return (f / g).is_laurent_polynomial()


def epsilon_factor(N: int, q=Q) -> ZetaRational:
    q = param(q)
    return ZetaRational.monomial(q**N, N)


def monomial_check(candidate: str, N: int, q=Q) -> bool:
    """Would-be epsilon factor for Z / L = candidate, tested for being a monomial.

    ``candidate`` is ``'1'`` or ``'inverse-L_E'`` (Z = L / L_E(s, 1)).
    """
    eps = epsilon_factor(N, q)
    if candidate == "1":
        cand = eps
    elif candidate == "inverse-L_E":
        le = l_factor(1)
        cand = eps * le / substitute_reflect(le, q)
    else:
        raise ValueError(f"unknown candidate {candidate!r}")
    return cand.is_monomial()


# -- canonical text ---------------------------------------------------------------


def _render_coeff(c) -> str:
    s = str(c.as_expr())
    return s if _is_atomic(s) else f"({s})"


def _is_atomic(s: str) -> bool:
    return re.fullmatch(r"-?[A-Za-z0-9_/]+", s) is not None


def _render_poly(p) -> str:
    if p.is_zero:
        return "0"
    out = ""
    for m, c in sorted(p.terms(), key=lambda t: t[0][0]):
        k = m[0]
        mono = "" if k == 0 else ("X" if k == 1 else f"X**{k}")
        neg = c.numer.LC < 0 if hasattr(c.numer, "LC") else False
        body = -c if neg else c
        if not mono:
            term = _render_coeff(body)
        elif body == 1:
            term = mono
        else:
            term = f"{_render_coeff(body)}*{mono}"
        if not out:
            out = f"-{term}" if neg else term
        else:
            out += f" - {term}" if neg else f" + {term}"
    return out


def render(f) -> str:
    """Canonical text: ``(num)/(den)`` with ascending powers of X."""
    if not isinstance(f, ZetaRational):
        return str(param(f).as_expr())
    n, d = f._parts()
    return f"({_render_poly(n)})/({_render_poly(d)})"


def parse(text: str) -> ZetaRational:
    expr = sympy.together(sympy.sympify(text, locals=_SYMBOLS))
    n, d = sympy.fraction(expr)
    return ZetaRational(R.from_expr(sympy.expand(n)), R.from_expr(sympy.expand(d)))
