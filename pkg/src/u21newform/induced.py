"""
Newforms in induced models Ind_B^G(mu1 (x) mu2) with mu1 unramified.

A function is stored as a list of right translates of the base function f0:
``g -> sum coeff * f0(g h)``.  The base function is evaluated by classifying
``g h`` into a double coset B gamma_j K_n and applying the left transformation
law.  On the identity coset f0(b k) = |alpha|_E mu1(alpha) mu2(beta); on any
other coset the value is 0 (``supported`` mode) or carried as a symbolic
unknown U_j (``partial`` mode), so results are linear forms in the unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from sympy import primefactors

from . import group as grp
from .cyclotomic import CycScalar
from .group import GroupElt
from .padic import Context, ExtElem, residue_transversal

__all__ = [
    "CharacterMu2",
    "InducedParams",
    "InducedFn",
    "EvalResult",
    "IndeterminateError",
    "LemmaReport",
    "newform",
    "evaluate",
    "apply_theta_prime",
    "apply_prime",
    "apply_hecke_T",
    "apply_delta_theta",
    "eigen_pair",
    "verify_lemma",
    "SUPPORTED",
    "LEMMAS",
    "PARTIAL",
]

SUPPORTED = "supported"
PARTIAL = "partial"


class IndeterminateError(ValueError):
    """An evaluation still depends on unknown off-support values."""


# -- characters of E^1 ---------------------------------------------------------


def _pair_mul(x, y, eps, mod):
    return ((x[0] * y[0] + eps * x[1] * y[1]) % mod, (x[0] * y[1] + x[1] * y[0]) % mod)


def _pair_pow(x, k, eps, mod):
    result = (1 % mod, 0)
    while k:
        if k & 1:
            result = _pair_mul(result, x, eps, mod)
        x = _pair_mul(x, x, eps, mod)
        k >>= 1
    return result


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class CharacterMu2:
    """A character of E^1 trivial on E^1 cap (1 + p_E^level).

    E^1 / (E^1 cap (1 + p_E^level)) is cyclic of order q + 1 times cyclic of
    order q^(level-1).  The tame factor is read from beta mod p through a
    generator h of the norm-one group of the residue field; the wild factor
    from beta^(q+1) through the generator xi = (1 + p sqrt(eps)) / (1 - p sqrt(eps)).
    The character sends h to zeta_(q+1)^j1 and xi to zeta_(q^(level-1))^j2.
    """

    def __init__(self, ctx: Context, level: int = 0, j1: int = 0, j2: int = 0):
        if level < 0:
            raise ValueError("level must be non-negative")
        q = ctx.q
        self.ctx = ctx
        self.level = level
        self.tame_order = q + 1
        self.wild_order = q ** (level - 1) if level >= 1 else 1
        self.j1 = j1 % self.tame_order if level >= 1 else 0
        self.j2 = j2 % self.wild_order
        if level == 0 and (j1 or j2):
            raise ValueError("a character of level 0 is trivial")

    @classmethod
    def trivial(cls, ctx: Context) -> "CharacterMu2":
        return cls(ctx, 0)

    @property
    def conductor(self) -> int:
        c = 1 if self.j1 else 0
        if self.j2:
            c = max(c, self.level - _vp(self.j2, self.ctx.p))
        return c

    @property
    def order(self) -> int:
        m1 = self.tame_order // gcd(self.tame_order, self.j1) if self.j1 else 1
        m2 = self.wild_order // gcd(self.wild_order, self.j2) if self.j2 else 1
        return m1 * m2 // gcd(m1, m2)

    def is_trivial(self) -> bool:
        return self.j1 == 0 and self.j2 == 0

    @cached_property
    def _tame_table(self) -> dict:
        p, eps = self.ctx.p, self.ctx.eps
        order = p * p - 1
        gen = None
        for a in range(p):
            for b in range(1, p):
                cand = (a, b)
                if all(_pair_pow(cand, order // r, eps, p) != (1, 0) for r in primefactors(order)):
                    gen = cand
                    break
            if gen:
                break
        h = _pair_pow(gen, p - 1, eps, p)
        table, x = {}, (1, 0)
        for k in range(p + 1):
            table[x] = k
            x = _pair_mul(x, h, eps, p)
        return table

    @cached_property
    def _wild_table(self) -> dict:
        c = self.level
        ctx = self.ctx
        mod = ctx.p**c
        xi = ExtElem(ctx.one(), ctx.pi_power(1))
        xi = xi / xi.conj()
        gen = xi.residue_key(0, c)
        table, x = {}, (1, 0)
        for k in range(self.wild_order):
            table[x] = k
            x = _pair_mul(x, gen, ctx.eps, mod)
        return table

    def logs(self, beta: ExtElem) -> tuple[int, int]:
        """(k1, k2) with beta = h^k1 xi^k2 modulo E^1 cap (1 + p_E^level)."""
        if self.level == 0:
            return 0, 0
        p, eps = self.ctx.p, self.ctx.eps
        if beta.valuation() != 0:
            raise ValueError("argument is not a unit")
        key = beta.residue_key(0, self.level)
        k1 = self._tame_table[(key[0] % p, key[1] % p)]
        k2 = 0
        if self.level >= 2:
            mod = p**self.level
            w = _pair_pow(key, self.tame_order, eps, mod)
            k = self._wild_table[w]
            k2 = (k * pow(self.tame_order, -1, self.wild_order)) % self.wild_order
        return k1, k2

    def __call__(self, beta: ExtElem) -> CycScalar:
        if self.is_trivial():
            return CycScalar.one()
        k1, k2 = self.logs(beta)
        val = CycScalar.one()
        if self.j1:
            val = val * CycScalar.zeta(self.tame_order, self.j1 * k1)
        if self.j2:
            val = val * CycScalar.zeta(self.wild_order, self.j2 * k2)
        return val

    def generator_values(self) -> dict:
        """Value table on the tame and wild generators."""
        out = {"tame": CycScalar.zeta(self.tame_order, self.j1) if self.level else CycScalar.one()}
        if self.level >= 2:
            out["wild"] = CycScalar.zeta(self.wild_order, self.j2)
        return out

    def __repr__(self):
        return f"CharacterMu2(level={self.level}, j1={self.j1}, j2={self.j2}, conductor={self.conductor})"


# -- parameters and results ----------------------------------------------------


@dataclass(frozen=True)
class InducedParams:
    ctx: Context
    a: CycScalar
    mu2: CharacterMu2
    level: int
    support_mode: str = SUPPORTED

    def __post_init__(self):
        a = CycScalar.coerce(self.a)
        object.__setattr__(self, "a", a)
        q = self.ctx.q
        if a.is_zero():
            raise ValueError("mu1(p) must be non-zero")
        if (q * q / a + q).is_zero():
            raise ValueError("q^2/a + q = 0: the induced representation has no generic subrepresentation")
        if self.level < 1:
            raise ValueError("level must be at least 1")
        if self.mu2.conductor > self.level:
            raise ValueError("central character must be trivial on Z_n")
        if self.support_mode not in (SUPPORTED, PARTIAL):
            raise ValueError(f"unknown support mode {self.support_mode!r}")

    @property
    def q(self) -> int:
        return self.ctx.q


class EvalResult:
    """const + sum_j coeffs[j] * U_j, where U_j is the base value on B gamma_j K_n."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const=None, coeffs=None):
        self.const = CycScalar.coerce(const) if const is not None else CycScalar.zero()
        self.coeffs = {j: c for j, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def unknown(cls, j: int, scale) -> "EvalResult":
        return cls(CycScalar.zero(), {j: CycScalar.coerce(scale)})

    def __add__(self, other: "EvalResult") -> "EvalResult":
        coeffs = dict(self.coeffs)
        for j, c in other.coeffs.items():
            coeffs[j] = coeffs[j] + c if j in coeffs else c
        return EvalResult(self.const + other.const, coeffs)

    def scale(self, c) -> "EvalResult":
        return EvalResult(self.const * c, {j: x * c for j, x in self.coeffs.items()})

    def is_resolved(self) -> bool:
        return not self.coeffs

    def value(self) -> CycScalar:
        if self.coeffs:
            raise IndeterminateError(f"value depends on unknowns {self.unknowns()}")
        return self.const

    def unknowns(self) -> list[str]:
        return [f"U{j}" for j in sorted(self.coeffs)]

    def __eq__(self, other):
        if isinstance(other, (CycScalar, int, Fraction)):
            other = EvalResult(other)
        if not isinstance(other, EvalResult):
            return NotImplemented
        return self.const == other.const and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        parts = [repr(self.const)] + [f"({c!r})*U{j}" for j, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


# -- functions -----------------------------------------------------------------


@dataclass(frozen=True)
class InducedFn:
    params: InducedParams
    translates: tuple
    effective_level: int
    known: dict = field(default_factory=dict)

    def translated(self, ops, level: int) -> "InducedFn":
        """The function g -> sum_op F(g op), i.e. translates op * h."""
        new = tuple((op * h, c) for op in ops for h, c in self.translates)
        return InducedFn(self.params, new, level, self.known)

    def __len__(self):
        return len(self.translates)


def newform(params: InducedParams, known: dict | None = None) -> InducedFn:
    """The base function: f(e) = 1, right K_n-invariant."""
    return InducedFn(params, ((grp.identity(params.ctx), CycScalar.one()),), params.level, dict(known or {}))


def _base_value(params: InducedParams, known: dict, g: GroupElt) -> EvalResult:
    w = grp.classify_coset(g, params.level)
    if not w.is_identity_coset and params.support_mode == SUPPORTED:
        return EvalResult()
    alpha, beta = w.b[0, 0], w.b[1, 1]
    v = alpha.valuation()
    factor = CycScalar.from_rational(Fraction(1, params.q ** (2 * v)) if v >= 0 else params.q ** (-2 * v))
    factor = factor * params.a**v * params.mu2(beta)
    if w.is_identity_coset:
        return EvalResult(factor)
    if w.rep_index in known:
        return EvalResult(factor * known[w.rep_index])
    return EvalResult.unknown(w.rep_index, factor)


def evaluate(f: InducedFn, g: GroupElt | None = None) -> EvalResult:
    """Value of f at g (default: identity) as a linear form in the unknowns."""
    total = EvalResult()
    for h, c in f.translates:
        point = h if g is None else g * h
        total = total + _base_value(f.params, f.known, point).scale(c)
    return total


# -- operators -----------------------------------------------------------------


def _theta_ops(ctx: Context, N: int) -> list[GroupElt]:
    ops = [grp.zeta(ctx, -1)]
    ops += [grp.u(ctx, 0, x) for x in residue_transversal(ctx, "F", -1 - N, -N)]
    return ops


def _prime_ops(ctx: Context, N: int) -> list[GroupElt]:
    return [
        grp.uhat(ctx, y, z)
        for y in residue_transversal(ctx, "E", N, N + 1)
        for z in residue_transversal(ctx, "F", N, N + 1)
    ]


def apply_theta_prime(f: InducedFn) -> InducedFn:
    """Level raising: f(g zeta^-1) + sum_{x in p_F^(-1-N)/p_F^(-N)} f(g u(0, x))."""
    N = f.effective_level
    return f.translated(_theta_ops(f.params.ctx, N), N + 1)


def apply_prime(f: InducedFn) -> InducedFn:
    """Sum of uhat(y, z)-translates over y in p_E^N/p_E^(N+1), z in p_F^N/p_F^(N+1)."""
    N = f.effective_level - 1
    return f.translated(_prime_ops(f.params.ctx, N), f.effective_level)


def apply_hecke_T(f: InducedFn) -> InducedFn:
    """T on level N+1: zeta^-1-translate of the primed sum plus u(a, b) zeta translates."""
    ctx = f.params.ctx
    N = f.effective_level - 1
    zinv, z = grp.zeta(ctx, -1), grp.zeta(ctx, 1)
    ops = [zinv * op for op in _prime_ops(ctx, N)]
    ops += [
        grp.u(ctx, a, b) * z
        for a in residue_transversal(ctx, "E", 0, 1)
        for b in residue_transversal(ctx, "F", -1 - N, 1 - N)
    ]
    return f.translated(ops, N + 1)


def apply_delta_theta(f: InducedFn) -> InducedFn:
    """delta theta' f = (theta' f)' + sum_{y in p_E^-1/o_E} pi(zeta u(y, 0)) theta' f."""
    ctx = f.params.ctx
    N = f.effective_level
    g = apply_theta_prime(f)
    z = grp.zeta(ctx, 1)
    ops = _prime_ops(ctx, N) + [z * grp.u(ctx, y, 0) for y in residue_transversal(ctx, "E", -1, 0)]
    return g.translated(ops, N)


def eigen_pair(params: InducedParams) -> tuple[CycScalar, CycScalar]:
    """(nu, lambda) from first principles."""
    e = grp.identity(params.ctx)
    f = newform(params)
    g = apply_theta_prime(f)
    ge = _resolved(evaluate(g), e, "theta' f")
    tg = _resolved(evaluate(apply_hecke_T(g)), e, "T theta' f")
    dg = _resolved(evaluate(apply_delta_theta(f)), e, "delta theta' f")
    fe = _resolved(evaluate(f), e, "f")
    return tg / ge, dg / fe


def _resolved(r: EvalResult, at: GroupElt, what: str) -> CycScalar:
    if not r.is_resolved():
        raise IndeterminateError(f"{what} at {at!r} depends on {r.unknowns()}")
    return r.const


# -- lemma checks ----------------------------------------------------------------


@dataclass
class LemmaReport:
    name: str
    passed: bool
    lhs: object
    rhs: object
    details: dict

    def __bool__(self):
        return self.passed


def _hecke_coefficients(params: InducedParams) -> tuple[CycScalar, CycScalar]:
    q, a = params.q, params.a
    return q * q * (a + 1 / a) + q**3 - q * q, q * q * (q * q - 1) / a


def verify_lemma(which: str, params: InducedParams) -> LemmaReport:
    """Check one of the eigenvalue lemmas by direct operator evaluation.

    ``which`` is one of ``theta-identity`` (theta' f at e), ``lambda-nu``
    (lambda versus nu), ``hecke-two-values`` (nu through g(e) and g(gamma)),
    ``hecke-gamma-ratio`` (nu through the gamma ratio), ``ru2-gamma``
    (theta' f at gamma_1 equals (q+1) f(e)) or ``theta-vanishes`` (theta' f
    vanishes at gamma_N, whose coset misses B K_(N+1)).
    """
    ctx, q, a = params.ctx, params.q, params.a
    N = params.level
    f = newform(params)
    g = apply_theta_prime(f)
    fe = evaluate(f)
    if which == "theta-identity":
        lhs = evaluate(g)
        rhs = fe.scale(q * q / a + q)
        return LemmaReport(which, lhs == rhs, lhs, rhs, {})
    if which == "lambda-nu":
        nu, lam = eigen_pair(params)
        rhs = (nu + q * q - q * q * a) * (1 + a / q)
        return LemmaReport(which, lam == rhs, lam, rhs, {"nu": nu, "lambda": lam})
    gam = grp.gamma(ctx, N)
    if which == "hecke-two-values":
        k0, k1 = _hecke_coefficients(params)
        ge, ggam = evaluate(g), evaluate(g, gam)
        lhs = evaluate(apply_hecke_T(g))
        rhs = ge.scale(k0) + ggam.scale(k1)
        details = {"g(e)": ge, "g(gamma)": ggam}
        # the same identity for an arbitrary K_(N+1)-fixed vector with g(e) = 1
        generic = newform(InducedParams(ctx, a, params.mu2, N + 1, PARTIAL))
        glhs = evaluate(apply_hecke_T(generic))
        grhs = EvalResult(k0, {N: k1}) if N + 1 > 1 else EvalResult(k0 + k1)
        details["generic"] = glhs
        ok = lhs == rhs and glhs == grhs
        return LemmaReport(which, ok, lhs, rhs, details)
    if which == "hecke-gamma-ratio":
        nu, _ = eigen_pair(params)
        ratio = _resolved(evaluate(g, gam), gam, "theta' f") / _resolved(fe, gam, "f")
        k0, k1 = _hecke_coefficients(params)
        rhs = k0 + k1 / (q * q / a + q) * ratio
        return LemmaReport(which, nu == rhs, nu, rhs, {"ratio": ratio})
    if which == "ru2-gamma":
        lhs = evaluate(g, grp.gamma(ctx, 1))
        rhs = fe.scale(q + 1)
        return LemmaReport(which, lhs == rhs, lhs, rhs, {})
    if which == "theta-vanishes":
        witness = grp.classify_coset(gam, N + 1)
        disjoint = not witness.is_identity_coset
        lhs = evaluate(g, gam)
        return LemmaReport(which, disjoint and lhs == EvalResult(), lhs, EvalResult(), {"rep_index": witness.rep_index})
    raise ValueError(f"unknown check {which!r}")


LEMMAS = ("theta-identity", "lambda-nu", "hecke-two-values", "hecke-gamma-ratio", "ru2-gamma", "theta-vanishes")
