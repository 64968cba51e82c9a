"""
Conductor, L-factor and epsilon factor for the generic representations of
unramified U(2,1) covered here, plus the end-to-end cross-check that rebuilds
the L-factor of a principal-series case from eigenvalues computed in the
induced model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import primefactors

from . import group as grp
from . import induced as ind
from . import symbolic as sym
from .cyclotomic import CycScalar
from .padic import Context, ExtElem
from .symbolic import ZetaRational

__all__ = [
    "UnramifiedPS",
    "IrredPSUnramMu2",
    "Steinberg",
    "RU2",
    "RU3",
    "RamifiedOrSupercuspidal",
    "ReprInvariants",
    "InconsistentTableError",
    "invariants",
    "conductor_of_mu2",
    "check_estimates",
    "cross_check",
    "CrossCheckReport",
    "all_table_specs",
    "spec_label",
]


class InconsistentTableError(ValueError):
    pass


@dataclass(frozen=True)
class UnramifiedPS:
    a: Fraction


@dataclass(frozen=True)
class IrredPSUnramMu2:
    a: Fraction
    c: int
    N: int


@dataclass(frozen=True)
class Steinberg:
    pass


@dataclass(frozen=True)
class RU2:
    c: int = 0


@dataclass(frozen=True)
class RU3:
    c: int = 1


@dataclass(frozen=True)
class RamifiedOrSupercuspidal:
    L_choice: str  # "1" or "L_E"
    N: int


@dataclass(frozen=True)
class ReprInvariants:
    N: int
    L: ZetaRational
    epsilon: ZetaRational
    bound: ZetaRational
    bound_name: str = ""


def _mu1_value(spec, q: int) -> Fraction | None:
    """mu1(p) for the unramified cases, None otherwise."""
    if isinstance(spec, (UnramifiedPS, IrredPSUnramMu2)):
        return Fraction(spec.a)
    if isinstance(spec, Steinberg):
        return Fraction(1, q * q)
    if isinstance(spec, RU2):
        return Fraction(-1, q)
    if isinstance(spec, RU3):
        return Fraction(1)
    return None


def _validate(spec, q: int) -> None:
    if isinstance(spec, UnramifiedPS):
        a = Fraction(spec.a)
        if a == 0:
            raise ValueError("mu1(p) must be non-zero")
        special = {Fraction(1, q * q): "steinberg", Fraction(q * q): "steinberg", Fraction(-1, q): "ru2", Fraction(-q): "ru2"}
        if a in special:
            raise ValueError(f"a = {a} gives a reducible induction; use the {special[a]} case")
    elif isinstance(spec, IrredPSUnramMu2):
        a = Fraction(spec.a)
        if a == 0:
            raise ValueError("mu1(p) must be non-zero")
        if spec.c < 1:
            raise ValueError("mu2 must be non-trivial")
        if a == 1:
            raise ValueError("trivial mu1 with non-trivial mu2 is reducible; use the ru3 case")
        if a in (Fraction(-1, q), Fraction(-q)):
            raise ValueError("this a gives a reducible induction; use the ru2 case")
        if spec.N < spec.c:
            raise ValueError("the conductor is at least c(mu2)")
    elif isinstance(spec, RU2):
        if spec.c < 0:
            raise ValueError("c must be non-negative")
    elif isinstance(spec, RU3):
        if spec.c < 1:
            raise ValueError("ru3 needs a non-trivial mu2 (c >= 1)")
    elif isinstance(spec, RamifiedOrSupercuspidal):
        if spec.L_choice not in ("1", "L_E"):
            raise ValueError("L_choice must be '1' or 'L_E'")
        if spec.N < 0:
            raise ValueError("conductor must be non-negative")
    elif not isinstance(spec, Steinberg):
        raise TypeError(f"unknown spec {spec!r}")


def invariants(spec, q: int) -> ReprInvariants:
    """(N, L, epsilon, divisibility bound) for the case."""
    _validate(spec, q)
    L1 = sym.l_factor(1)
    a = _mu1_value(spec, q)
    if isinstance(spec, UnramifiedPS):
        N, L = 0, sym.l_factor(a) * sym.l_factor(1 / a) * L1
    elif isinstance(spec, IrredPSUnramMu2):
        N, L = spec.N, sym.l_factor(a) * sym.l_factor(1 / a)
    elif isinstance(spec, Steinberg):
        N, L = 2, sym.l_factor(a)
    elif isinstance(spec, RU2):
        if spec.c == 0:
            N, L = 1, sym.l_factor(a) * L1
        else:
            N, L = spec.c + 1, sym.l_factor(a)
    elif isinstance(spec, RU3):
        N, L = spec.c, L1 * L1
    else:
        N, L = spec.N, (L1 if spec.L_choice == "L_E" else ZetaRational.const(1))
    if isinstance(spec, (UnramifiedPS, IrredPSUnramMu2)):
        bound, name = sym.l_factor(a) * sym.l_factor(1 / a) * L1, "full-induction"
    elif isinstance(spec, (Steinberg, RU2, RU3)):
        bound, name = sym.l_factor(a) * L1, "proper-submodule"
    else:
        bound, name = L1, "trivial-character"
    return ReprInvariants(N, L, sym.epsilon_factor(N, q), bound, name)


def spec_label(spec) -> str:
    """Short stable label, e.g. ``ru3(c=1)``."""
    if isinstance(spec, UnramifiedPS):
        return f"unramified-ps(a={spec.a})"
    if isinstance(spec, IrredPSUnramMu2):
        return f"irred-ps(a={spec.a},c={spec.c},N={spec.N})"
    if isinstance(spec, Steinberg):
        return "steinberg"
    if isinstance(spec, RU2):
        return f"ru2(c={spec.c})"
    if isinstance(spec, RU3):
        return f"ru3(c={spec.c})"
    return f"ramified(L={spec.L_choice},N={spec.N})"


def check_estimates(spec, q: int) -> bool:
    inv = invariants(spec, q)
    return sym.divides(inv.L, inv.bound)


# -- conductor of mu2 ------------------------------------------------------------


def _tame_lift(ctx: Context) -> ExtElem:
    """u / conj(u) for a unit u reducing to a generator of the residue field of E."""
    p = ctx.p
    order = p * p - 1
    for a in range(p):
        for b in range(1, p):
            u = ctx.ext(a, b)
            if all(not (u ** (order // r) - 1).val_at_least(1) for r in primefactors(order)):
                return u / u.conj()
    raise RuntimeError("no generator found")


def _level_generators(ctx: Context, n: int) -> list[ExtElem]:
    """Generators of E^1 cap (1 + p_E^n) (all of E^1 when n = 0)."""
    xi = ExtElem(ctx.one(), ctx.pi_power(1))
    xi = xi / xi.conj()
    if n == 0:
        return [_tame_lift(ctx), xi]
    return [xi ** (ctx.q ** (n - 1))]


def conductor_of_mu2(mu2: ind.CharacterMu2) -> int:
    """Least n with mu2 trivial on E^1 cap (1 + p_E^n), found by evaluating mu2."""
    ctx = mu2.ctx
    n = 0
    while n <= mu2.level:
        if all(mu2(x) == 1 for x in _level_generators(ctx, n)):
            break
        n += 1
    if n > mu2.level:
        raise InconsistentTableError("character is not trivial at its table level")
    if n != mu2.conductor:
        raise InconsistentTableError(f"value table says conductor {mu2.conductor}, evaluation gives {n}")
    return n


# -- end-to-end check ---------------------------------------------------------------


@dataclass
class CrossCheckReport:
    spec: object
    p: int
    passed: bool
    values: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)


def _induced_params(spec, ctx: Context) -> ind.InducedParams:
    q = ctx.q
    if isinstance(spec, RU2) and spec.c == 0:
        return ind.InducedParams(ctx, CycScalar.from_rational(Fraction(-1, q)), ind.CharacterMu2.trivial(ctx), 1, ind.PARTIAL)
    if isinstance(spec, RU3):
        mu2 = ind.CharacterMu2(ctx, spec.c, 1, 1)
        return ind.InducedParams(ctx, CycScalar.one(), mu2, spec.c, ind.SUPPORTED)
    if isinstance(spec, IrredPSUnramMu2):
        mu2 = ind.CharacterMu2(ctx, spec.c, 1, 1)
        return ind.InducedParams(ctx, CycScalar.from_rational(spec.a), mu2, spec.N, ind.SUPPORTED)
    raise ValueError(f"{spec!r} is not computable in the induced model here")


def cross_check(spec, p: int, M: int = 24) -> CrossCheckReport:
    """Rebuild L(s, pi) from induced-model eigenvalues and compare with the table."""
    ctx = Context(p, M)
    q = ctx.q
    report = CrossCheckReport(spec, p, True)
    params = _induced_params(spec, ctx)
    inv = invariants(spec, q)
    a = params.a.to_fraction()

    def record(name, ok, **vals):
        report.values.update(vals)
        if not ok:
            report.passed = False
            report.failures.append(name)

    N = params.level
    f = ind.newform(params)
    g = ind.apply_theta_prime(f)
    ratio = ind.evaluate(g, grp.gamma(ctx, N)).value() / ind.evaluate(f).value()
    nu, lam = ind.eigen_pair(params)
    nu_f, lam_f, ratio_f = nu.to_fraction(), lam.to_fraction(), ratio.to_fraction()
    record("eigenvalue relation", sym.param(lam_f) == sym.lambda_from_nu(nu_f, a, q), nu=nu_f, lam=lam_f, ratio=ratio_f)
    closed = sym.zeta_closed(nu_f, lam_f, q) * sym.l_factor(1)
    factored = sym.zeta_factored(nu_f, a, q)
    alpha = sym.alpha_from_ratio(a, q, ratio_f)
    via_ratio = sym.l_factor(a) * (sym.l_factor(alpha) if alpha != 0 else ZetaRational.const(1))
    record("closed form", closed == inv.L, closed=sym.render(closed))
    record("factored form", factored == inv.L, factored=sym.render(factored))
    record("gamma ratio", via_ratio == inv.L, alpha=str(alpha.as_expr()), via_ratio=sym.render(via_ratio))
    record("monomial", sym.monomial_check("1", inv.N, q) and not sym.monomial_check("inverse-L_E", inv.N, q))
    report.values["table_L"] = sym.render(inv.L)
    return report


def all_table_specs(q: int) -> list:
    """One representative of every row of the classification table."""
    return [
        UnramifiedPS(Fraction(2)),
        IrredPSUnramMu2(Fraction(2), 1, 1),
        Steinberg(),
        RU2(0),
        RU2(1),
        RU2(2),
        RU3(1),
        RU3(2),
        RamifiedOrSupercuspidal("1", 3),
        RamifiedOrSupercuspidal("L_E", 2),
    ]
