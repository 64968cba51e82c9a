"""Verification suites: each returns a list of check records.

A record is a dict with keys ``name``, ``anchor`` (the claim being checked),
``inputs``, ``expected``, ``computed`` and ``passed``; every value is a plain
string or bool so that reports serialize deterministically.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import classify as cls
from . import group as grp
from . import induced as ind
from . import symbolic as sym
from .cyclotomic import CycScalar
from .padic import Context, additive_char_sum, residue_transversal

SUITES = ("padic", "group", "identities", "lemmas", "recursions", "pipeline", "monomial", "estimates")


def _rec(name, anchor, inputs, expected, computed, passed) -> dict:
    return {
        "name": name,
        "anchor": anchor,
        "inputs": str(inputs),
        "expected": str(expected),
        "computed": str(computed),
        "passed": bool(passed),
    }


def _guard(name, anchor, inputs, fn) -> dict:
    """Run a check, turning an exception into a failed record."""
    try:
        return fn()
    except Exception as exc:  # reported, never swallowed silently
        return _rec(name, anchor, inputs, "no exception", f"{type(exc).__name__}: {exc}", False)


def suite_padic(ctx: Context, samples: int, rng: random.Random) -> list[dict]:
    out = []
    bad_inv = bad_norm = bad_val = 0
    for _ in range(samples):
        x = grp.random_unit(ctx, rng).shift(rng.randint(-3, 3))
        y = grp.random_unit(ctx, rng).shift(rng.randint(-3, 3))
        if not ((x * y) / y).equals(x):
            bad_inv += 1
        if not (x * y).norm().equals(x.norm() * y.norm()):
            bad_norm += 1
        if (x * y).valuation() != x.valuation() + y.valuation():
            bad_val += 1
    inputs = f"p={ctx.p} samples={samples}"
    out.append(_rec("padic.mul_inverse", "multiplicative inverse", inputs, 0, bad_inv, bad_inv == 0))
    out.append(_rec("padic.norm_multiplicative", "norm is multiplicative", inputs, 0, bad_norm, bad_norm == 0))
    out.append(_rec("padic.valuation_additive", "valuation of products", inputs, 0, bad_val, bad_val == 0))
    reps = residue_transversal(ctx, "E", -1, 1)
    keys = {r.residue_key(-1, 1) for r in reps}
    out.append(_rec("padic.transversal_complete", "residue transversal size", "E, p^-1/p^1", ctx.q**4, len(keys), len(keys) == ctx.q**4 == len(reps)))
    s = additive_char_sum(ctx, -1)
    out.append(_rec("padic.character_sum", "additive character sum over p_E^-1/o_E vanishes", f"p={ctx.p}", 0, s, s.is_zero()))
    return out


def suite_group(ctx: Context, samples: int, rng: random.Random) -> list[dict]:
    out = []
    inputs = f"p={ctx.p} samples={samples}"
    gens = [grp.u(ctx, ctx.ext(1, 1), 2), grp.uhat(ctx, 1, 3), grp.t(ctx, ctx.ext(2, 1)), grp.zeta(ctx), grp.gamma(ctx, 1), grp.t_n(ctx, 3)]
    ok = all(grp.is_in_G(g) for g in gens)
    out.append(_rec("group.generators_in_G", "generators satisfy the defining form", inputs, True, ok, ok))
    ok = all((grp.t_n(ctx, i) * grp.t_n(ctx, i)).equals(grp.identity(ctx)) for i in range(4))
    out.append(_rec("group.t_i_involution", "t_i squares to the identity", inputs, True, ok, ok))
    for n in (1, 2, 3):
        bad = 0
        for _ in range(samples):
            g = grp.random_borel(ctx, rng) * grp.random_k(ctx, rng, n)
            res = grp.reduce_bk(g, n)
            if res is None or not (res[0] * res[1]).equals(g):
                bad += 1
        out.append(_rec(f"group.reduce_bk_n{n}", "B K_n decomposition reconstructs", inputs, 0, bad, bad == 0))
        bad = 0
        for _ in range(samples):
            i = rng.randint(0, n)
            g = grp.random_borel(ctx, rng) * grp.gamma(ctx, i) * grp.random_k(ctx, rng, n)
            j = grp.classify_coset(g, n).rep_index
            h = grp.random_borel(ctx, rng) * g * grp.random_k(ctx, rng, n)
            if j != max(i, n - i) or grp.classify_coset(h, n).rep_index != j:
                bad += 1
        out.append(_rec(f"group.coset_invariance_n{n}", "double coset index is B x K_n invariant", inputs, 0, bad, bad == 0))
    for N in (1, 2, 3):
        w = grp.classify_coset(grp.gamma(ctx, N), N + 1)
        out.append(_rec(f"group.disjoint_N{N}", "gamma_N coset misses B K_(N+1)", f"N={N}", N, w.rep_index, w.rep_index == N))
    return out


def suite_identities(ctx: Context, samples: int, rng: random.Random) -> list[dict]:
    out = []
    for name in sorted(grp.IDENTITIES):
        bad, last = 0, ""
        for _ in range(samples):
            params = grp.sample_identity_params(ctx, name, rng, N=rng.randint(1, 3))
            try:
                grp.verify_identity(ctx, name, *params)
            except AssertionError as exc:
                bad += 1
                last = str(exc)
        out.append(_rec(f"identities.{name}", f"matrix identity {name}", f"p={ctx.p} samples={samples}", 0, f"{bad} {last}".strip(), bad == 0))
    return out


def _ru2(ctx):
    return ind.InducedParams(ctx, CycScalar.from_rational(Fraction(-1, ctx.q)), ind.CharacterMu2.trivial(ctx), 1, ind.PARTIAL)


def _ru3(ctx):
    return ind.InducedParams(ctx, CycScalar.one(), ind.CharacterMu2(ctx, 1, 1), 1, ind.SUPPORTED)


def suite_lemmas(ctx: Context, samples: int, rng: random.Random) -> list[dict]:
    out = []
    cases = {"ru2": _ru2(ctx), "ru3": _ru3(ctx)}
    plan = [(k, c) for c in ("theta-identity", "lambda-nu", "hecke-two-values", "hecke-gamma-ratio") for k in cases]
    plan += [("ru2", "ru2-gamma"), ("ru3", "theta-vanishes")]
    for case, which in plan:
        name = f"lemmas.{which}.{case}"

        def run(case=case, which=which, name=name):
            r = ind.verify_lemma(which, cases[case])
            return _rec(name, which, f"p={ctx.p} case={case}", r.rhs, r.lhs, r.passed)

        out.append(_guard(name, which, case, run))
    return out


def suite_recursions(ctx: Context, samples: int, rng: random.Random, terms: int = 24) -> list[dict]:
    out = []
    q, nu, lam = sym.Q, sym.NU, sym.LAM
    c = sym.whittaker_seq(M=terms)
    ok = (nu - q**3) * c[0] == q**4 * c[1] and all(
        (nu + q**2 - lam) * c[i] + q * (nu + q**2 - q**3) * c[i + 1] == q**5 * c[i + 2] for i in range(terms - 1)
    )
    out.append(_rec("recursions.whittaker", "three-term recursion for c_i", f"terms={terms}", True, ok, ok))
    series = sym.zeta_series(c).coefficients()
    closed = sym.series_expand(sym.zeta_closed(), terms)
    ok = all(series.get(i, sym.K(0)) == closed[i] for i in range(terms + 1))
    out.append(_rec("recursions.closed_form", "closed form matches the recursion series", f"terms={terms}", True, ok, ok))
    alpha = (nu + q**2 - q**3) / q**4
    ok = c[1] - alpha * c[0] == -c[0] / q**2
    out.append(_rec("recursions.auxiliary", "c_1 - alpha c_0 = -q^-2 c_0", "symbolic", True, ok, ok))
    # d_i = c_(i-1) + q c_i,  d'_i = lam c_i - q^2 d_(i+1) for i >= 0
    cc = lambda i: c[i] if i >= 0 else sym.K(0)
    d = lambda i: cc(i - 1) + q * cc(i)
    dp = lambda i: lam * cc(i) - q**2 * d(i + 1)
    d_minus = nu * d(0) - q**4 * d(1)
    out.append(_rec("recursions.d_prime_minus_one", "d'_(-1) = 0 forced by the Hecke relation at i = 0", "symbolic", 0, d_minus, d_minus == 0))
    ok = all(nu * d(i) == dp(i - 1) + q**4 * d(i + 1) for i in range(1, 9))
    out.append(_rec("recursions.hecke_chain", "nu d_i = d'_(i-1) + q^4 d_(i+1)", "i=1..8", True, ok, ok))
    lam_sub = sym.lambda_from_nu()
    ok = sym.zeta_closed(nu, lam_sub, q) * sym.l_factor(1) == sym.zeta_factored()
    out.append(_rec("recursions.factorization", "denominator factors after substituting lambda(nu)", "symbolic", True, ok, ok))
    r = sym.alpha_from_ratio(1 / q**2, q, sym.ru1_ratio())
    out.append(_rec("recursions.ru1_alpha", "gamma ratio for the Steinberg case gives alpha = 0", "symbolic", 0, r.as_expr(), r == 0))
    return out


def suite_pipeline(ctx: Context, samples: int, rng: random.Random) -> list[dict]:
    out = []
    specs = {"ru2": cls.RU2(0), "ru3": cls.RU3(1), "irred_a2": cls.IrredPSUnramMu2(Fraction(2), 1, 1)}
    for key, spec in specs.items():
        name = f"pipeline.{key}"

        def run(spec=spec, name=name):
            r = cls.cross_check(spec, ctx.p, ctx.M)
            return _rec(name, "zeta integral of the newform equals the table L-factor", f"p={ctx.p} {cls.spec_label(spec)}", r.values.get("table_L"), r.values.get("closed"), r.passed)

        out.append(_guard(name, "pipeline", key, run))
    return out


def suite_monomial(ctx: Context, samples: int, rng: random.Random) -> list[dict]:
    out = []
    for N in (1, 2, 3):
        ok1 = sym.monomial_check("1", N, ctx.q)
        ok2 = not sym.monomial_check("inverse-L_E", N, ctx.q)
        out.append(_rec(f"monomial.N{N}", "only Z = L gives a monomial epsilon factor", f"q={ctx.q} N={N}", True, ok1 and ok2, ok1 and ok2))
    return out


def suite_estimates(ctx: Context, samples: int, rng: random.Random) -> list[dict]:
    out = []
    q = ctx.q
    for spec in cls.all_table_specs(q):
        inv = cls.invariants(spec, q)
        ok = sym.divides(inv.L, inv.bound)
        eps_half = inv.epsilon.evaluate(Fraction(1, q))
        name = f"estimates.{cls.spec_label(spec)}"
        out.append(_rec(name, f"L divides the {inv.bound_name} bound", f"q={q}", True, ok, ok))
        out.append(_rec(name + ".epsilon", "epsilon is 1 at s = 1/2", f"q={q}", 1, eps_half.as_expr(), eps_half == 1))
    return out


_RUNNERS = {
    "padic": suite_padic,
    "group": suite_group,
    "identities": suite_identities,
    "lemmas": suite_lemmas,
    "recursions": suite_recursions,
    "pipeline": suite_pipeline,
    "monomial": suite_monomial,
    "estimates": suite_estimates,
}


def run_suite(name: str, ctx: Context, samples: int, seed: int) -> list[dict]:
    if name not in _RUNNERS:
        raise KeyError(name)
    rng = random.Random(f"{seed}:{name}:{ctx.p}")
    return _RUNNERS[name](ctx, samples, rng)
