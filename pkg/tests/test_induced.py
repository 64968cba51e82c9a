import random
from fractions import Fraction

import pytest

from u21newform import group as grp
from u21newform import induced as ind
from u21newform.cyclotomic import CycScalar
from u21newform.induced import EvalResult, IndeterminateError
from u21newform.padic import Context


@pytest.fixture(scope="module", params=[3, 5])
def ctx(request):
    return Context(request.param, 24)


def ru2(ctx):
    return ind.InducedParams(ctx, Fraction(-1, ctx.q), ind.CharacterMu2.trivial(ctx), 1, ind.PARTIAL)


def ru3(ctx, c=1):
    return ind.InducedParams(ctx, 1, ind.CharacterMu2(ctx, c, 1, 1), c, ind.SUPPORTED)


# -- character of E^1 ---------------------------------------------------------------


def test_mu2_conductor_and_order(ctx):
    q = ctx.q
    assert ind.CharacterMu2.trivial(ctx).conductor == 0
    assert ind.CharacterMu2(ctx, 1, 1).conductor == 1
    assert ind.CharacterMu2(ctx, 1, 1).order == q + 1
    assert ind.CharacterMu2(ctx, 2, 0, 1).conductor == 2
    assert ind.CharacterMu2(ctx, 3, 0, q).conductor == 2
    assert ind.CharacterMu2(ctx, 3, 1, 0).conductor == 1
    with pytest.raises(ValueError):
        ind.CharacterMu2(ctx, 0, 1)


def test_mu2_is_multiplicative_and_trivial_deep(ctx):
    rng = random.Random(10)
    chi = ind.CharacterMu2(ctx, 3, 1, 2)
    for _ in range(60):
        x, y = grp.random_norm_one(ctx, rng), grp.random_norm_one(ctx, rng)
        assert chi(x * y) == chi(x) * chi(y)
        deep = grp.random_norm_one(ctx, rng, level=3)
        assert chi(deep) == 1
        v = chi(x)
        assert v ** chi.order == 1


def test_mu2_generator_values(ctx):
    chi = ind.CharacterMu2(ctx, 2, 1, 1)
    vals = chi.generator_values()
    assert vals["tame"] == CycScalar.zeta(ctx.q + 1)
    assert vals["wild"] == CycScalar.zeta(ctx.q)


# -- parameters --------------------------------------------------------------------------


def test_valid_setups(ctx):
    ru2(ctx)
    ru3(ctx)


def test_rejected_setups(ctx):
    q = ctx.q
    triv = ind.CharacterMu2.trivial(ctx)
    with pytest.raises(ValueError):
        ind.InducedParams(ctx, -q, triv, 1)
    with pytest.raises(ValueError):
        ind.InducedParams(ctx, 0, triv, 1)
    with pytest.raises(ValueError):
        ind.InducedParams(ctx, 2, triv, 0)
    with pytest.raises(ValueError):
        ind.InducedParams(ctx, 2, ind.CharacterMu2(ctx, 2, 0, 1), 1)
    with pytest.raises(ValueError):
        ind.InducedParams(ctx, 2, triv, 1, "sometimes")


# -- evaluation --------------------------------------------------------------------------


def test_base_values(ctx):
    q = ctx.q
    for a in (Fraction(-1, q), Fraction(1), Fraction(2), Fraction(7, 4)):
        p = ind.InducedParams(ctx, a, ind.CharacterMu2.trivial(ctx), 1, ind.SUPPORTED)
        f = ind.newform(p)
        assert ind.evaluate(f) == 1
        assert ind.evaluate(f, grp.zeta(ctx)) == Fraction(1, q * q) * a
        assert ind.evaluate(f, grp.zeta(ctx, -1)) == q * q / a


def test_supported_mode_vanishes_off_support(ctx):
    # gamma_0 shares the identity coset with gamma_n; the indices strictly inside miss it
    for n, offs in ((2, (1,)), (3, (1, 2))):
        f = ind.newform(ind.InducedParams(ctx, 2, ind.CharacterMu2.trivial(ctx), n, ind.SUPPORTED))
        assert grp.classify_coset(grp.gamma(ctx, 0), n).is_identity_coset
        for i in offs:
            assert not grp.classify_coset(grp.gamma(ctx, i), n).is_identity_coset
            assert ind.evaluate(f, grp.gamma(ctx, i)) == 0


def test_partial_mode_carries_unknowns(ctx):
    # level 1 has a single double coset, so unknowns first appear at level 2
    assert ind.evaluate(ind.newform(ru2(ctx)), grp.gamma(ctx, 0)).is_resolved()
    params = ind.InducedParams(ctx, 2, ind.CharacterMu2.trivial(ctx), 2, ind.PARTIAL)
    r = ind.evaluate(ind.newform(params), grp.gamma(ctx, 1))
    assert not r.is_resolved()
    assert r.unknowns() == ["U1"]
    with pytest.raises(IndeterminateError):
        r.value()
    known = ind.newform(params, known={1: CycScalar.from_rational(5)})
    assert ind.evaluate(known, grp.gamma(ctx, 1)) == 5


def test_eval_result_algebra():
    x = EvalResult(2, {1: CycScalar.from_rational(3)})
    y = EvalResult(1, {1: CycScalar.from_rational(-3), 2: CycScalar.one()})
    s = x + y
    assert s.const == 3 and s.unknowns() == ["U2"]
    assert x.scale(2) == EvalResult(4, {1: CycScalar.from_rational(6)})
    assert EvalResult(7) == 7


def _mu_of_borel(params, b):
    alpha, beta = grp.borel_alpha(b), grp.borel_beta(b)
    return params.a ** alpha.valuation() * params.mu2(beta)


@pytest.mark.parametrize("case", ["ru2", "ru3"])
def test_left_transformation_law(ctx, case):
    params = ru2(ctx) if case == "ru2" else ru3(ctx)
    g_fn = ind.apply_theta_prime(ind.newform(params))
    rng = random.Random(f"left:{ctx.p}:{case}")
    checked = 0
    for _ in range(200):
        i = rng.randint(0, 2)
        g = grp.random_borel(ctx, rng) * grp.gamma(ctx, i) * grp.random_k(ctx, rng, 2)
        b = grp.random_borel(ctx, rng)
        lhs = ind.evaluate(g_fn, b * g)
        rhs = ind.evaluate(g_fn, g).scale(CycScalar.from_rational(grp.delta_half(b)) * _mu_of_borel(params, b))
        assert lhs == rhs
        checked += 1
    assert checked == 200


@pytest.mark.parametrize("case", ["ru2", "ru3"])
def test_right_invariance(ctx, case):
    params = ru2(ctx) if case == "ru2" else ru3(ctx)
    g_fn = ind.apply_theta_prime(ind.newform(params))
    level = g_fn.effective_level
    rng = random.Random(f"right:{ctx.p}:{case}")
    for _ in range(200):
        i = rng.randint(0, level)
        g = grp.random_borel(ctx, rng) * grp.gamma(ctx, i)
        k = grp.random_k(ctx, rng, level)
        assert ind.evaluate(g_fn, g * k) == ind.evaluate(g_fn, g)


# -- operators ---------------------------------------------------------------------------


def test_theta_prime_at_identity(ctx):
    q = ctx.q
    for a in (Fraction(-1, q), Fraction(1), Fraction(3), Fraction(-2, 7)):
        params = ind.InducedParams(ctx, a, ind.CharacterMu2.trivial(ctx), 1, ind.SUPPORTED)
        g = ind.apply_theta_prime(ind.newform(params))
        assert len(g) == 1 + q
        assert g.effective_level == 2
        assert ind.evaluate(g) == q * q / CycScalar.coerce(a) + q


def test_theta_prime_ru2_gamma(ctx):
    g = ind.apply_theta_prime(ind.newform(ru2(ctx)))
    assert ind.evaluate(g, grp.gamma(ctx, 1)) == ctx.q + 1


def test_theta_prime_ru3_gamma_vanishes(ctx):
    for c in (1, 2):
        g = ind.apply_theta_prime(ind.newform(ru3(ctx, c)))
        assert grp.classify_coset(grp.gamma(ctx, c), c + 1).rep_index == c
        assert ind.evaluate(g, grp.gamma(ctx, c)) == 0


def test_prime_summand_count_and_membership(ctx):
    q = ctx.q
    g = ind.apply_theta_prime(ind.newform(ru3(ctx)))
    gp = ind.apply_prime(g)
    assert len(gp) == q**3 * len(g)
    for op in ind._prime_ops(ctx, 1):
        assert grp.is_in_subgroup(op, "K", 1)


def test_hecke_summand_count():
    ctx = Context(3)
    g = ind.apply_theta_prime(ind.newform(ru3(ctx)))
    assert len(ind.apply_hecke_T(g)) == (27 + 81) * len(g)


def test_hecke_two_value_form(ctx):
    # T on a generic level-(N+1) vector with value 1 at e: k0 + k1 * U_N
    q = ctx.q
    for a in (Fraction(2), Fraction(-1, q), Fraction(5, 3)):
        params = ind.InducedParams(ctx, a, ind.CharacterMu2.trivial(ctx), 2, ind.PARTIAL)
        r = ind.evaluate(ind.apply_hecke_T(ind.newform(params)))
        a_ = CycScalar.coerce(a)
        k0 = q * q * (a_ + 1 / a_) + q**3 - q * q
        k1 = q * q * (q * q - 1) / a_
        assert r == EvalResult(k0, {1: k1})


EIGEN = {
    ("ru2", 3): (24, 32),
    ("ru2", 5): (120, 144),
    ("ru3", 3): (36, 48),
    ("ru3", 5): (150, 180),
}


@pytest.mark.parametrize("case,p", sorted(EIGEN))
def test_eigen_pair_frozen(case, p):
    ctx = Context(p)
    params = ru2(ctx) if case == "ru2" else ru3(ctx)
    nu, lam = ind.eigen_pair(params)
    assert (nu, lam) == EIGEN[(case, p)]
    q = ctx.q
    a = params.a
    assert lam == (nu + q * q - q * q * a) * (1 + a / q)


def test_eigen_pair_irreducible_case():
    ctx = Context(3)
    params = ind.InducedParams(ctx, 2, ind.CharacterMu2(ctx, 1, 1, 1), 1, ind.SUPPORTED)
    nu, lam = ind.eigen_pair(params)
    assert (nu, lam) == (Fraction(81, 2), Fraction(105, 2))


def test_delta_theta_collapse():
    ctx = Context(3)
    params = ru2(ctx)
    f = ind.newform(params)
    g = ind.apply_theta_prime(f)
    lam = ind.evaluate(ind.apply_delta_theta(f)).value()
    rhs = ind.evaluate(ind.apply_prime(g)).value() + params.a * ind.evaluate(g).value()
    assert lam == rhs == 32


def test_eigen_pair_reports_indeterminate():
    ctx = Context(3)
    params = ind.InducedParams(ctx, 2, ind.CharacterMu2.trivial(ctx), 2, ind.PARTIAL)
    with pytest.raises(IndeterminateError, match="U"):
        ind.eigen_pair(params)


@pytest.mark.parametrize("which", ["theta-identity", "lambda-nu", "hecke-two-values", "hecke-gamma-ratio"])
@pytest.mark.parametrize("case", ["ru2", "ru3"])
def test_lemma_checks(ctx, which, case):
    params = ru2(ctx) if case == "ru2" else ru3(ctx)
    r = ind.verify_lemma(which, params)
    assert r.passed, (r.lhs, r.rhs, r.details)


def test_lemma_ru2_gamma_and_vanishing(ctx):
    r = ind.verify_lemma("ru2-gamma", ru2(ctx))
    assert r.passed and r.lhs == ctx.q + 1
    r = ind.verify_lemma("theta-vanishes", ru3(ctx))
    assert r.passed and r.details["rep_index"] == 1


def test_lemma_unknown_name():
    ctx = Context(3)
    with pytest.raises(ValueError):
        ind.verify_lemma("nope", ru3(ctx))


def test_lambda_nu_example_arithmetic():
    # 32 = (24 + 9 + 3)(1 - 1/9)
    assert Fraction(24 + 9 + 3) * (1 - Fraction(1, 9)) == 32
