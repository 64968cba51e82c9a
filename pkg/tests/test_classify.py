from fractions import Fraction

import pytest

from u21newform import classify as cls
from u21newform import induced as ind
from u21newform import symbolic as sym
from u21newform.padic import Context
from u21newform.symbolic import R, X, ZetaRational

F = Fraction


def zr(den):
    return ZetaRational(R(1), R(den))


def test_steinberg():
    inv = cls.invariants(cls.Steinberg(), 3)
    assert inv.N == 2
    assert inv.L == zr(1 - X / 9)
    assert inv.epsilon == ZetaRational.monomial(9, 2)


def test_ru3():
    inv = cls.invariants(cls.RU3(1), 3)
    assert inv.N == 1
    assert inv.L == zr((1 - X) ** 2)
    assert inv.epsilon == ZetaRational.monomial(3, 1)
    assert cls.invariants(cls.RU3(3), 3).N == 3


def test_unramified_ps():
    inv = cls.invariants(cls.UnramifiedPS(F(2)), 3)
    assert inv.N == 0
    assert inv.L == zr((1 - 2 * X) * (1 - X / 2) * (1 - X))
    assert inv.epsilon == ZetaRational.const(1)


def test_ru2():
    inv = cls.invariants(cls.RU2(0), 3)
    assert inv.N == 1 and inv.L == zr((1 + X / 3) * (1 - X))
    inv = cls.invariants(cls.RU2(2), 5)
    assert inv.N == 3 and inv.L == zr(1 + X / 5)


def test_irreducible_with_ramified_mu2():
    inv = cls.invariants(cls.IrredPSUnramMu2(F(2), 1, 1), 3)
    assert inv.N == 1 and inv.L == zr((1 - 2 * X) * (1 - X / 2))


def test_ramified_interface():
    assert cls.invariants(cls.RamifiedOrSupercuspidal("1", 4), 3).L == ZetaRational.const(1)
    inv = cls.invariants(cls.RamifiedOrSupercuspidal("L_E", 2), 3)
    assert inv.L == zr(1 - X) and inv.N == 2


@pytest.mark.parametrize(
    "spec",
    [
        cls.UnramifiedPS(F(0)),
        cls.UnramifiedPS(F(1, 9)),
        cls.UnramifiedPS(F(9)),
        cls.UnramifiedPS(F(-1, 3)),
        cls.UnramifiedPS(F(-3)),
        cls.IrredPSUnramMu2(F(1), 1, 1),
        cls.IrredPSUnramMu2(F(2), 0, 1),
        cls.IrredPSUnramMu2(F(2), 2, 1),
        cls.IrredPSUnramMu2(F(-1, 3), 1, 1),
        cls.RU3(0),
        cls.RU2(-1),
        cls.RamifiedOrSupercuspidal("x", 1),
        cls.RamifiedOrSupercuspidal("1", -1),
    ],
)
def test_rejected_specs(spec):
    with pytest.raises(ValueError):
        cls.invariants(spec, 3)


def test_unknown_spec_type():
    with pytest.raises(TypeError):
        cls.invariants(object(), 3)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_every_case_meets_bound_and_centre(q):
    for spec in cls.all_table_specs(q):
        inv = cls.invariants(spec, q)
        assert sym.divides(inv.L, inv.bound), spec
        assert cls.check_estimates(spec, q)
        assert inv.epsilon == sym.epsilon_factor(inv.N, q)
        assert inv.epsilon.evaluate(F(1, q)) == 1


def test_bound_examples():
    st = cls.invariants(cls.Steinberg(), 3)
    assert st.bound == zr((1 - X / 9) * (1 - X))
    ru3 = cls.invariants(cls.RU3(1), 3)
    assert ru3.bound == zr((1 - X) ** 2)
    assert sym.divides(ru3.L, zr((1 - X) ** 3))
    sc = cls.invariants(cls.RamifiedOrSupercuspidal("L_E", 1), 3)
    assert sc.bound == zr(1 - X)


def test_invariants_deterministic():
    a = cls.invariants(cls.RU2(1), 3)
    b = cls.invariants(cls.RU2(1), 3)
    assert (a.N, a.L, a.epsilon, a.bound) == (b.N, b.L, b.epsilon, b.bound)


def test_spec_labels_are_distinct():
    labels = [cls.spec_label(s) for s in cls.all_table_specs(3)]
    assert len(set(labels)) == len(labels)


@pytest.mark.parametrize("p", [3, 5])
def test_conductor_of_mu2(p):
    ctx = Context(p)
    assert cls.conductor_of_mu2(ind.CharacterMu2.trivial(ctx)) == 0
    assert cls.conductor_of_mu2(ind.CharacterMu2(ctx, 1, 1)) == 1
    gen = ind.CharacterMu2(ctx, 1, 1)
    assert gen.order == p + 1
    assert cls.conductor_of_mu2(ind.CharacterMu2(ctx, 2, 1, 1)) == 2
    assert cls.conductor_of_mu2(ind.CharacterMu2(ctx, 3, 0, p)) == 2


def test_conductor_of_mu2_detects_inconsistent_table():
    ctx = Context(3)

    # a value table that claims a deeper conductor than its values show
    class Lying(ind.CharacterMu2):
        @property
        def conductor(self):
            return 2

    liar = Lying(ctx, 2, 1, 0)
    with pytest.raises(cls.InconsistentTableError):
        cls.conductor_of_mu2(liar)


@pytest.mark.parametrize(
    "spec,p,nu,lam",
    [
        (cls.RU2(0), 3, 24, 32),
        (cls.RU2(0), 5, 120, 144),
        (cls.RU3(1), 3, 36, 48),
        (cls.RU3(1), 5, 150, 180),
        (cls.IrredPSUnramMu2(F(2), 1, 1), 3, F(81, 2), F(105, 2)),
    ],
)
def test_cross_check(spec, p, nu, lam):
    r = cls.cross_check(spec, p)
    assert r.passed, r.failures
    assert r.values["nu"] == nu and r.values["lam"] == lam


def test_cross_check_ru2_values():
    r = cls.cross_check(cls.RU2(0), 3)
    assert r.values["ratio"] == 4
    assert r.values["alpha"] == "1"
    assert sym.parse(r.values["closed"]) == zr((1 + X / 3) * (1 - X))


def test_cross_check_ru3_level_two():
    r = cls.cross_check(cls.RU3(2), 3)
    assert r.passed, r.failures


def test_cross_check_rejects_uncomputable():
    with pytest.raises(ValueError):
        cls.cross_check(cls.Steinberg(), 3)
