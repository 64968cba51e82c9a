import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from u21newform.cyclotomic import CycScalar
from u21newform.padic import (
    Context,
    ExtElem,
    LocalElem,
    PrecisionError,
    additive_char_sum,
    context_new,
    residue_transversal,
)


@pytest.fixture(scope="module", params=[3, 5])
def ctx(request):
    return Context(request.param, 24)


def test_context_eps_is_least_nonresidue():
    assert context_new(3).eps == 2
    assert context_new(5).eps == 2
    assert context_new(7).eps == 3
    assert context_new(3).M == 24


@pytest.mark.parametrize("p", [2, 9, 1, 15])
def test_context_rejects_bad_primes(p):
    with pytest.raises(ValueError):
        Context(p, 24)


def test_context_rejects_low_precision():
    with pytest.raises(ValueError):
        Context(3, 3)
    Context(3, 4)


def test_conjugation_and_norm_examples():
    c = Context(3)
    x = c.ext(1, 1)
    assert x.conj().equals(c.ext(1, -1))
    n = x.norm()
    assert n.b.is_exact_zero
    assert n.equals(-1)
    y = c.ext(3, 1).shift(2)
    assert y.valuation() == 2
    assert x.trace().equals(2) and x.trace().b.is_exact_zero


def test_valuation_is_min_of_coordinates():
    c = Context(5)
    assert c.ext(25, 5).valuation() == 1
    assert c.ext(Fraction(1, 5), 1).valuation() == -1
    assert c.ext(0, 0).is_exact_zero


def test_absolute_values():
    c = Context(3)
    assert c.F(9).abs_value() == Fraction(1, 9)
    assert c.ext(3, 0).abs_value() == Fraction(1, 9)


def test_cancellation_tracks_precision():
    c = Context(3, 8)
    x = c.F(1)
    y = c.F(1 + 3**5)
    d = y - x
    assert d.valuation() == 5
    assert d.prec == 3
    # full cancellation leaves only a big-oh term, whose valuation is unknown
    z = x - c.F(1)
    assert z.is_big_oh or z.is_exact_zero


def test_precision_exhaustion_raises():
    c = Context(3, 6)
    z = c.F(1) - c.F(1 + 3**7)
    assert z.is_big_oh
    with pytest.raises(PrecisionError):
        z.valuation()
    with pytest.raises(PrecisionError):
        z.inverse()


def test_inverse_of_zero_raises():
    c = Context(3)
    with pytest.raises(ZeroDivisionError):
        c.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        c.ext(0, 0).inverse()


def test_to_fraction_round_trip():
    c = Context(5)
    for x in (Fraction(7, 25), Fraction(-3, 2), Fraction(125), Fraction(-1, 5)):
        assert c.F(x).to_fraction() == x


def test_thousand_random_pairs(ctx):
    rng = random.Random(1)
    for _ in range(1000):
        x = ExtElem(ctx.F(rng.randrange(1, 3**10)), ctx.F(rng.randrange(3**10))).shift(rng.randint(-4, 4))
        y = ExtElem(ctx.F(rng.randrange(3**10)), ctx.F(rng.randrange(1, 3**10))).shift(rng.randint(-4, 4))
        assert ((x * y) * y.inverse()).equals(x)
        assert (x * y).norm().equals(x.norm() * y.norm())
        assert x.norm().b.is_exact_zero and x.trace().b.is_exact_zero
        assert (x * y).valuation() == x.valuation() + y.valuation()
        s = x + y
        vx, vy = x.valuation(), y.valuation()
        if vx != vy:
            assert s.valuation() == min(vx, vy)
        elif not s.is_zero():
            assert s.valuation() >= min(vx, vy)


def test_conj_is_involution(ctx):
    rng = random.Random(2)
    for _ in range(100):
        x = ctx.ext(rng.randrange(-100, 100), rng.randrange(-100, 100))
        assert x.conj().conj().equals(x)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(-10**6, 10**6),
    st.integers(-10**6, 10**6),
    st.integers(1, 10**6),
    st.integers(-10**6, 10**6),
)
def test_field_axioms_hypothesis(a, b, c, d):
    ctx = Context(3, 30)
    x = ctx.ext(a, b)
    y = ctx.ext(c, d)
    assert (x + y - y).equals(x)
    assert (x * y).conj().equals(x.conj() * y.conj())
    if not y.is_zero():
        assert ((x / y) * y).equals(x)


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=10**4).filter(lambda f: f != 0))
def test_from_rational_valuation(x):
    ctx = Context(5)
    e = LocalElem.from_rational(ctx, x)
    v = 0
    n, dd = x.numerator, x.denominator
    while n % 5 == 0:
        n //= 5
        v += 1
    while dd % 5 == 0:
        dd //= 5
        v -= 1
    assert e.valuation() == v


def test_residue_transversal_examples():
    c = Context(3)
    reps = residue_transversal(c, "F", -2, -1)
    assert len(reps) == 3
    assert [r.a.to_fraction() for r in reps] == [0, Fraction(1, 9), Fraction(2, 9)]
    assert len(residue_transversal(c, "E", 0, 1)) == 9
    joint = len(residue_transversal(c, "E", -1, 0)) * len(residue_transversal(c, "F", -2, 0))
    assert joint == 81


@pytest.mark.parametrize("field,lo,hi", [("F", -1, 1), ("E", -1, 1), ("E", 2, 3), ("F", 0, 3)])
def test_residue_transversal_complete_and_distinct(ctx, field, lo, hi):
    reps = residue_transversal(ctx, field, lo, hi)
    size = ctx.q ** ((hi - lo) * (2 if field == "E" else 1))
    keys = sorted(r.residue_key(lo, hi) for r in reps)
    assert len(reps) == size
    assert len(set(keys)) == size
    assert any(r.is_zero() for r in reps)


def test_residue_transversal_rejects_empty_range():
    with pytest.raises(ValueError):
        residue_transversal(Context(3), "F", 1, 1)


def test_additive_char_sum(ctx):
    assert additive_char_sum(ctx, -1).is_zero()
    assert additive_char_sum(ctx, 0) == CycScalar.one()
    with pytest.raises(ValueError):
        additive_char_sum(ctx, -2)
