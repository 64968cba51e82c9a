"""
Hecke eigenvalues of newforms in an induced model
=================================================

A newform of Ind_B^G(mu1 x mu2) is stored as a formal sum of right translates of
the base function; operators append translates; evaluation reduces every
point to a double coset. This demo reproduces (nu, lambda) for two reducible
cases at p = 3.
"""

from fractions import Fraction

from u21newform import group as grp
from u21newform import induced as ind
from u21newform.padic import Context

ctx = Context(3)
q = ctx.q

# %% RU2 with trivial mu2: mu1(p) = -1/q, conductor 1.
# Its support off B K_1 is not known a priori, so Partial mode carries any
# value on a gamma-coset as an unknown U_j instead of assuming 0.
ru2 = ind.InducedParams(ctx, Fraction(-1, q), ind.CharacterMu2.trivial(ctx), 1, ind.PARTIAL)
f = ind.newform(ru2)
print("f(e) =", ind.evaluate(f), " f(zeta) =", ind.evaluate(f, grp.zeta(ctx)), " f(zeta^-1) =", ind.evaluate(f, grp.zeta(ctx, -1)))

# theta' raises the level: 1 + q translates.
g = ind.apply_theta_prime(f)
print(len(g), "translates at level", g.effective_level)
print("(theta' f)(e)       =", ind.evaluate(g), " expected q^2/a + q =", q * q / Fraction(-1, q) + q)
print("(theta' f)(gamma_1) =", ind.evaluate(g, grp.gamma(ctx, 1)), " expected q + 1 =", q + 1)

# %% The Hecke operator T as a linear form
# On a generic level-2 vector with g(e) = 1 the unknown gamma-value survives,
# giving the two-term expression k0 + k1 * U1.
generic = ind.newform(ind.InducedParams(ctx, Fraction(-1, q), ind.CharacterMu2.trivial(ctx), 2, ind.PARTIAL))
print("T applied to a generic level-2 vector at e:", ind.evaluate(ind.apply_hecke_T(generic)))

# %% Eigenvalues
nu, lam = ind.eigen_pair(ru2)
print("RU2: nu =", nu, " lambda =", lam)

# %% RU3: trivial mu1, mu2 of conductor 1.
# Here the newform vanishes off B K_1 (Supported mode) and (theta' f)(gamma_1)
# is 0 because gamma_1 misses B K_2.
mu2 = ind.CharacterMu2(ctx, 1, 1, 1)
print(mu2, " order", mu2.order)
ru3 = ind.InducedParams(ctx, 1, mu2, 1, ind.SUPPORTED)
g3 = ind.apply_theta_prime(ind.newform(ru3))
print("(theta' f)(gamma_1) =", ind.evaluate(g3, grp.gamma(ctx, 1)))
nu3, lam3 = ind.eigen_pair(ru3)
print("RU3: nu =", nu3, " lambda =", lam3)

# %% The same checks, packaged
for which in ind.LEMMAS:
    params = ru2 if which == "ru2-gamma" else ru3
    r = ind.verify_lemma(which, params)
    print(f"{which:18s} {'ok' if r.passed else 'MISMATCH'}  lhs={r.lhs}  rhs={r.rhs}")
