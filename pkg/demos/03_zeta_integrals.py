"""
Zeta integrals from Hecke eigenvalues
=====================================

The newform's Whittaker values c_i at zeta^i obey a three-term recursion in
(nu, lambda, q). Summing them gives the zeta integral. Everything here is
exact, in the field Q(nu, lambda, a, q).
"""

from fractions import Fraction

from u21newform import symbolic as sym
from u21newform.symbolic import A, NU, Q

# %% Whittaker coefficients
c = sym.whittaker_seq(M=3)
for i, ci in enumerate(c):
    print(f"c_{i} =", ci.as_expr())

# %% Closed form versus the series
Z = sym.zeta_closed()
print("Z =", sym.render(Z))
series = sym.zeta_series(sym.whittaker_seq(M=24)).coefficients()
expanded = sym.series_expand(Z, 24)
print("first 24 coefficients agree:", all(series.get(i, sym.K(0)) == expanded[i] for i in range(24)))

# %% Substituting lambda(nu) makes the denominator split
lam = sym.lambda_from_nu()
print("lambda(nu) =", lam.as_expr())
full = sym.zeta_closed(NU, lam, Q) * sym.l_factor(1)
print("Z * L_E(s, 1) =", sym.render(full))
print("equals the factored form:", full == sym.zeta_factored(NU, A, Q))

# %% Plugging in the eigenvalues from demo 02
for name, nu, a in (("RU2", 24, Fraction(-1, 3)), ("RU3", 36, Fraction(1))):
    print(name, sym.render(sym.zeta_factored(nu, a, 3)))

# %% Epsilon factors and the functional equation
# If Z were L / L_E(s, 1) the would-be epsilon factor picks up a non-monomial
# ratio; only Z = L is consistent.
for N in (1, 2):
    print(f"N={N}: candidate 1 monomial? {sym.monomial_check('1', N, 3)};"
          f" candidate L/L_E monomial? {sym.monomial_check('inverse-L_E', N, 3)}")
eps = sym.epsilon_factor(2, 3)
print("epsilon =", sym.render(eps), " at X = 1/3:", eps.evaluate(Fraction(1, 3)).as_expr())

# %% Steinberg: the gamma ratio that forces a single L-factor
r = sym.ru1_ratio()
print("ratio =", r.as_expr(), " alpha =", sym.alpha_from_ratio(1 / Q**2, Q, r).as_expr())
print("at q = 3:", sym.ru1_ratio(3).as_expr())

# %% Canonical text round-trips
text = sym.render(sym.zeta_factored(24, Fraction(-1, 3), 3))
print(text, "->", sym.parse(text) == sym.zeta_factored(24, Fraction(-1, 3), 3))
