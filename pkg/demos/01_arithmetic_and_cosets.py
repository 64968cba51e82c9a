"""
Truncated p-adic arithmetic and the double cosets B gamma_i K_n
================================================================

Walks from single field elements up to the coset decomposition that decides
where an induced newform can be evaluated. Run with ``python3 demos/01_arithmetic_and_cosets.py``.
"""

import random
from fractions import Fraction

from u21newform import group as grp
from u21newform.padic import Context, additive_char_sum, residue_transversal

# %% Field elements
# Everything lives over Q_3 with 24 digits of precision. E = F[sqrt(eps)],
# and eps is the least non-residue mod p (2 here).
ctx = Context(3, 24)
x = ctx.ext(1, 1)
print("eps =", ctx.eps)
print("x =", x, " conj(x) =", x.conj(), " N(x) =", x.norm())

# Cancellation costs precision rather than producing wrong digits.
y = ctx.F(1 + 3**20) - ctx.F(1)
print("1 + 3^20 - 1 =", y, " (valuation", y.valuation(), ")")

# Rationals survive a round trip through the 3-adic digits.
print("-7/9 ->", ctx.F(Fraction(-7, 9)).to_fraction())

# %% Residue transversals and the additive character
reps = residue_transversal(ctx, "E", -1, 0)
print(len(reps), "representatives of p_E^-1 / o_E")
print("sum of psi_E over them:", additive_char_sum(ctx, -1))

# %% Group elements
# u, uhat, the torus t(a), zeta = diag(p, 1, 1/p) and gamma_i = uhat(p^i, 0).
g = grp.u(ctx, x, 2) * grp.gamma(ctx, 1) * grp.zeta(ctx, -1)
print("g in G:", grp.is_in_G(g))
print("t_2 in K_2:", grp.is_in_subgroup(grp.t_n(ctx, 2), "K", 2))
print("gamma_1 in K_2:", grp.is_in_subgroup(grp.gamma(ctx, 1), "K", 2))

# %% Where does an element sit in B \ G / K_n?
# classify_coset returns a verified witness g = b * gamma_i * k. Index n
# means the identity coset B K_n; gamma_i and gamma_(n-i) give the same coset,
# so the reported index is always max(i, n - i).
n = 3
for i in range(n + 1):
    w = grp.classify_coset(grp.gamma(ctx, i), n)
    print(f"gamma_{i} at level {n}: coset index {w.rep_index}, invariant {grp.coset_invariant(grp.gamma(ctx, i), n)}")

# A random element of B gamma_1 K_3, scrambled on both sides, stays put.
rng = random.Random(0)
h = grp.random_borel(ctx, rng) * grp.gamma(ctx, 1) * grp.random_k(ctx, rng, n)
h2 = grp.random_borel(ctx, rng) * h * grp.random_k(ctx, rng, n)
print("scrambled index:", grp.classify_coset(h, n).rep_index, grp.classify_coset(h2, n).rep_index)

# %% B K_n membership
# gamma_N is not in B K_(N+1); that disjointness is what kills (theta' f)(gamma_N)
# in the RU3 computation of demo 02.
for N in (1, 2):
    print(f"reduce_bk(gamma_{N}, {N + 1}) ->", grp.reduce_bk(grp.gamma(ctx, N), N + 1))
b, k = grp.iwasawa_k0(g)
print("Iwasawa: g = b k reconstructs:", (b * k).equals(g), " delta^(1/2)(b) =", grp.delta_half(b))

# %% A proof identity
print("t_2 gamma_1 t_2 = u(-1/p, 0):", grp.verify_identity(ctx, "I4"))
