"""
Conductors, L-factors and epsilon factors across the generic cases
==================================================================

Prints the invariants table for q = 3, then rebuilds three of the rows from
scratch: eigenvalues in the induced model, then the zeta integral, then a
comparison with the table.
"""

from fractions import Fraction

from u21newform import classify as cls
from u21newform import symbolic as sym

q = 3

# %% The table
print(f"{'case':34s} {'N':>2s}  {'L':40s} bound")
for spec in cls.all_table_specs(q):
    inv = cls.invariants(spec, q)
    ok = sym.divides(inv.L, inv.bound)
    print(f"{cls.spec_label(spec):34s} {inv.N:2d}  {sym.render(inv.L):40s} {inv.bound_name} {'ok' if ok else 'VIOLATED'}")

# %% Reducible parameters are steered to their own rows
try:
    cls.invariants(cls.UnramifiedPS(Fraction(1, 9)), q)
except ValueError as exc:
    print("rejected:", exc)

# %% End-to-end cross-checks
for spec in (cls.RU2(0), cls.RU3(1), cls.IrredPSUnramMu2(Fraction(2), 1, 1)):
    r = cls.cross_check(spec, 3)
    print(f"{cls.spec_label(spec):28s} nu={r.values['nu']} lambda={r.values['lam']}  Z*L_E = {r.values['closed']}  {'pass' if r.passed else r.failures}")
