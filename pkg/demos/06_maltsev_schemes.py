"""
Chain schemes from a witness
============================

A transformer witness valid in the variety yields a chain of terms
``t_1..t_k`` linking ``x`` to ``y`` through the equations. The chain is
read off a congruence derivation in the free algebra on two generators.
"""

from algcalc import MaltsevScheme, TransformerRho, TransformerTau, catalog, derive_maltsev_scheme, maltsev_scheme_check, matrix_power
from algcalc.terms import X, Y, Var, app

b2 = catalog.boolean()
tau = TransformerTau(((X, app("one")),))
rho = TransformerRho((app("imp", X, Y), app("imp", Y, X)))

scheme = derive_maltsev_scheme(b2, tau, rho)
print("k =", len(scheme), [str(t) for t in scheme.chain])
print("checks:", bool(maltsev_scheme_check(b2, scheme)))

# %%
# A one-step scheme written by hand: x2, x3 are the two implications and
# x = ((x -> y) and (y -> x)) <-> y.
def iff(p, q):
    return app("and", app("imp", p, q), app("imp", q, p))


hand = MaltsevScheme(tau, rho, (iff(app("and", Var(2), Var(3)), Y),))
print("hand scheme:", bool(maltsev_scheme_check(b2, hand)))

# %%
# On the square of a bare set the scheme has to use the structural
# operations, so it is far from idempotent.
sq = matrix_power(catalog.empty_set(3), 2).result
s2 = derive_maltsev_scheme(sq, *catalog.box_witness())
print([str(t) for t in s2.chain], bool(maltsev_scheme_check(sq, s2)))
