"""
Consequence over a finite class
===============================

With a transformer ``tau`` a class of algebras induces a consequence
relation on terms. Deciding it means sweeping all assignments.
"""

from algcalc import ConsequenceQuery, TransformerTau, catalog, consequence_properties_check, entails
from algcalc.algebraize import shrink_premises
from algcalc.terms import X, Y, Var, app

b2 = catalog.boolean()
tau = TransformerTau(((X, app("one")),))

mp = ConsequenceQuery((b2,), tau, (X, app("imp", X, Y)), Y, 2)
print("modus ponens:", entails(mp))

# %%
# Without premises a bare variable does not follow; the countermodel sends
# x0 to 0.
print(entails(ConsequenceQuery((b2,), tau, (), X, 1)).witness)

# %%
# Extra premises can be dropped greedily while the consequence survives.
gamma = (app("or", X, Y), X, app("not", Var(2)), app("imp", X, Y))
print([str(t) for t in shrink_premises([b2], tau, gamma, Y, 3)])

# %%
# Reflexivity, cut and substitution on sampled instances.
report = consequence_properties_check([b2], tau, trials=50, seed=1)
print(report.to_dict())
