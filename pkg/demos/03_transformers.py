"""
Transformer witnesses
=====================

A witness is a family of unary equations ``delta_i(x) = epsilon_i(x)`` and
binary terms ``rho_j`` such that all the equations hold at ``rho_j(a, b)``
exactly when ``a = b``.
"""

from algcalc import TransformerRho, TransformerTau, catalog, check_transformers, matrix_power, search_transformers
from algcalc.terms import X, Y, app

b2 = catalog.boolean()
tau = TransformerTau(((X, app("one")),))
rho = TransformerRho((app("imp", X, Y), app("imp", Y, X)))
print("B2:", check_transformers(b2, tau, rho))

# %%
# Collapsing to identity equations fails: the left side always holds.
lattice2 = catalog.lattice()
print(check_transformers(lattice2, TransformerTau(((X, X),)), TransformerRho((app("and", X, Y),))))

# %%
# Bounded search finds a Boolean witness...
found = search_transformers(b2, 2, 1, 2)
print([f"{d} | {e}" for d, e in found[0].pairs], [str(r) for r in found[1].terms])

# %%
# ...but none for the lattice: every unary term function is the identity.
print("lattice:", search_transformers(lattice2, 4, 2, 2))

# %%
# The square of any algebra has a witness built from box and the arrows,
# even when the algebra itself is a bare set.
tau2, rho2 = catalog.box_witness()
for A in catalog.default_catalog():
    print(A.name, bool(check_transformers(matrix_power(A, 2).result, tau2, rho2)))
