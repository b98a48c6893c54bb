"""
Congruence lattices of small algebras
=====================================

Build a few finite algebras, list their congruences and trace how a pair
ends up inside a generated congruence.
"""

from algcalc import catalog, con, theta, extract_chain

# %%
# A three-element set with no operations: every equivalence relation is a
# congruence, so Con is the partition lattice with five members.
set3 = catalog.empty_set(3)
lattice = con(set3)
for i, p in enumerate(lattice):
    print(i, p)
print("covers:", lattice.covers())

# %%
# The 3-cycle has only the two trivial congruences: collapsing any pair
# forces everything together.
print([str(p) for p in con(catalog.cycle3())])

# %%
# On the three-element chain, collapsing the bottom pair leaves the top
# alone while collapsing the ends collapses everything.
chain3 = catalog.lattice(3)
print(theta(chain3, [(0, 1)]), theta(chain3, [(0, 2)]))

# %%
# Every pair of a generated congruence comes with a derivation: a path of
# unary polynomial images of the generators. Replaying it checks each step.
derivation = extract_chain(chain3, [(0, 2)], 1, 2)
for step in derivation.steps:
    print(step.source, "->", step.target, "via", step.witness.term, step.witness.constants)
print("replays:", derivation.replay(chain3, [(0, 2)]))
