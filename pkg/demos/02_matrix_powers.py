"""
Matrix powers
=============

The n-th matrix power lives on n-tuples. It is presented here by the
coordinatewise operations plus ``splice`` and ``shift``; the square also
carries ``arrow``, ``backarrow`` and ``box``.
"""

import numpy as np

from algcalc import catalog, con, matrix_power
from algcalc.matrix_power import TermTuple, separation_formula_holds, is_generated_operation, m_t_table, verify_lambda_embedding
from algcalc.terms import Var, app

b2 = catalog.boolean()
M = matrix_power(b2, 2)
print(M.result)
print("box <1,0> =", M.decode(M.result.apply("box", M.encode((1, 0)))))

# %%
# Any tuple of terms defines an operation on tuples. Here k = 2 and each
# coordinate reads from the four coordinates of two input pairs.
t = TermTuple((app("and", Var(0), Var(3)), app("imp", Var(2), Var(1))), 2)
table = m_t_table(b2, 2, t)
print(table)

# %%
# The finite presentation already produces it: some term of depth <= 3
# over the square's signature has exactly this table.
print("generated:", is_generated_operation(M, table, 3))

# %%
# Adding it as a basic operation leaves the congruence lattice alone.
before = [str(p) for p in con(M.result)]
after = [str(p) for p in con(M.result.expand("mt", table))]
print(before == after, len(before))

# %%
# arrow and backarrow together separate distinct pairs, and box fixes an
# arrow value exactly when its arguments agree.
print("formula holds:", separation_formula_holds(M))

# %%
# alpha -> alpha (x) alpha carries congruences of A to congruences of the
# square and respects meet, product and join.
report = verify_lambda_embedding(catalog.empty_set(3))
print(report.checks, report.congruences)
print(np.asarray(M.result.op("arrow")))
