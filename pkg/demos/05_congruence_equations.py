"""
Congruence equations and their lifts
====================================

Equations in ``^`` (meet), ``*`` (relational product) and ``+`` (join) are
checked over all assignments of congruences. A failure in ``A`` is then
pushed into the matrix square, which has a transformer witness.
"""

from algcalc import catalog, check_equation, find_failure, lift_failure_check, parse_cong_equation

distributive = parse_cong_equation("a ^ (b + c) = (a ^ b) + (a ^ c)")
cert = check_equation(catalog.empty_set(3), distributive).witness
print({v: str(p) for v, p in cert.assignment.items()}, "separated at", cert.discrepancy)

# %%
# The same equation fails in the 9-element square under alpha (x) alpha.
report = lift_failure_check(cert)
print(report.lifted.algebra.size, report.lifted.discrepancy, bool(report.transformers), report.ok)

# %%
# The modular law needs a bigger set to fail.
modular = parse_cong_equation("a ^ (b + (a ^ c)) = (a ^ b) + (a ^ c)")
sets = [catalog.empty_set(n) for n in range(1, 5)]
m = find_failure(sets, modular)
print(m.algebra.name, {v: str(p) for v, p in m.assignment.items()})
print("lifted:", lift_failure_check(m).ok)

# %%
# Relational product does not commute on the 3-set either.
commute = check_equation(catalog.empty_set(3), parse_cong_equation("a * b = b * a")).witness
print(commute.discrepancy, lift_failure_check(commute).lifted.discrepancy)
