"""
Which volumes occur
===================

A closure argument rules volumes out, constructions rule them in, and an
exhaustive search settles what is left when it fits in the budget.
"""

from latintrades import Budget, exhaustive_exists, feasible_closure, spectrum_certificates, spectrum_report

# necessary condition only: members may still fail to exist
n3 = feasible_closure(3, 40)
print("excluded for 3-(v,4):", n3.excluded)

# 3-(v,4) certificates from 15 upward, each one verified
rep = spectrum_certificates(40)
print("certified:", rep.certified())

# small cases by search: volume 5 has no 2-(v,3) trade, volume 6 does
for s in (5, 6):
    v = exhaustive_exists(2, 3, s, Budget(max_seconds=60))
    print(s, v.kind.value, v.nodes)

# combined report, as the command line tool prints it
rep = spectrum_report(2, 3, 12, Budget(max_seconds=30))
for s, v in sorted(rep.verdicts.items()):
    print(s, v.kind.value, v.method)
