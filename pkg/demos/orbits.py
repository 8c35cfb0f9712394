"""
Orbits over a small prime field
===============================

Count the orbits of GL2 x GL2 on 2 x 2 matrices over F_3 and of the
similitude group on F_3^12. Each orbit is labelled by rank invariants.
"""

from unramified import check_stabilizers, enumerate_orbits

r = enumerate_orbits("GL2GL2_on_Mat1x4", 3)
print(f"GL2 x GL2 over F_3: {r.orbit_count} orbits")
for size, inv in sorted(zip(r.sizes, r.invariants)):
    print(f"  rank {inv}: {size} vectors")

# the larger census takes a few seconds
r = enumerate_orbits("GSp4GL3_on_Mat1x12", 3)
print(f"GSp4 x GL3 over F_3^12: {r.orbit_count} orbits, sizes {sorted(r.sizes)}")
print("invariant constant on orbits:", r.checks["invariant_constant_on_orbits"])
for name, inv in r.checks["representative_invariants"].items():
    print(f"  {name}: (rank tXjX, rank X) = {tuple(inv)}")

# sampled two-sided stabilizer check for one double-coset representative
s = check_stabilizers("coset-GSp4", "omega1", p=5, samples=50, seed=0)
print("omega1 stabilizer check passes:", s.passed)
