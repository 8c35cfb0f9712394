"""
Characters of dual groups, two ways
===================================

Evaluate an irreducible character at a random rational Satake point, once by
the Weyl ratio and once by summing over the weight multiset. Then check the
GL product rule on a small case.
"""

from unramified import GL, Sp, char_value, random_satake, weight, weight_multiset
from unramified.rootchar import character_by_weights

# a GL(3) point and the representation with highest weight (2, 1, 0)
pt = random_satake(GL(3), seed="demo")
hw = weight(GL(3), 2, 1, 0)
print("Satake values:", [str(v) for v in pt.values])
print("Weyl ratio   :", char_value(hw, pt))
print("weight sum   :", character_by_weights(hw, pt).rational())

# the multiset has dimension 8 (the adjoint, up to a determinant twist)
print("dimension    :", sum(m for _, m in weight_multiset(hw)))

# Sym^2 of the standard representation of Sp(4) has dimension 10
sp = weight(Sp(2), 2, 0)
print("dim Sym^2 std of Sp(4):", sum(m for _, m in weight_multiset(sp)))

# Pieri for GL(3): s_(1) * s_(k) = s_(k+1) + s_(k,1)
for k in range(4):
    lhs = char_value(weight(GL(3), 1), pt) * char_value(weight(GL(3), k), pt)
    rhs = char_value(weight(GL(3), k + 1), pt) + (char_value(weight(GL(3), k, 1), pt) if k else 0)
    print(f"k={k}: product rule holds: {lhs == rhs}")
