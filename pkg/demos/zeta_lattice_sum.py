"""
A lattice-sum zeta integral against its L-function product
==========================================================

Enumerate the lattice points of a case, sum the Whittaker values over them,
and compare the truncated series with the product of L-factors. Series live
on the half grid: x = q^(-s/2), y = q^(-w/2), u = q^(1/2).
"""

from unramified import evaluate_zeta, get_case, lattice_points, verify_zeta
from unramified.zeta import case_points, expected_l_product

case = get_case("MultiGL", n=2)
box = (4, 4)
pts = sorted(lattice_points(case, box))
print(f"{case.name}: {len(pts)} lattice points in box {box}")
print("first few:", pts[:6])

points = case_points(case, seed=1)
lhs = evaluate_zeta(case, points, box).series
rhs = expected_l_product(case, points, box)
print("lattice sum == L-product:", lhs == rhs)
print("even support only       :", lhs.is_even_supported())
print("coefficient of x^2      :", lhs.coefficient(2, 0).render())

# cases whose stated exponents needed a correction report it
for name, m, n, b in [("D5", None, None, (8, 0)), ("GlueGLGL", 2, 2, (4, 4))]:
    fixed = verify_zeta(get_case(name, m, n), b, trials=1)
    stated = verify_zeta(get_case(name, m, n, corrected=False), b, trials=1)
    print(f"{name}: corrected passes={fixed.passed}, stated passes={stated.passed}")
    for c in fixed.extra["corrections"]:
        print("   ", c)
