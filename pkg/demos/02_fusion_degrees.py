# # Degrees of 2-fusion knots
#
# For K(m1, m2) the top degree of the colored Jones polynomial is governed by
# the maximum of a quadratic function Q over a lattice polygon. The package
# has a case-by-case closed form for that maximum and a brute-force lattice
# search to check it.

from cable_slopes import FusionParams, delta_bruteforce, delta_closed, fusion_degree, region
from cable_slopes.fusion import fusion_case, jones_slope_coefficient, linear_term, special_forms

for mm in [(2, 1), (-1, 2), (-3, 1), (1, -2), (4, -2)]:
    p = FusionParams(*mm)
    same = all(delta_closed(p, n) == delta_bruteforce(p, n) for n in range(0, 30))
    print(f"K{mm}: region {region(p)}, case {fusion_case(p)}, closed form = lattice max for n<30: {same}")

# The degree is a quadratic quasi-polynomial. Fitting it to the exact
# degrees recovers the tabulated slope and linear coefficients.

k = fusion_degree((4, -2))
print(k.name, "period", k.qp.period)
print("  a =", k.qp.a.values, "table:", jones_slope_coefficient((4, -2)))
print("  b =", k.qp.b.values, "table:", [linear_term((4, -2), n) for n in range(k.qp.period)])

# The pretzel knots K(m, 1) give the family a = 5/2 + m + 1/(4m).

for m in range(2, 5):
    print(f"K({m},1): a = {fusion_degree((m, 1)).qp.a.values[0]}")

# Two columns of parameters are torus knots and are handled by the exact engine.

for mm in [(3, 0), (2, -1), (-1, 1), (1, -1)]:
    print(f"K{mm} = {special_forms(mm)}")
