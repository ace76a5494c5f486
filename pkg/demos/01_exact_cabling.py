# # Cabling the unknot and the trefoil, exactly
#
# Colored Jones polynomials live in Z[v^(1/4), v^(-1/4)]. The package stores
# them as `QuarterLaurent` objects with integer coefficients, so nothing here
# is approximate.

from cable_slopes import cable_degree_per_n, cable_exact, degree_hi, quantum_integer, torus_knot, unknot

# The unknot's colored Jones polynomial is the quantum integer [n].

print("[3] =", quantum_integer(3))
print("[-3] =", quantum_integer(-3))

# A cable is a finite sum over k in S_n of twisted copies of the companion.
# The (2,3)-cable of the unknot is the trefoil; color 2 already shows the
# familiar top degree 9/2.

u = unknot()
j2 = cable_exact(u, (2, 3), 2)
print("J_T(2,3)(2) =", j2, " d+ =", degree_hi(j2))

# The degree engine never expands polynomials. It maximizes
# f(k) = -pk(qk+1) + d+[J_K(|2qk+1|)] and certifies when the maximum is
# attained once.

cert = cable_degree_per_n(u, (2, 3), 2)
print(cert)
print("implied degree:", cert.implied_degree)

# When the certificate is unique, the implied degree is the exact degree.
# Check that on cables of the trefoil.

trefoil = torus_knot(2, 3)
for p, q in [(13, 2), (-5, 3), (1, 2)]:
    agree = []
    for n in range(1, 11):
        c = cable_degree_per_n(trefoil, (p, q), n)
        d = degree_hi(cable_exact(trefoil, (p, q), n))
        agree.append(d == c.implied_degree if c.unique else d <= c.implied_degree)
    print(f"trefoil ({p},{q}): exact degree matches certificate for n=1..10: {all(agree)}")

# Degrees grow quadratically. A quasi-polynomial fit of the exact degrees
# of T(2,3) is an honest polynomial, 3n^2/2 - 3/2.

from cable_slopes import fit_quasipoly

fit = fit_quasipoly([(n, trefoil.degree(n)) for n in range(1, 25)], 2)
print("T(2,3):", fit.to_json_obj())
