# # Closed forms for cables
#
# Given the degree quasi-polynomial of a knot K with constant slope, the
# degree of the (p, q)-cable is again a quasi-polynomial when p/q stays away
# from the slope of K. `cable_quasipoly` finds the stable maximizer pattern,
# writes the closed form and cross-checks it against a fit of the per-color
# engine output.

from cable_slopes import admissible, cable_quasipoly, golden_knot, m_constants

k = golden_knot("8_20")
sc = m_constants(k.qp)
print("8_20: a =", sc.a_const, " M1 =", sc.M1, " max(0, M2) =", sc.M2max)
print("thresholds", sc.thresholds())

for pq in [(1, 2), (5, 2), (7, 2), (-7, 3), (11, 3)]:
    verdict = admissible(sc, pq)
    if not verdict:
        print(pq, "not admissible")
        continue
    res = cable_quasipoly(k, pq)
    qp = res.qp
    print(f"{pq}: regime {res.regime}, A = {res.A}, b = {qp.b.expanded(qp.period)}, verified = {res.verified}")

# On the left the slope gets multiplied by q^2 and the linear term stays
# negative. On the right the cable behaves like the torus knot T(p, q), so
# A = pq/4 and the linear term vanishes.
