# # Sweeping the fusion family
#
# `verify_grid` builds every K(m1, m2) in a box, picks cables near the
# admissibility thresholds, computes their quasi-polynomials and checks
# two things: the linear term is never positive, and every Jones slope is
# among the candidate boundary slopes.

import time
from collections import Counter

from cable_slopes import GridSpec, golden_knot, verify_grid

t0 = time.perf_counter()
reports = verify_grid(GridSpec(m1s=range(-3, 4), m2s=range(-3, 4)),
                      extra_bases=[golden_knot(g) for g in ("8_20", "9_43", "9_44")])
print(f"{len(reports)} reports in {time.perf_counter() - t0:.1f}s")
print(Counter((r.kind, r.passed) for r in reports))

# Cable reports record the regime and the leading coefficient.

for r in reports[:6]:
    print(r.knot, sorted(r.js), r.regime, r.extra.get("A"), r.passed)

# With `select="membership"` the listed per-region conditions choose the
# cables instead. One of them admits a cable whose top summands tie.

loose = verify_grid(GridSpec(m1s=(-1,), m2s=(4,), qs=(3,), select="membership"))
for r in loose:
    if not r.passed:
        print("failed:", r.knot, r.error)
