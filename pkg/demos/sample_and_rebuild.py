"""Draw points on the principal component, rebuild SL(2,C) matrices from
their traces and check the knot relations and the peripheral data."""

import numpy as np

from pretzelchar.apoly import b3_traces_closed, b3_traces_direct, longitude_trace_residual, peripheral_pair
from pretzelchar.charvariety import (
    PretzelParams,
    membership,
    point_invariants,
    representation_from_point,
    sample_X3,
)

params = PretzelParams(1, 1, 1)
points = sample_X3(params, 8, seed=3)

for p in points:
    rep, res = representation_from_point(p, params)
    inv = point_invariants(p)
    pp = peripheral_pair(rep)
    gap = np.max(np.abs(np.array(b3_traces_closed(p, params)) - b3_traces_direct(rep)))
    print(f"t={p.t.real:+.3f}  lam={p.lam:.3f}  on {membership(p, params)}")
    print(f"    relations {res:.1e}  kappa-delta {abs(inv.kappa - inv.delta):.1e}")
    print(f"    u={pp.u:.4f} w={pp.w:.4f}  commutator {pp.commutator:.1e}  "
          f"B3 traces {gap:.1e}  trace identity {longitude_trace_residual(pp, rep):.1e}")

# the two reconstructions (either root of the nu quadratic) are conjugate:
# the same character, so the same relation residual
p = points[0]
a = representation_from_point(p, params)[1]
b = representation_from_point(p, params, other_root=True)[1]
print("other root:", f"{a:.1e} vs {b:.1e}")
