"""The finitely many lines of X2 and the t = 0 slice."""

import cmath

from pretzelchar.charvariety import (
    CharPoint,
    PretzelParams,
    adjudicate_X2,
    classify_t0,
    component_systems,
    enumerate_X2,
)

params = PretzelParams(1, 2, 2)
print(params.knot_name, [s.label for s in component_systems(params)])

entries = enumerate_X2(params)
print(len(entries), "X2 entries, expected", 2 * 3 * 2)
for e, verdict in zip(entries, adjudicate_X2(params)):
    s = ", ".join(f"{x:+.4f}" for x in e.s)
    res = verdict["max_residual"]
    print(f"  h={e.h}  s=({s})  {verdict['status']}" + ("" if res is None else f"  residual {res:.1e}"))

# t = 0: gamma = beta needs s1 = 1 (k1 = 1) and s2^2 - s2 - 1 = 0 (k2 = 2);
# P_4(s3) = -2 at s3 = sqrt(2)
s = (1, (1 + 5 ** 0.5) / 2, 2 ** 0.5)
e1, e2, e3 = sum(s), s[0] * s[1] + s[1] * s[2] + s[0] * s[2], s[0] * s[1] * s[2]
tau = cmath.sqrt(4 + e3 + 2 * e2 - e1 * e1)
print("t = 0 cases:", sorted(classify_t0(CharPoint(0, *s, tau), params)))
print("off the slice:", sorted(classify_t0(CharPoint(0, *s, tau + 1), params)))
