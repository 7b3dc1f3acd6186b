"""Points of X3 at random rational t.

For fixed t the X3 equations and kappa = delta are four polynomials in
(s1, s2, s3, lam).  Resultants eliminate lam, s1, s2 down to a polynomial in
s3; roots are carried back up through the intermediate stages and polished
by Newton's method on the full square system.
"""

from fractions import Fraction

import numpy as np

from ..errors import RootFindingError, SamplingError
from ..polycore import poly_gcd, roots_from_coeffs
from ..polycore.elimination import eliminate
from ..rng import task_rng
from .core import CharPoint
from .invariants import delta_poly, kappa_lambda_poly, x3_equations
from .systems import membership

UNKNOWNS = ("s1", "s2", "s3", "lam")
NEWTON_TOL = 1e-12
NEWTON_STEPS = 50
INEQ_MARGIN = 1e-6
_AVOID = (0.0, 2.0, -2.0)


def draw_t(rng, low=-3.0, high=3.0, max_den=64):
    """A rational t in [low, high] at distance >= 0.3 from 0 and +-2."""
    while True:
        t = Fraction(float(rng.uniform(low, high))).limit_denominator(max_den)
        if all(abs(float(t) - a) >= 0.3 for a in _AVOID):
            return t


def fixed_t_system(params, t):
    """The four polynomials in (s1, s2, s3, lam) at an exact value of t."""
    amb = (kappa_lambda_poly() - delta_poly()).substitute("t", t)
    return x3_equations(params) + [amb]


def _numeric_coeffs(p, var, assign):
    """Coefficients of p in ``var`` (low to high) with other variables set."""
    coeffs = np.array([c.evaluate(assign) for c in p.coeffs_in(var)], dtype=np.complex128)
    scale = np.max(np.abs(coeffs)) if len(coeffs) else 0.0
    if scale == 0:
        return None
    coeffs = coeffs.copy()
    coeffs[np.abs(coeffs) < 1e-13 * scale] = 0
    nz = np.flatnonzero(coeffs)
    return coeffs[: nz[-1] + 1]


def _residual(coeffs, z):
    powers = np.abs(z) ** np.arange(len(coeffs))
    return abs(np.polyval(coeffs[::-1], z)) / max(1.0, np.max(np.abs(coeffs) * powers))


def _solve_stage(polys, var, assign, check_tol=1e-6):
    """Values of ``var`` at which every stage polynomial vanishes."""
    specs = []
    for p in polys:
        if p.degree(var) <= 0:
            continue
        c = _numeric_coeffs(p, var, assign)
        if c is not None and len(c) > 1:
            specs.append(c)
    if not specs:
        return []
    specs.sort(key=len)
    try:
        cands = roots_from_coeffs(specs[0][::-1], strict=False)
    except ValueError:
        return []
    return [z for z in cands if all(_residual(c, z) < check_tol for c in specs[1:])]


class _NewtonSystem:
    def __init__(self, polys):
        self.funcs = [p.compile(UNKNOWNS) for p in polys]

    def residual(self, z):
        return max(abs(f(z)) / max(1.0, f.magnitude(z)) for f in self.funcs)

    def polish(self, z):
        z = np.asarray(z, dtype=np.complex128)
        for _ in range(NEWTON_STEPS):
            if self.residual(z) < NEWTON_TOL:
                return z, True
            F = np.array([f(z) for f in self.funcs])
            J = np.array([f.gradient(z) for f in self.funcs])
            try:
                step = np.linalg.solve(J, F)
            except np.linalg.LinAlgError:
                break
            if not np.all(np.isfinite(step)):
                break
            z = z - step
        return z, self.residual(z) < NEWTON_TOL


def elimination_order(params):
    """lam first (it enters the tangle equations linearly), then the s_j with
    the larger k_j, ending in s3.

    Every X3 point has s3 != 2, while the excluded line
    s1 = s2 = lam - 2, s3 = 2 solves all four equations for every t; ending
    in s3 keeps the two apart.
    """
    k1, k2, _ = params.ks
    return ("lam", "s2", "s1") if k2 >= k1 else ("lam", "s1", "s2")


def solve_at_t(params, t, order=None):
    """All isolated X3 solutions (s1, s2, s3, lam) found at the exact value t."""
    order = order or elimination_order(params)
    last = next(v for v in UNKNOWNS if v not in order)
    system = fixed_t_system(params, t)
    elim = eliminate(system, order, divide_common=True)
    finals = [p for p in elim.remaining if p.used_vars() == (last,)]
    if not finals:
        return [], {"stage": "elimination", "remaining": [p.to_text() for p in elim.remaining]}
    g = finals[0]
    for p in finals[1:]:
        g = poly_gcd(g, p)
    if g.degree(last) < 1:
        return [], {"stage": "gcd", "note": "final polynomials share no root"}
    coeffs = [float(c.constant_value()) for c in g.coeffs_in(last)]
    try:
        roots = roots_from_coeffs(coeffs[::-1], strict=False)
    except (ValueError, RootFindingError) as exc:
        return [], {"stage": "roots", "note": str(exc)}
    newton = _NewtonSystem(system)
    sols = []
    diag = {"final_var": last, "final_degree": g.degree(last), "candidates": 0, "rejected": 0}
    for root in roots:
        partial = [{last: root}]
        for var, stage in zip(reversed(order), reversed(elim.stages)):
            nxt = []
            for a in partial:
                for v in _solve_stage(stage, var, a):
                    nxt.append({**a, var: v})
            partial = nxt
        for a in partial:
            diag["candidates"] += 1
            z, ok = newton.polish([a[v] for v in UNKNOWNS])
            if not ok:
                diag["rejected"] += 1
                continue
            s1, s2, s3, lam = z
            if abs(s1 + s2 + s3 + 2 - 2 * lam) <= INEQ_MARGIN:
                diag["rejected"] += 1
                continue
            if all(np.max(np.abs(z - w)) > 1e-8 for w in sols):
                sols.append(z)
    sols.sort(key=lambda z: tuple(np.round([z[2].real, z[2].imag, z[3].real, z[3].imag], 9)))
    return sols, diag


def sample_X3(params, count, seed=0, tol=1e-8, per_draw=4, max_failures=8, diagnostics=None):
    """``count`` points of X3 from random rational t values.

    Draw i uses the stream ``task_rng(seed, i)``; at most ``per_draw``
    solutions are taken from each draw so the points spread over several
    values of t.  Every point satisfies the X3 equations to ``tol``, the
    inequations with margin 1e-6, and is a member of X3 only.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    points, draws = [], []
    failures = 0
    index = 0
    while len(points) < count:
        rng = task_rng(seed, index)
        t = draw_t(rng)
        sols, diag = solve_at_t(params, t)
        chosen = []
        for i in rng.permutation(len(sols)):
            s1, s2, s3, lam = sols[i]
            tc = complex(float(t))
            p = CharPoint(tc, s1, s2, s3, tc * lam)
            if membership(p, params, tol) == ["X3"]:
                chosen.append(p)
            if len(chosen) >= per_draw:
                break
        draws.append({"index": index, "t": str(t), "solutions": len(sols),
                      "taken": len(chosen), **diag})
        index += 1
        if not chosen:
            failures += 1
            if failures > max_failures:
                raise SamplingError(
                    f"no X3 points found in {failures} consecutive draws; last: {draws[-1]}"
                )
            continue
        failures = 0
        points.extend(chosen[: count - len(points)])
    if diagnostics is not None:
        diagnostics["draws"] = draws
    return points
