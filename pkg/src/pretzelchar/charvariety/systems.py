"""Component systems of the irreducible character variety, point membership,
the X2 enumeration and the t = 0 classifier."""

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from ..chebyshev import first_kind_eval, first_kind_poly, omega_eval
from ..polycore import MultiPoly
from .core import ComponentSystem, PretzelParams
from .invariants import (
    LAM,
    S,
    T,
    TAU,
    ambient_equation,
    delta_poly,
    kappa_poly,
    tangle_coefficients,
    x3_equations,
    x3_excluded_locus,
)

EQ_TOL = 1e-8
INEQ_TOL = 1e-6


def scaled_value(poly, assignment):
    """|p(x)| divided by max(1, largest monomial magnitude at x)."""
    f = poly.compile()
    x = [assignment[v] for v in f.vars]
    return abs(f(x)) / max(1.0, f.magnitude(x))


# -- the systems ---------------------------------------------------------------

def _x0_systems(params):
    k1, k2, k3 = params.ks
    (_, b1, g1), (_, b2, g2), (_, b3, _) = tangle_coefficients(k1, k2, k3)
    amb = ambient_equation()
    x01 = ComponentSystem(
        "X0_1",
        [T, g1 + b1, g2 + b2, b3, amb],
        [TAU],
        notes="t = 0 with gamma_j = -beta_j (j = 1, 2), beta3 = 0 and tau != 0",
    )
    # cos is even, so a negative twist count uses |2k + 1|
    p1 = first_kind_poly(abs(2 * k1 + 1), "s1")
    p2 = first_kind_poly(abs(2 * k2 + 1), "s2")
    p3 = first_kind_poly(2 * k3, "s3")
    x02 = ComponentSystem(
        "X0_2",
        [T, TAU, delta_poly(), p1 - p2, p2 - p3, amb],
        [p1 + 2],
        notes=(
            "t = tau = 0, s_j = 2cos(theta_j) with real theta_j and "
            "cos((2k1+1)theta1) = cos((2k2+1)theta2) = cos(2 k3 theta3) != -1; "
            "the last cosine is read as cos(2*k3*theta3)"
        ),
        extra={
            "real_cosines": ["s1", "s2", "s3"],
            "exclusion": "!= -1",
            "alternative_inequations": {"!= +-1": [p1 + 2, p1 - 2]},
        },
    )
    return [x01, x02]


def _x1_systems(params):
    (_, b1, g1), (_, b2, g2), (_, b3, g3) = tangle_coefficients(*params.ks)
    s1, s2, s3 = S
    amb = ambient_equation()
    t2 = T**2
    note = (
        "beta3 = 0 on the tangle-3 side (verified by reconstructing representations); "
        "the alternative gamma3 = beta3 is kept in extra and fails the relations"
    )
    x11 = ComponentSystem(
        "X1_1",
        [g2 - b2, b3, t2 - s1 - 2, t2 - s2 - s3, amb],
        notes="X2 = X3^-1: " + note,
        extra={"alternative_equations": [g2 - b2, g3 - b3, t2 - s1 - 2, t2 - s2 - s3, amb]},
    )
    x12 = ComponentSystem(
        "X1_2",
        [g1 - b1, b3, t2 - s2 - 2, t2 - s3 - s1, amb],
        notes="X3 = X1^-1: " + note,
        extra={"alternative_equations": [g3 - b3, g1 - b1, t2 - s2 - 2, t2 - s3 - s1, amb]},
    )
    x13 = ComponentSystem(
        "X1_3",
        [t2 - 4, s3 - 2, g1 - b1, g2 - b2, amb],
        notes="t = +-2, s3 = 2, gamma_j = beta_j (j = 1, 2)",
    )
    return [x11, x12, x13]


def x2_label(h):
    return "X2({},{},{})".format(*h)


class X2Entry(NamedTuple):
    h: tuple
    s: tuple
    conic: MultiPoly
    exact: list
    exact_residuals: tuple
    endpoint: bool


def _x2_values(params):
    k1, k2, k3 = params.ks
    c1 = [2 * math.cos((2 * h + 1) * math.pi / (2 * k1 + 1)) for h in range(k1 + 1)]
    c2 = [2 * math.cos((2 * h + 1) * math.pi / (2 * k2 + 1)) for h in range(k2 + 1)]
    c3 = [2 * math.cos(h * math.pi / k3) for h in range(k3)]
    return c1, c2, c3


def _radius(values, v):
    gaps = [abs(v - w) for w in values if abs(v - w) > 1e-12]
    return 0.5 * min(gaps) if gaps else 0.5


def _exact_residuals(params, s):
    k1, k2, k3 = params.ks
    return (
        abs(omega_eval(k1 + 1, s[0]) - omega_eval(k1, s[0])),
        abs(omega_eval(k2 + 1, s[1]) - omega_eval(k2, s[1])),
        abs(omega_eval(k3, s[2])),
    )


def enumerate_X2(params, tol=1e-10):
    """One entry per (h1, h2, h3), in lexicographic order.

    ``conic`` is kappa - delta with the s-values substituted (float
    coefficients stored exactly); ``exact`` is the condition system
    {gamma1 - beta1, gamma2 - beta2, beta3}; ``endpoint`` marks the indices
    where that system does not vanish at the enumerated s-values.
    """
    (_, b1, g1), (_, b2, g2), (_, b3, _) = tangle_coefficients(*params.ks)
    exact = [g1 - b1, g2 - b2, b3]
    c1, c2, c3 = _x2_values(params)
    amb = ambient_equation()
    out = []
    for h1, v1 in enumerate(c1):
        for h2, v2 in enumerate(c2):
            for h3, v3 in enumerate(c3):
                s = (v1, v2, v3)
                conic = amb.substitute_many({"s1": v1, "s2": v2, "s3": v3})
                res = _exact_residuals(params, s)
                out.append(X2Entry((h1, h2, h3), s, conic, exact, res, max(res) >= tol))
    return out


def conic_taus(entry, t):
    """The two tau values on the entry's conic over a given t."""
    e1 = sum(entry.s)
    s1, s2, s3 = entry.s
    e2 = s1 * s2 + s2 * s3 + s3 * s1
    e3 = s1 * s2 * s3
    delta = 4 + e3 + 2 * e2 - e1**2
    b = -t * (e1 + 2)
    c = t * t * (e2 + 4) - delta
    disc = np.sqrt(complex(b * b - 4 * c))
    return ((-b + disc) / 2, (-b - disc) / 2)


def _x2_systems(params):
    c1, c2, c3 = _x2_values(params)
    amb = ambient_equation()
    out = []
    for e in enumerate_X2(params):
        h = e.h
        out.append(ComponentSystem(
            x2_label(h),
            list(e.exact) + [amb],
            notes="s-values 2cos((2h1+1)pi/(2k1+1)), 2cos((2h2+1)pi/(2k2+1)), 2cos(h3 pi/k3); "
                  "a conic in (t, tau)",
            selection=[
                ("s1", complex(e.s[0]), _radius(c1, e.s[0])),
                ("s2", complex(e.s[1]), _radius(c2, e.s[1])),
                ("s3", complex(e.s[2]), _radius(c3, e.s[2])),
            ],
            extra={
                "h": list(h),
                "s_values": list(e.s),
                "endpoint": e.endpoint,
                "status": "unverified" if e.endpoint else "exact",
            },
        ))
    return out


def _x3_system(params):
    return ComponentSystem(
        "X3",
        [T * LAM - TAU] + x3_equations(params) + [ambient_equation()],
        [T, x3_excluded_locus()],
        notes="lam = tau / t; the principal one-dimensional component",
    )


@lru_cache(maxsize=32)
def _systems_cached(ks):
    params = PretzelParams(*ks)
    return tuple(
        _x0_systems(params) + _x1_systems(params) + _x2_systems(params) + [_x3_system(params)]
    )


def component_systems(params):
    """All component systems for the knot, X0_1 first and X3 last."""
    return list(_systems_cached(params.ks))


# -- membership ----------------------------------------------------------------

def _real_cosine(z, tol):
    return abs(z.imag) < tol and abs(z.real) <= 2 + tol


def satisfies(system, point, tol=EQ_TOL, ineq_tol=INEQ_TOL):
    assign = point.assignment()
    for var, center, radius in system.selection:
        if abs(assign[var] - center) >= radius:
            return False
    for var in system.extra.get("real_cosines", ()):
        if not _real_cosine(assign[var], tol):
            return False
    needs_lam = any("lam" in p.used_vars() for p in system.equations + system.inequations)
    if needs_lam and "lam" not in assign:
        return False
    if any(scaled_value(p, assign) >= tol for p in system.equations):
        return False
    return all(abs(p.evaluate(assign)) > ineq_tol for p in system.inequations)


def membership(point, params, tol=EQ_TOL, ineq_tol=INEQ_TOL):
    """Labels of every component system satisfied at the point."""
    return [s.label for s in component_systems(params) if satisfies(s, point, tol, ineq_tol)]


# -- the t = 0 classifier -------------------------------------------------------

def classify_t0(point, params, tol=EQ_TOL):
    """Which of the three t = 0 cases hold at the point, as a set of 1, 2, 3.

    1: gamma_j = beta_j (j = 1, 2) and v3^(2k3) = -1, tested as P_{2k3}(s3) = -2;
    2: gamma_j = -beta_j (j = 1, 2) and beta3 = 0;
    3: delta = 0 and s_j = 2cos(theta_j), theta_j real, with
       cos((2k1+1)theta1) = cos((2k2+1)theta2) = cos(2k3 theta3) != +-1.
    Points off kappa = delta give the empty set.  The real-theta condition is
    only part of case 3; case 1 is tested over the complex numbers.
    """
    if abs(point.t) > tol:
        raise ValueError("classify_t0 needs t = 0")
    k1, k2, k3 = params.ks
    assign = point.assignment()
    assign["t"] = 0j
    if scaled_value(kappa_poly() - delta_poly(), assign) >= tol:
        return frozenset()
    s1, s2, s3 = point.s
    d1 = [omega_eval(k + 1, s) - omega_eval(k, s) for k, s in ((k1, s1), (k2, s2))]
    p1 = [omega_eval(k + 1, s) + omega_eval(k, s) for k, s in ((k1, s1), (k2, s2))]
    beta3 = omega_eval(k3, s3)
    found = set()
    if all(abs(x) < tol for x in d1) and abs(first_kind_eval(2 * k3, s3) + 2) < tol:
        found.add(1)
    if all(abs(x) < tol for x in p1) and abs(beta3) < tol:
        found.add(2)
    delta = scaled_value(delta_poly(), assign)
    if delta < tol and all(_real_cosine(s, tol) for s in point.s):
        c1 = first_kind_eval(abs(2 * k1 + 1), s1.real)
        c2 = first_kind_eval(abs(2 * k2 + 1), s2.real)
        c3 = first_kind_eval(2 * k3, s3.real)
        if abs(c1 - c2) < tol and abs(c2 - c3) < tol and abs(abs(c1) - 2) > tol:
            found.add(3)
    return frozenset(found)
