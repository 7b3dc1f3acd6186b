"""The symmetric functions of (s1, s2, s3) and the scalars delta, kappa, lambda, r.

Symbolic versions are MultiPolys in the ambient variables; ``point_invariants``
evaluates them at a CharPoint.
"""

from functools import lru_cache
from typing import NamedTuple

from ..chebyshev import abg
from ..polycore import MultiPoly

T, TAU, LAM = MultiPoly.var("t"), MultiPoly.var("tau"), MultiPoly.var("lam")
S = (MultiPoly.var("s1"), MultiPoly.var("s2"), MultiPoly.var("s3"))
S_NAMES = ("s1", "s2", "s3")


def sigma_polys():
    s1, s2, s3 = S
    return s1 + s2 + s3, s1 * s2 + s2 * s3 + s3 * s1, s1 * s2 * s3


def delta_poly():
    e1, e2, e3 = sigma_polys()
    return 4 + e3 + 2 * e2 - e1**2


def kappa_poly():
    """kappa in (t, tau)."""
    e1, e2, _ = sigma_polys()
    return TAU**2 - T * (e1 + 2) * TAU + T**2 * (e2 + 4)


def kappa_lambda_poly():
    """kappa with tau = t lam, i.e. t^2 (lam^2 - (sigma1 + 2) lam + sigma2 + 4)."""
    e1, e2, _ = sigma_polys()
    return T**2 * (LAM**2 - (e1 + 2) * LAM + e2 + 4)


def ambient_equation():
    """kappa - delta, the hypersurface containing every irreducible character."""
    return kappa_poly() - delta_poly()


@lru_cache(maxsize=None)
def tangle_coefficients(k1, k2, k3):
    """((alpha_j, beta_j, gamma_j) for j = 1, 2, 3) as polynomials in s_j."""
    return tuple(abg(k, name) for k, name in zip((k1, k2, k3), S_NAMES))


def x3_equations(params):
    """The three defining equations of X3 in (s1, s2, s3, lam), as lhs - rhs."""
    (_, b1, g1), (_, b2, g2), (a3, b3, _) = tangle_coefficients(*params.ks)
    e1, _, _ = sigma_polys()
    out = []
    for s, b, g in ((S[0], b1, g1), (S[1], b2, g2)):
        out.append((LAM - 2 - s) * g - (e1 - s - LAM) * b)
    s3 = S[2]
    out.append((s3**2 - s3 * LAM + e1 - 2) * b3 - (e1 + 2 - 2 * LAM) * a3)
    return out


def x3_excluded_locus():
    """sigma1 + 2 - 2 lam, required nonzero on X3."""
    e1, _, _ = sigma_polys()
    return e1 + 2 - 2 * LAM


class PointInvariants(NamedTuple):
    sigma1: complex
    sigma2: complex
    sigma3: complex
    delta: complex
    kappa: complex
    lam: complex
    r: complex


def point_invariants(p, with_lambda=True):
    """sigma1..3, delta, kappa, lambda and r at a CharPoint.

    ``lam`` is None when ``with_lambda`` is false; asking for it at t = 0
    raises ZeroDivisionError.
    """
    s1, s2, s3 = p.s
    e1 = s1 + s2 + s3
    e2 = s1 * s2 + s2 * s3 + s3 * s1
    e3 = s1 * s2 * s3
    delta = 4 + e3 + 2 * e2 - e1**2
    kappa = p.tau**2 - p.t * (e1 + 2) * p.tau + p.t**2 * (e2 + 4)
    lam = None
    if with_lambda:
        if p.t == 0:
            raise ZeroDivisionError("lambda = tau / t is undefined at t = 0")
        lam = p.tau / p.t
    return PointInvariants(e1, e2, e3, delta, kappa, lam, p.r)
