"""The trace polynomials omega_k and the per-tangle coefficients alpha, beta, gamma.

omega_k(t) is the polynomial with omega_0 = 0, omega_1 = 1 and
omega_{k+1} = t omega_k - omega_{k-1}; for t = a + 1/a it equals
(a^k - a^-k)/(a - 1/a).  If X is in SL(2) with trace t, then
X^k = omega_k(t) X - omega_{k-1}(t) I.
"""

import cmath
import threading

from .polycore import MultiPoly

_cache = {0: (0,), 1: (1,)}
_lock = threading.Lock()

BRANCH_TOL = 1e-12


def _omega_coeffs(k):
    """Integer coefficients (low to high) of omega_k for k >= 0."""
    if k in _cache:
        return _cache[k]
    with _lock:
        top = max(_cache)
        while top < k:
            prev, cur = _cache[top - 1], _cache[top]
            nxt = [0] * (len(cur) + 1)
            for i, c in enumerate(cur):
                nxt[i + 1] += c
            for i, c in enumerate(prev):
                nxt[i] -= c
            while len(nxt) > 1 and nxt[-1] == 0:
                nxt.pop()
            top += 1
            _cache[top] = tuple(nxt)
    return _cache[k]


def omega_coefficients(k):
    """Integer coefficients of omega_k (low to high), any integer k."""
    if k < 0:
        return tuple(-c for c in _omega_coeffs(-k))
    return _omega_coeffs(k)


def omega_poly(k, var="t"):
    coeffs = omega_coefficients(k)
    return MultiPoly((var,), {(i,): c for i, c in enumerate(coeffs) if c})


def first_kind_poly(n, var="s"):
    """P_n with P_n(2 cos x) = 2 cos(n x)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return MultiPoly.const(2, (var,))
    return omega_poly(n + 1, var) - omega_poly(n - 1, var)


def abg(k, var):
    """(alpha, beta, gamma) = (omega_{k-1}, omega_k, omega_{k+1}) in ``var``."""
    return omega_poly(k - 1, var), omega_poly(k, var), omega_poly(k + 1, var)


def omega_eval(k, t):
    """Numeric omega_k(t).

    At t = +-2 (a = +-1) the limit k a^(k-1) is used.  Close to those points
    the quotient loses precision, so the geometric sum
    a^(k-1) + a^(k-3) + ... + a^(1-k) is summed instead.
    """
    t = complex(t)
    if k < 0:
        return -omega_eval(-k, t)
    if k == 0:
        return 0j
    if abs(t - 2) < BRANCH_TOL:
        return complex(k)
    if abs(t + 2) < BRANCH_TOL:
        return complex(k * (-1) ** (k - 1))
    a = (t + cmath.sqrt(t * t - 4)) / 2
    if abs(a) < 1:
        a = 1 / a
    gap = a - 1 / a
    if abs(gap) > 1e-3:
        return (a**k - a**-k) / gap
    return sum(a ** (k - 1 - 2 * i) for i in range(k))


def first_kind_eval(n, s):
    return omega_eval(n + 1, s) - omega_eval(n - 1, s)
