"""Resultants of polynomials viewed as univariate in one variable.

Two routes compute the same determinant of the Sylvester matrix:

* ``bareiss``: fraction-free elimination directly over the polynomial ring.
  Exact and simple, but the intermediate minors grow quickly.
* ``modular``: the Sylvester matrix is specialised at a grid of integer points
  modulo several 31-bit primes, each specialised determinant is taken by
  batched Bareiss/Gauss elimination in numpy, the values are interpolated back
  to a polynomial, and the primes are recombined by CRT.  Per-variable degree
  bounds come from an assignment problem over the entry degrees and the number
  of primes from a 1-norm coefficient bound, so the result is exact.

Specialising a matrix built with formal degrees commutes with taking the
determinant, so no evaluation point is "unlucky".
"""

from fractions import Fraction
from functools import lru_cache
from math import prod

import numpy as np
from scipy.optimize import linear_sum_assignment
from sympy import prevprime

from .multipoly import MultiPoly, canonical_vars
from .normalize import content_primitive

GRID_LIMIT = 1_500_000
_CHUNK_BYTES = 64 * 2**20


def sylvester_matrix(p, q, var):
    """Sylvester matrix of p and q in ``var`` (leading coefficients first)."""
    pc = p.coeffs_in(var)
    qc = q.coeffs_in(var)
    m, n = len(pc) - 1, len(qc) - 1
    if m < 1 or n < 1:
        raise ValueError(f"both polynomials need positive degree in {var!r}")
    vars = canonical_vars(v for v in p.vars + q.vars if v != var)
    zero = MultiPoly.zero(vars)
    size = m + n
    rows = []
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + k] = pc[m - k].with_vars(vars)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + k] = qc[n - k].with_vars(vars)
        rows.append(row)
    return rows


def bareiss_det(matrix, divide=None):
    """Fraction-free determinant; ``divide`` performs the exact divisions."""
    if divide is None:
        divide = _exact_divide
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(a[r][k]):
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else divide(num, prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def _is_zero(x):
    return x.is_zero() if isinstance(x, MultiPoly) else x == 0


def _exact_divide(a, b):
    if isinstance(a, MultiPoly):
        return a.exact_div(b)
    return a / b


def resultant_bareiss(p, q, var):
    return bareiss_det(sylvester_matrix(p, q, var))


# -- modular route -----------------------------------------------------------

@lru_cache(maxsize=None)
def _prime(i):
    if i == 0:
        return prevprime(2**31)
    return prevprime(_prime(i - 1))


def _modinv(a, P):
    result = np.ones_like(a)
    base = a % P
    e = P - 2
    while e:
        if e & 1:
            result = result * base % P
        base = base * base % P
        e >>= 1
    return result


def batched_det_mod(M, P):
    """Determinants of a stack of square matrices over GF(P), P < 2**31."""
    M = M.copy()
    batch, n, _ = M.shape
    det = np.ones(batch, dtype=np.int64)
    rows = np.arange(batch)
    for k in range(n):
        nz = M[:, k:, k] != 0
        has = nz.any(axis=1)
        piv = np.argmax(nz, axis=1) + k
        swap = has & (piv != k)
        if swap.any():
            idx = rows[swap]
            pr = piv[swap]
            tmp = M[idx, k, :].copy()
            M[idx, k, :] = M[idx, pr, :]
            M[idx, pr, :] = tmp
            det[idx] = (P - det[idx]) % P
        pivot = M[:, k, k].copy()
        det = np.where(has, det * pivot % P, 0)
        pivot[~has] = 1
        if k + 1 < n:
            f = M[:, k + 1:, k] * _modinv(pivot, P)[:, None] % P
            M[:, k + 1:, k + 1:] = (M[:, k + 1:, k + 1:] - f[:, :, None] * M[:, k, None, k + 1:]) % P
    return det


def _split_coeffs(terms, xi):
    """Integer terms -> list over x-degree of {y-exponent: coeff}."""
    deg = max(e[xi] for e in terms)
    out = [{} for _ in range(deg + 1)]
    for e, c in terms.items():
        out[e[xi]][e[:xi] + e[xi + 1:]] = c
    return out


def _degree_bound(pc, qc, axis):
    dp, dq = len(pc) - 1, len(qc) - 1
    n = dp + dq
    neg = -10**9
    W = np.full((n, n), neg, dtype=np.int64)
    dgp = [max((e[axis] for e in c), default=None) for c in pc]
    dgq = [max((e[axis] for e in c), default=None) for c in qc]
    for r in range(dq):
        for k in range(dp + 1):
            if dgp[dp - k] is not None:
                W[r, r + k] = dgp[dp - k]
    for r in range(dp):
        for k in range(dq + 1):
            if dgq[dq - k] is not None:
                W[dq + r, r + k] = dgq[dq - k]
    ri, ci = linear_sum_assignment(W, maximize=True)
    total = int(W[ri, ci].sum())
    return -1 if total < neg // 2 else max(total, 0)


def _eval_grid(coeffs, axes, P):
    shape = tuple(len(a) for a in axes)
    if not coeffs:
        return np.zeros(shape, dtype=np.int64)
    m = len(axes)
    degs = [max(e[i] for e in coeffs) + 1 for i in range(m)]
    T = np.zeros(degs, dtype=np.int64)
    for e, c in coeffs.items():
        T[e] = (int(T[e]) + c) % P
    for i in range(m):
        pts = axes[i]
        T = np.moveaxis(T, i, 0)
        acc = np.zeros((len(pts),) + T.shape[1:], dtype=np.int64)
        pw = np.ones(len(pts), dtype=np.int64)
        bshape = (-1,) + (1,) * (T.ndim - 1)
        for e in range(T.shape[0]):
            acc = (acc + pw.reshape(bshape) * T[e]) % P
            pw = pw * pts % P
        T = np.moveaxis(acc, 0, i)
    return T


def _interpolate_axis(V, pts, axis, P):
    V = np.moveaxis(V, axis, 0).copy()
    N = V.shape[0]
    bshape = (-1,) + (1,) * (V.ndim - 1)
    for j in range(1, N):
        d = (pts[j:] - pts[:N - j]) % P
        V[j:] = (V[j:] - V[j - 1:N - 1]) % P * _modinv(d, P).reshape(bshape) % P
    C = np.zeros_like(V)
    C[0] = V[N - 1]
    for i in range(N - 2, -1, -1):
        shifted = np.zeros_like(C)
        shifted[1:] = C[:-1]
        C = (shifted - C * pts[i] % P) % P
        C[0] = (C[0] + V[i]) % P
    return np.moveaxis(C, 0, axis)


def _resultant_grid_mod(pc, qc, bounds, P):
    axes = [np.arange(b + 1, dtype=np.int64) for b in bounds]
    shape = tuple(b + 1 for b in bounds)
    G = prod(shape)
    dp, dq = len(pc) - 1, len(qc) - 1
    n = dp + dq
    pv = [_eval_grid(c, axes, P).reshape(G) for c in pc]
    qv = [_eval_grid(c, axes, P).reshape(G) for c in qc]
    chunk = max(1, _CHUNK_BYTES // (8 * n * n))
    det = np.empty(G, dtype=np.int64)
    for lo in range(0, G, chunk):
        hi = min(G, lo + chunk)
        S = np.zeros((hi - lo, n, n), dtype=np.int64)
        for r in range(dq):
            for k in range(dp + 1):
                S[:, r, r + k] = pv[dp - k][lo:hi]
        for r in range(dp):
            for k in range(dq + 1):
                S[:, dq + r, r + k] = qv[dq - k][lo:hi]
        det[lo:hi] = batched_det_mod(S, P)
    V = det.reshape(shape)
    for i in range(len(bounds)):
        V = _interpolate_axis(V, axes[i], i, P)
    return V


def _crt(residues, primes):
    x = residues[0].astype(object)
    M = primes[0]
    for r, P in zip(residues[1:], primes[1:]):
        xm = np.array([int(v) % P for v in x.ravel()], dtype=np.int64).reshape(x.shape)
        inv = pow(M % P, -1, P)
        t = (r - xm) % P * inv % P
        x = x + M * t.astype(object)
        M *= P
    half = M // 2
    return x, M, half


def resultant_modular(p, q, var, grid_limit=GRID_LIMIT):
    """Exact resultant through evaluation/interpolation modulo primes.

    Returns None when the interpolation grid would exceed ``grid_limit``.
    """
    cp, pp = content_primitive(p)
    cq, qq = content_primitive(q)
    dp, dq = pp.degree(var), qq.degree(var)
    out_vars = canonical_vars(v for v in p.vars + q.vars if v != var)
    scale = cp**dq * cq**dp
    ys = canonical_vars(v for v in pp.used_vars() + qq.used_vars() if v != var)
    work = canonical_vars(ys + (var,))
    pw = pp.with_vars(work)
    qw = qq.with_vars(work)
    xi = work.index(var)
    pc = _split_coeffs({e: int(c) for e, c in pw.terms.items()}, xi)
    qc = _split_coeffs({e: int(c) for e, c in qw.terms.items()}, xi)
    if not ys:
        M = [[Fraction(0)] * (dp + dq) for _ in range(dp + dq)]
        for r in range(dq):
            for k in range(dp + 1):
                M[r][r + k] = Fraction(pc[dp - k].get((), 0))
        for r in range(dp):
            for k in range(dq + 1):
                M[dq + r][r + k] = Fraction(qc[dq - k].get((), 0))
        return MultiPoly.const(bareiss_det(M) * scale, out_vars)
    bounds = [_degree_bound(pc, qc, i) for i in range(len(ys))]
    if min(bounds) < 0:
        return MultiPoly.zero(out_vars)
    if prod(b + 1 for b in bounds) > grid_limit:
        return None
    norm_p = sum(abs(int(c)) for c in pw.terms.values())
    norm_q = sum(abs(int(c)) for c in qw.terms.values())
    need = 2 * norm_p**dq * norm_q**dp
    primes, residues = [], []
    modulus = 1
    while modulus <= need:
        P = _prime(len(primes))
        primes.append(P)
        residues.append(_resultant_grid_mod(pc, qc, bounds, P))
        modulus *= P
    x, M, half = _crt(residues, primes)
    terms = {}
    for idx in zip(*np.nonzero(x)):
        c = int(x[idx])
        if c > half:
            c -= M
        if c:
            terms[tuple(int(i) for i in idx)] = c * scale
    return MultiPoly(ys, terms).with_vars(out_vars)


def resultant_uni(p, q, var, method="auto"):
    """Res_var(p, q): the Sylvester determinant, coefficients in the other variables.

    A zero result is returned as the zero polynomial; callers decide what a
    vanishing resultant means for them.
    """
    if p.degree(var) < 1 or q.degree(var) < 1:
        raise ValueError(f"resultant needs positive degree in {var!r} for both arguments")
    if method == "bareiss":
        return resultant_bareiss(p, q, var)
    if method not in ("auto", "modular"):
        raise ValueError(f"unknown resultant method {method!r}")
    res = resultant_modular(p, q, var)
    if res is None:
        if method == "modular":
            raise ValueError("interpolation grid too large for the modular route")
        res = resultant_bareiss(p, q, var)
    return res
