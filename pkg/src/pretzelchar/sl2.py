"""2x2 complex matrices: powers through omega_k, trace identities, regularity,
and realizing a triple of matrices from its trace coordinates.

Matrices are plain ``numpy`` arrays of shape (2, 2) and dtype complex128.
"""

import cmath
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .chebyshev import omega_eval
from .errors import InadmissibleTraceError, ReconstructionError

DEFAULT_TOL = 1e-8
SL2_DET_TOL = 1e-9
I2 = np.eye(2, dtype=np.complex128)


def mat2(a11, a12, a21, a22):
    return np.array([[a11, a12], [a21, a22]], dtype=np.complex128)


def as_mat2(X):
    X = np.asarray(X, dtype=np.complex128)
    if X.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {X.shape}")
    return X


def is_sl2(X, tol=SL2_DET_TOL):
    return abs(np.linalg.det(as_mat2(X)) - 1) < tol


def sl2_inv(X):
    """Inverse of a determinant-one matrix (the adjugate)."""
    X = as_mat2(X)
    return mat2(X[1, 1], -X[0, 1], -X[1, 0], X[0, 0])


def max_norm(M):
    return float(np.max(np.abs(M)))


def power_via_omega(X, k):
    """X^k = omega_k(t) X - omega_{k-1}(t) I for X in SL(2), any integer k."""
    X = as_mat2(X)
    t = X[0, 0] + X[1, 1]
    return omega_eval(k, t) * X - omega_eval(k - 1, t) * I2


def power_direct(X, k):
    """Repeated multiplication by X or by its inverse."""
    X = as_mat2(X)
    base = X if k >= 0 else sl2_inv(X)
    out = I2.copy()
    for _ in range(abs(k)):
        out = out @ base
    return out


def lemma21_residual(X, Y):
    """Max-entry residuals of XYX = t12 X - Y^-1 and of the XY + YX identity."""
    X, Y = as_mat2(X), as_mat2(Y)
    t1, t2 = np.trace(X), np.trace(Y)
    t12 = np.trace(X @ Y)
    r1 = X @ Y @ X - (t12 * X - sl2_inv(Y))
    r2 = X @ Y + Y @ X - ((t12 - t1 * t2) * I2 + t2 * X + t1 * Y)
    return max_norm(r1), max_norm(r2)


def _near_scalar(X, tol):
    return max_norm(X - I2) < tol or max_norm(X + I2) < tol


def regular_pair(X, Y, tol=DEFAULT_TOL):
    """True iff I, X, Y, XY span all 2x2 matrices (no common eigenvector)."""
    X, Y = as_mat2(X), as_mat2(Y)
    if _near_scalar(X, tol) or _near_scalar(Y, tol):
        raise ValueError("regular_pair needs X, Y different from +-I")
    rows = np.array([I2.ravel(), X.ravel(), Y.ravel(), (X @ Y).ravel()])
    sv = np.linalg.svd(rows, compute_uv=False)
    return bool(sv[-1] > tol * sv[0])


def eigenvectors(X):
    """One representative vector per eigenline of X (one line if X is parabolic).

    Returns an empty list for scalar matrices, whose eigenvectors are everything.
    """
    X = as_mat2(X)
    scale = max(max_norm(X), 1.0)
    a, b, c, d = X[0, 0], X[0, 1], X[1, 0], X[1, 1]
    if abs(b) < 1e-14 * scale and abs(c) < 1e-14 * scale and abs(a - d) < 1e-14 * scale:
        return []
    t = a + d
    disc = cmath.sqrt(t * t - 4 * (a * d - b * c))
    vecs = []
    for mu in {(t + disc) / 2, (t - disc) / 2}:
        v1 = np.array([b, mu - a])
        v2 = np.array([mu - d, c])
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        vecs.append(v / np.linalg.norm(v))
    if len(vecs) == 2 and abs(vecs[0][0] * vecs[1][1] - vecs[0][1] * vecs[1][0]) < 1e-12:
        vecs.pop()
    return vecs


def _is_eigenvector(M, v, tol):
    Mv = M @ v
    n = np.linalg.norm(Mv)
    if n == 0:
        return True
    return abs(v[0] * Mv[1] - v[1] * Mv[0]) < tol * n


def regular_triple(X1, X2, X3, tol=DEFAULT_TOL):
    """True iff X1, X2, X3 have no common eigenvector."""
    mats = [as_mat2(X) for X in (X1, X2, X3)]
    candidates = None
    for M in mats:
        vecs = eigenvectors(M)
        if vecs:
            candidates = vecs
            break
    if candidates is None:
        return False
    for v in candidates:
        if all(_is_eigenvector(M, v, tol) for M in mats):
            return False
    return True


# -- trace coordinates of a triple --------------------------------------------

NU0_FORM = "nu0 = t^2 (3 - t12 - t23 - t13) + t12^2 + t23^2 + t13^2 + t12 t23 t13 - 4"


class NuQuadratic(NamedTuple):
    nu0: complex
    nu1: complex
    roots: tuple
    form: str = NU0_FORM


def nu_quadratic(t, t12, t23, t13):
    """Coefficients of t123^2 - nu1 t123 + nu0 = 0 and its two roots.

    ``form`` records the nu0 expression in use; it is symmetric in the three
    pair traces.
    """
    t, t12, t23, t13 = (complex(x) for x in (t, t12, t23, t13))
    nu0 = t * t * (3 - t12 - t23 - t13) + t12**2 + t23**2 + t13**2 + t12 * t23 * t13 - 4
    nu1 = t * (t12 + t23 + t13) - t**3
    disc = cmath.sqrt(nu1 * nu1 - 4 * nu0)
    r1, r2 = (nu1 + disc) / 2, (nu1 - disc) / 2
    if abs(r1) < abs(r2):
        r1, r2 = r2, r1
    if r1 != 0:
        r2 = nu0 / r1
    return NuQuadratic(nu0, nu1, (r1, r2))


@dataclass(frozen=True)
class TraceData:
    t: complex
    t12: complex
    t23: complex
    t13: complex
    t123: complex

    @classmethod
    def from_matrices(cls, X1, X2, X3):
        X1, X2, X3 = (as_mat2(X) for X in (X1, X2, X3))
        tr = np.trace
        return cls(complex(tr(X1)), complex(tr(X1 @ X2)), complex(tr(X2 @ X3)),
                   complex(tr(X1 @ X3)), complex(tr(X1 @ X2 @ X3)))

    def admissibility_residual(self):
        """|t123^2 - nu1 t123 + nu0| divided by the size of its largest term."""
        q = nu_quadratic(self.t, self.t12, self.t23, self.t13)
        x = self.t123
        terms = [abs(x * x), abs(q.nu1 * x), abs(q.nu0), 1.0]
        return abs(x * x - q.nu1 * x + q.nu0) / max(terms)


def seven_traces(X1, X2, X3):
    """(tr X1, tr X2, tr X3, tr X1X2, tr X2X3, tr X1X3, tr X1X2X3)."""
    X1, X2, X3 = (as_mat2(X) for X in (X1, X2, X3))
    tr = np.trace
    return np.array([tr(X1), tr(X2), tr(X3), tr(X1 @ X2), tr(X2 @ X3), tr(X1 @ X3),
                     tr(X1 @ X2 @ X3)])


def meridian_eigenvalue(t, other=False):
    """Root u of u^2 - t u + 1 with |u| >= 1 (ties broken by Im u >= 0).

    ``other`` returns 1/u instead.
    """
    t = complex(t)
    disc = cmath.sqrt(t * t - 4)
    u1, u2 = (t + disc) / 2, (t - disc) / 2
    if abs(abs(u1) - abs(u2)) > 1e-12 * max(abs(u1), 1):
        u = u1 if abs(u1) > abs(u2) else u2
    else:
        u = u1 if u1.imag >= u2.imag else u2
    if other:
        u = 1 / u
    return u


def _first_pair(t, t12, other):
    if abs(t - 2) < 1e-12 or abs(t + 2) < 1e-12:
        e = 1.0 if t.real > 0 else -1.0
        X1 = mat2(e, 1, 0, e)
        X2 = mat2(e, 0, t12 - 2, e)
    else:
        u = meridian_eigenvalue(t, other)
        X1 = mat2(u, 1, 0, 1 / u)
        X2 = mat2(1 / u, 0, t12 - 2, u)
    return X1, X2


def _solve_third(X1, X2, targets):
    """X3 with tr(X3 M) = target for M in (I, X1, X2, X1 X2); returns (X3, condition)."""
    basis = [I2, X1, X2, X1 @ X2]
    A = np.array([M.T.ravel() for M in basis])
    sv = np.linalg.svd(A, compute_uv=False)
    cond = sv[0] / sv[-1] if sv[-1] > 0 else np.inf
    if not np.isfinite(cond) or cond > 1e12:
        return None, cond
    X3 = np.linalg.solve(A, np.asarray(targets, dtype=np.complex128)).reshape(2, 2)
    return X3, cond


def triple_from_traces(d, tol=DEFAULT_TOL, other_root=False):
    """Realize (X1, X2, X3) in SL(2) with the given trace coordinates.

    X1 is upper triangular with eigenvalue u, X2 lower triangular with the
    same diagonal swapped, and X3 solves four linear trace conditions.  When
    {X1, X2} would be reducible, the roles are rotated cyclically (t123 is
    invariant under rotation).  Determinant, traces and regularity are checked.
    """
    if d.admissibility_residual() >= tol:
        raise InadmissibleTraceError(
            f"trace data violate the t123 quadratic (scaled residual {d.admissibility_residual():.3e})"
        )
    t = complex(d.t)
    pair_traces = [complex(d.t12), complex(d.t23), complex(d.t13)]
    best = None
    for shift in range(3):
        t12, t23, t13 = pair_traces[shift:] + pair_traces[:shift]
        X1, X2 = _first_pair(t, t12, other_root)
        X3, cond = _solve_third(X1, X2, [t, t13, t23, complex(d.t123)])
        if X3 is None:
            continue
        if best is None or cond < best[0]:
            rotated = (X1, X2, X3)
            # undo the rotation: rotated[i] plays the role of original X_{i+shift}
            triple = tuple(rotated[(i - shift) % 3] for i in range(3))
            best = (cond, triple)
        if cond < 1e6:
            break
    if best is None:
        raise ReconstructionError("no rotation gives a regular pair {X1, X2}; the triple is reducible")
    X1, X2, X3 = best[1]
    det_err = abs(np.linalg.det(X3) - 1)
    if det_err >= tol:
        raise ReconstructionError(f"reconstructed X3 has |det - 1| = {det_err:.3e}")
    target = np.array([t, t, t, d.t12, d.t23, d.t13, d.t123])
    err = np.abs(seven_traces(X1, X2, X3) - target) / np.maximum(1.0, np.abs(target))
    if err.max() >= tol:
        raise ReconstructionError(f"reconstructed traces off by {err.max():.3e}")
    if not regular_triple(X1, X2, X3, tol):
        raise ReconstructionError("reconstructed triple has a common eigenvector")
    return X1, X2, X3
