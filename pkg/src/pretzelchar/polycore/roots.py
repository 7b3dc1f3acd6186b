"""Complex roots of univariate polynomials.

Seeds come from the companion-matrix eigenvalues (``numpy.roots``) and are
refined by Aberth-Ehrlich simultaneous iteration, which also handles the
clusters that the eigenvalue route smears out.
"""

import numpy as np

from ..errors import RootFindingError

DEFAULT_TOL = 1e-10
MAX_ITER = 1000


def _strip(coeffs):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    nz = np.flatnonzero(coeffs)
    if not len(nz):
        raise ValueError("zero polynomial has no roots")
    return coeffs[nz[0]:]


def scaled_residuals(coeffs, z):
    """|p(z)| / (1 + |lc| |z|^deg) for each z (coefficients high to low)."""
    coeffs = _strip(coeffs)
    z = np.asarray(z, dtype=np.complex128)
    deg = len(coeffs) - 1
    return np.abs(np.polyval(coeffs, z)) / (1 + abs(coeffs[0]) * np.abs(z) ** deg)


def aberth(coeffs, z0, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Aberth-Ehrlich iteration from starting values z0; returns (roots, converged)."""
    coeffs = _strip(coeffs)
    deriv = np.polyder(coeffs)
    z = np.array(z0, dtype=np.complex128)
    n = len(z)
    for _ in range(max_iter):
        if np.all(scaled_residuals(coeffs, z) < tol):
            return z, True
        pz = np.polyval(coeffs, z)
        dz = np.polyval(deriv, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        sums = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dz
            step = ratio / (1.0 - ratio * sums)
        step[~np.isfinite(step)] = 0.0
        step[pz == 0] = 0.0
        if not np.any(step):
            break
        z = z - step
    return z, bool(np.all(scaled_residuals(coeffs, z) < tol)) if n else True


def roots_from_coeffs(coeffs, tol=DEFAULT_TOL, max_iter=MAX_ITER, strict=True):
    """All complex roots (with multiplicity) of a polynomial given high-to-low.

    With ``strict`` a RootFindingError carrying the partial result is raised
    when the residual test still fails after ``max_iter`` sweeps.
    """
    coeffs = _strip(coeffs)
    deg = len(coeffs) - 1
    if deg < 1:
        raise ValueError("polynomial must have degree >= 1")
    if deg == 1:
        return np.array([-coeffs[1] / coeffs[0]])
    seeds = np.roots(coeffs)
    roots, ok = aberth(coeffs, seeds, tol, max_iter)
    if not ok and strict:
        raise RootFindingError(
            f"Aberth iteration did not reach tol={tol} within {max_iter} sweeps", partial=roots
        )
    return roots


def uni_roots(p, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    """Roots of a univariate MultiPoly, with multiplicity, as complex numbers."""
    used = p.used_vars()
    if len(used) != 1:
        raise ValueError(f"expected a univariate polynomial, got variables {used}")
    coeffs = [complex(c.constant_value()) for c in p.compact().coeffs_in(used[0])]
    return [complex(z) for z in roots_from_coeffs(coeffs[::-1], tol, max_iter)]
