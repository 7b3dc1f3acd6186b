"""The three defining relations of the knot group, and the A_j matrices.

Index dictionary: Y_j = X_{j+} X_{j-}^-1 with (1+, 1-) = (2, 3),
(2+, 2-) = (3, 1), (3+, 3-) = (1, 2).
"""

from typing import NamedTuple

from ..chebyshev import omega_eval
from ..sl2 import max_norm, power_via_omega as pw, sl2_inv


def y_matrices(rep):
    X1, X2, X3 = rep.mats
    return X2 @ sl2_inv(X3), X3 @ sl2_inv(X1), X1 @ sl2_inv(X2)


def _conj(Y, k, M):
    return pw(Y, k) @ M @ pw(Y, -k)


def relation_sides(rep):
    """Left and right sides of the three relations, as three (lhs, rhs) pairs."""
    X1, X2, X3 = rep.mats
    k1, k2, k3 = rep.params.ks
    Y1, Y2, Y3 = y_matrices(rep)
    return (
        (_conj(Y1, k1, X2), _conj(Y2, k2 + 1, X1)),
        (_conj(Y2, k2, X3), _conj(Y3, k3, sl2_inv(X1))),
        (_conj(Y3, k3, X2), _conj(Y1, k1 + 1, sl2_inv(X3))),
    )


def relation_residual(rep):
    """Largest entry of lhs - rhs over the three relations."""
    return max(max_norm(a - b) for a, b in relation_sides(rep))


class AMatrices(NamedTuple):
    A1: object
    A2: object
    A3: object
    A3_alt: object


def a_matrices(rep):
    """A1, A2, A3 (A3 through X1^-1) and A3_alt (through X2^-1).

    A1 = A2 = A3 is equivalent to the three relations.
    """
    X1, X2, X3 = rep.mats
    k1, k2, k3 = rep.params.ks
    Y1, Y2, Y3 = y_matrices(rep)
    A1 = _conj(Y1, k1, X2) @ X3
    A2 = _conj(Y2, k2, X3) @ X1
    A3 = _conj(Y3, k3, sl2_inv(X1)) @ X1
    A3_alt = _conj(Y3, k3, sl2_inv(X2)) @ X2
    return AMatrices(A1, A2, A3, A3_alt)


def a_spread(mats):
    """Largest pairwise entry difference among A1, A2, A3."""
    A1, A2, A3 = mats[:3]
    return max(max_norm(A1 - A2), max_norm(A2 - A3), max_norm(A1 - A3))


def aj_trace_closed(t, s, k, side):
    """Closed form of tr(A_j): ``side`` 1 or 2 for j = 1, 2 and 3 for A3."""
    t, s = complex(t), complex(s)
    beta, gamma = omega_eval(k, s), omega_eval(k + 1, s)
    if side in (1, 2):
        return 2 - (s + 2 - t * t) * (gamma - beta) ** 2
    if side == 3:
        return 2 + (s - 2) * (s + 2 - t * t) * beta**2
    raise ValueError("side must be 1, 2 or 3")
