"""Explicit matrix triples from character points, and their adjudication."""

from ..errors import ReconstructionError
from ..sl2 import DEFAULT_TOL, TraceData, triple_from_traces
from .core import CharPoint, RepTriple
from .relations import relation_residual
from .systems import conic_taus, enumerate_X2, membership


def trace_data(point):
    """Pair traces t12 = t^2 - s3, t23 = t^2 - s1, t13 = t^2 - s2 and t123 = r."""
    t2 = point.t**2
    return TraceData(point.t, t2 - point.s3, t2 - point.s1, t2 - point.s2, point.r)


def representation_from_point(point, params, tol=DEFAULT_TOL, other_root=False):
    """(RepTriple, relation residual) without any component check."""
    X1, X2, X3 = triple_from_traces(trace_data(point), tol, other_root=other_root)
    rep = RepTriple(X1, X2, X3, params)
    return rep, relation_residual(rep)


def build_representation(point, params, tol=DEFAULT_TOL):
    """A triple realizing the point, checked against the knot relations.

    The point must lie on some component; a relation residual >= tol means
    the component description and the relations disagree there.
    """
    labels = membership(point, params)
    if not labels:
        raise ReconstructionError("point lies on no component of the character variety")
    rep, res = representation_from_point(point, params, tol)
    if res >= tol:
        raise ReconstructionError(
            f"relation residual {res:.3e} on component(s) {labels}: "
            "the component description and the group relations disagree here"
        )
    return rep


def adjudicate_X2(params, entry=None, t_values=(0.7, 1.3 + 0.4j, -2.6), tol=DEFAULT_TOL):
    """Reconstruct representations at conic points of each X2 entry.

    Returns one report per entry: ``status`` is "exact" for indices where the
    exact conditions hold, "unverified" at endpoint indices; ``verified`` says
    whether every reconstruction satisfied the relations.
    """
    entries = [entry] if entry is not None else enumerate_X2(params)
    reports = []
    for e in entries:
        residuals, failures = [], []
        for t in t_values:
            for tau in conic_taus(e, t):
                p = CharPoint(t, *e.s, tau)
                try:
                    residuals.append(representation_from_point(p, params, tol)[1])
                except ReconstructionError as exc:
                    failures.append(str(exc))
        reports.append({
            "h": list(e.h),
            "s": list(e.s),
            "status": "unverified" if e.endpoint else "exact",
            "max_residual": max(residuals) if residuals else None,
            "reconstruction_failures": failures,
            "verified": bool(residuals) and not failures and max(residuals) < tol,
        })
    return reports
