"""Character variety of the even pretzel knot P(2k1+1, 2k2+1, 2k3)."""

from .core import CharPoint, ComponentSystem, PretzelParams, RepTriple
from .invariants import (
    ambient_equation,
    delta_poly,
    kappa_lambda_poly,
    kappa_poly,
    point_invariants,
    sigma_polys,
    x3_equations,
)
from .relations import a_matrices, a_spread, aj_trace_closed, relation_residual, y_matrices
from .representation import (
    adjudicate_X2,
    build_representation,
    representation_from_point,
    trace_data,
)
from .sampling import sample_X3
from .systems import (
    X2Entry,
    classify_t0,
    component_systems,
    conic_taus,
    enumerate_X2,
    membership,
    scaled_value,
)

__all__ = [
    "CharPoint",
    "ComponentSystem",
    "PretzelParams",
    "RepTriple",
    "X2Entry",
    "a_matrices",
    "a_spread",
    "adjudicate_X2",
    "aj_trace_closed",
    "ambient_equation",
    "build_representation",
    "classify_t0",
    "component_systems",
    "conic_taus",
    "delta_poly",
    "enumerate_X2",
    "kappa_lambda_poly",
    "kappa_poly",
    "membership",
    "point_invariants",
    "relation_residual",
    "representation_from_point",
    "sample_X3",
    "scaled_value",
    "sigma_polys",
    "trace_data",
    "x3_equations",
    "y_matrices",
]
