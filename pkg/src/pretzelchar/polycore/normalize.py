"""Content, primitive part, gcd and square-free reduction.

Multivariate gcd is delegated to sympy's sparse ``PolyElement`` over ZZ,
built only over the variables that actually occur (extra, unused ring
generators slow its heuristic gcd down by orders of magnitude).
"""

from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

from sympy import ZZ
from sympy.polys.rings import ring

from .multipoly import MultiPoly, canonical_vars


class ContentPrimitive(NamedTuple):
    content: Fraction
    primitive: MultiPoly

    @property
    def is_zero(self):
        return self.content == 0


def content_primitive(p):
    """Split p = content * primitive.

    The primitive part has coprime integer coefficients and a positive
    leading coefficient in the canonical term order; the sign lives in the
    content.  The zero polynomial gives ``(0, 0)``, flagged by ``is_zero``.
    """
    if p.is_zero():
        return ContentPrimitive(Fraction(0), p)
    coeffs = list(p.terms.values())
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = gcd(*ints)
    if p.leading_coefficient() < 0:
        g = -g
    content = Fraction(g, den)
    prim = MultiPoly._make(p.vars, {e: c / content for e, c in p.terms.items()})
    return ContentPrimitive(content, prim)


def primitive(p):
    return content_primitive(p).primitive


def integer_terms(p):
    """Integer coefficient table of the primitive part of p."""
    prim = primitive(p)
    return {e: int(c) for e, c in prim.terms.items()}


def _to_sympy(polys):
    vars = canonical_vars(v for p in polys for v in p.used_vars())
    if not vars:
        return None, vars, []
    R = ring(",".join(vars), ZZ)[0]
    out = []
    for p in polys:
        q = primitive(p).with_vars(vars) if not p.is_zero() else MultiPoly.zero(vars)
        out.append(R.from_dict({e: int(c) for e, c in q.terms.items()}))
    return R, vars, out


def _from_sympy(el, vars):
    return MultiPoly(vars, {e: int(c) for e, c in el.terms()})


def poly_gcd(p, q):
    """Primitive gcd of two polynomials (positive leading coefficient)."""
    if p.is_zero():
        return primitive(q) if not q.is_zero() else q
    if q.is_zero():
        return primitive(p)
    R, vars, (a, b) = _to_sympy([p, q])
    if R is None:
        return MultiPoly.const(1)
    return primitive(_from_sympy(a.gcd(b), vars))


def square_free(p, var=None):
    """Square-free reduction, content-normalized.

    With ``var`` this is ``p / gcd(p, dp/dvar)``: repeated factors involving
    ``var`` collapse to one copy and factors free of ``var`` (the content in
    ``var``) drop out.  If ``var`` does not occur, p is returned primitive.
    With ``var=None`` the full square-free part over every variable is
    returned and no factor is lost.
    """
    if p.is_zero():
        raise ValueError("square_free of the zero polynomial")
    prim = primitive(p)
    if var is None:
        R, vars, (a,) = _to_sympy([prim])
        if R is None:
            return MultiPoly.const(1)
        return primitive(_from_sympy(a.sqf_part(), vars))
    if prim.degree(var) <= 0:
        return prim
    R, vars, (a,) = _to_sympy([prim])
    x = R.gens[vars.index(var)]
    g = a.gcd(a.diff(x))
    return primitive(_from_sympy(a.exquo(g), vars))
