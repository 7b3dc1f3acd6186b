from fractions import Fraction

import numpy as np
import pytest
import sympy

from pretzelchar.polycore import MultiPoly


def to_sympy(p):
    """MultiPoly -> sympy expression (test oracle bridge)."""
    syms = [sympy.Symbol(v) for v in p.vars]
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exp):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr):
    expr = sympy.expand(expr)
    names = sorted(str(s) for s in expr.free_symbols)
    if not names:
        r = sympy.Rational(expr)
        return MultiPoly.const(Fraction(int(r.p), int(r.q)))
    poly = sympy.Poly(expr, *[sympy.Symbol(n) for n in names])
    return MultiPoly(tuple(names), {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def random_sl2(rng):
    a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
    while abs(a) < 0.2:
        a = complex(rng.normal(), rng.normal())
    return np.array([[a, b], [c, (1 + b * c) / a]])


def common_trace_triple(rng, u=None):
    """Three conjugates of diag(u, 1/u): a regular triple with equal traces."""
    if u is None:
        u = complex(rng.normal(), rng.normal()) + 1.5
    D = np.diag([u, 1 / u])
    out = []
    for _ in range(3):
        P = random_sl2(rng)
        out.append(P @ D @ np.linalg.inv(P))
    return tuple(out)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
