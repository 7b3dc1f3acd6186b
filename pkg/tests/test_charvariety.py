import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from pretzelchar.chebyshev import abg
from pretzelchar.charvariety import (
    CharPoint,
    PretzelParams,
    RepTriple,
    a_matrices,
    a_spread,
    adjudicate_X2,
    aj_trace_closed,
    build_representation,
    classify_t0,
    component_systems,
    conic_taus,
    enumerate_X2,
    membership,
    point_invariants,
    relation_residual,
    representation_from_point,
    sample_X3,
    x3_equations,
)
from pretzelchar.charvariety.invariants import ambient_equation, x3_excluded_locus
from pretzelchar.charvariety.sampling import solve_at_t
from pretzelchar.charvariety.systems import satisfies
from pretzelchar.errors import ReconstructionError
from pretzelchar.polycore import MultiPoly, uni_roots
from pretzelchar.sl2 import I2, TraceData, nu_quadratic, sl2_inv, triple_from_traces

from conftest import random_sl2

KNOTS = [(0, 0, 1), (1, 1, 1), (1, 2, 2)]
lam, s1, s2, s3 = (MultiPoly.var(v) for v in ("lam", "s1", "s2", "s3"))


@pytest.fixture(scope="module")
def samples():
    out = {}
    for ks in KNOTS:
        params = PretzelParams(*ks)
        out[ks] = (params, sample_X3(params, 20, seed=7))
    return out


# -- value types and invariants ---------------------------------------------------

def test_params_validation():
    with pytest.raises(ValueError):
        PretzelParams(1, 1, 0)
    with pytest.raises(TypeError):
        PretzelParams(1.5, 1, 1)
    assert PretzelParams(1, 2, 2).knot_name == "P(3,5,4)"


def test_point_json_round_trip():
    p = CharPoint(1.5 + 0.5j, 1, -2j, 0.25, 3)
    assert CharPoint.from_json(p.to_json()) == p


def test_point_invariants_examples():
    inv = point_invariants(CharPoint(2, 2, 2, 2, 8))
    assert inv[:7] == (6, 12, 8, 0, 0, 4, 2)
    inv = point_invariants(CharPoint(0, 0, 0, 0, 0), with_lambda=False)
    assert inv.delta == 4 and inv.kappa == 0
    inv = point_invariants(CharPoint(1, 1, 1, 1, 0))
    assert inv[:7] == (3, 3, 1, 2, 7, 0, 2)
    with pytest.raises(ZeroDivisionError):
        point_invariants(CharPoint(0, 0, 0, 0, 0))


# -- relations ----------------------------------------------------------------------

def test_identity_triple():
    rep = RepTriple(I2, I2, I2, PretzelParams(1, 1, 1))
    assert relation_residual(rep) == 0
    for A in a_matrices(rep)[:3]:
        assert np.allclose(A, I2)


def test_random_triple_fails_relations(rng):
    for _ in range(20):
        rep = RepTriple(random_sl2(rng), random_sl2(rng), random_sl2(rng), PretzelParams(1, 1, 1))
        assert relation_residual(rep) > 1e-3
        assert a_spread(a_matrices(rep)) > 1e-3


def test_sampled_representations(samples):
    for ks, (params, pts) in samples.items():
        for p in pts:
            rep = build_representation(p, params)
            assert relation_residual(rep) < 1e-8
            A = a_matrices(rep)
            assert a_spread(A) < 1e-8
            scale = max(1.0, np.max(np.abs(A.A3)))
            assert np.max(np.abs(A.A3 - A.A3_alt)) < 1e-9 * scale
            t = p.t
            for X in rep.mats:
                assert abs(np.trace(A.A1 @ sl2_inv(X)) - t) < 1e-8 * max(1, abs(t))


def test_aj_trace_closed_examples():
    t, s = 0.7 + 0.2j, -1.1 + 0.4j
    assert abs(aj_trace_closed(t, s, 0, 1) - (2 - (s + 2 - t * t))) < 1e-14
    assert aj_trace_closed(t, 2, 1, 3) == 2


def _realizing_triple(rng, t, s_pair, which):
    """A regular triple with common trace t whose pair j has tr = t^2 - s_j."""
    t2 = t * t
    pair = [t2 - complex(*rng.normal(size=2)) for _ in range(3)]
    pair[which] = t2 - s_pair
    t12, t23, t13 = pair[2], pair[0], pair[1]
    roots = nu_quadratic(t, t12, t23, t13).roots
    return triple_from_traces(TraceData(t, t12, t23, t13, roots[0]))


def test_aj_trace_closed_random(rng):
    for _ in range(100):
        t = complex(*rng.normal(size=2)) * 1.2
        s = complex(*rng.normal(size=2)) * 1.2
        k = int(rng.integers(-3, 4))
        ks = (k, k, max(1, abs(k)))
        for side in (1, 2, 3):
            X1, X2, X3 = _realizing_triple(rng, t, s, side - 1)
            A = a_matrices(RepTriple(X1, X2, X3, PretzelParams(*ks)))
            kk = ks[side - 1]
            want = np.trace(A[side - 1])
            got = aj_trace_closed(t, s, kk, side)
            assert abs(got - want) < 1e-8 * max(1, abs(want))


def test_a_equality_iff_relations(rng, samples):
    params, pts = samples[(1, 1, 1)]
    good = build_representation(pts[0], params)
    bad = RepTriple(random_sl2(rng), random_sl2(rng), random_sl2(rng), params)
    for rep in (good, bad):
        assert (a_spread(a_matrices(rep)) < 1e-8) == (relation_residual(rep) < 1e-8)


# -- component systems ------------------------------------------------------------

def test_systems_for_001():
    params = PretzelParams(0, 0, 1)
    systems = {s.label: s for s in component_systems(params)}
    assert list(systems) == ["X0_1", "X0_2", "X1_1", "X1_2", "X1_3", "X2(0,0,0)", "X3"]
    e1 = s1 + s2 + s3
    assert x3_equations(params) == [lam - 2 - s1, lam - 2 - s2, s3**2 - s3 * lam + e1 - 2]
    assert systems["X3"].equations[-1] == ambient_equation()


@pytest.mark.parametrize("ks", [(0, 0, 1), (1, 2, 2), (2, 1, 3), (-1, 1, 1)])
def test_every_system_contains_ambient(ks):
    amb = ambient_equation()
    params = PretzelParams(*ks)
    for s in component_systems(params):
        assert amb in s.equations
        if s.label.startswith("X2("):
            h = s.extra["h"]
            assert 0 <= h[0] <= ks[0] and 0 <= h[1] <= ks[1] and 0 <= h[2] <= ks[2] - 1


def test_x1_uses_vanishing_beta3():
    params = PretzelParams(1, 1, 2)
    b3 = abg(2, "s3")[1]
    systems = {s.label: s for s in component_systems(params)}
    assert b3 in systems["X1_1"].equations and b3 in systems["X1_2"].equations
    assert "alternative_equations" in systems["X1_1"].extra


def _x1_points(ks, which):
    """Points of X1_1 (which = 1) or X1_2 (which = 2) built from the exact
    conditions: a root of gamma - beta on the free tangle, a root of beta3."""
    free = 2 if which == 1 else 1
    _, b, g = abg(ks[free - 1], f"s{free}")
    b3 = abg(ks[2], "s3")[1]
    pts = []
    for so in uni_roots(g - b):
        for r3 in uni_roots(b3):
            t2 = so + r3
            t = cmath.sqrt(t2)
            s = [None, None, r3]
            s[free - 1] = so
            s[2 - free] = t2 - 2
            e1, e2, e3 = sum(s), s[0] * s[1] + s[1] * s[2] + s[2] * s[0], s[0] * s[1] * s[2]
            delta = 4 + e3 + 2 * e2 - e1**2
            bq, cq = -t * (e1 + 2), t2 * (e2 + 4) - delta
            disc = cmath.sqrt(bq * bq - 4 * cq)
            for tau in ((-bq + disc) / 2, (-bq - disc) / 2):
                pts.append(CharPoint(t, *s, tau))
    return pts


@pytest.mark.parametrize("ks", [(1, 1, 2), (2, 1, 2), (1, 2, 3)])
def test_x1_points_are_representations(ks):
    params = PretzelParams(*ks)
    label = {1: "X1_1", 2: "X1_2"}
    for which in (1, 2):
        pts = _x1_points(ks, which)
        assert pts
        for p in pts:
            assert label[which] in membership(p, params)
            _, res = representation_from_point(p, params)
            assert res < 1e-6


# -- X2 ---------------------------------------------------------------------------

PARAM_SET = [(0, 0, 1), (1, 1, 1), (1, 2, 2), (2, 1, 3), (0, 2, 2), (2, 2, 1), (3, 0, 2),
             (1, 1, 4), (-1, 1, 1), (2, 3, 3)]


@pytest.mark.parametrize("ks", PARAM_SET)
def test_x2_count(ks):
    k1, k2, k3 = ks
    entries = enumerate_X2(PretzelParams(*ks))
    assert len(entries) == (k1 + 1) * (k2 + 1) * k3


def test_x2_examples():
    (e,) = enumerate_X2(PretzelParams(0, 0, 1))
    assert np.allclose(e.s, (-2, -2, 2), atol=1e-12)
    assert len(enumerate_X2(PretzelParams(1, 1, 1))) == 4
    es = [e for e in enumerate_X2(PretzelParams(1, 2, 2)) if e.h[2] == 1]
    assert all(abs(e.s[2]) < 1e-12 for e in es)


def test_x2_cosine_values():
    for e in enumerate_X2(PretzelParams(2, 1, 3)):
        h1, h2, h3 = e.h
        assert abs(e.s[0] - 2 * math.cos((2 * h1 + 1) * math.pi / 5)) < 1e-12
        assert abs(e.s[1] - 2 * math.cos((2 * h2 + 1) * math.pi / 3)) < 1e-12
        assert abs(e.s[2] - 2 * math.cos(h3 * math.pi / 3)) < 1e-12


@pytest.mark.parametrize("ks", [(1, 1, 2), (1, 2, 2), (2, 1, 3)])
def test_x2_interior_entries_verify(ks):
    params = PretzelParams(*ks)
    for e, rep in zip(enumerate_X2(params), adjudicate_X2(params)):
        interior = e.h[0] < ks[0] and e.h[1] < ks[1] and e.h[2] >= 1
        assert interior == (not e.endpoint)
        if interior:
            assert max(e.exact_residuals) < 1e-10
            assert rep["verified"] and rep["max_residual"] < 1e-8
        else:
            assert rep["status"] == "unverified"


def test_x2_conic_point_membership():
    params = PretzelParams(1, 1, 2)
    e = next(e for e in enumerate_X2(params) if not e.endpoint)
    t = 0.9 + 0.1j
    for tau in conic_taus(e, t):
        p = CharPoint(t, *e.s, tau)
        assert membership(p, params) == ["X2({},{},{})".format(*e.h)]
        rep = build_representation(p, params)
        assert relation_residual(rep) < 1e-8


# -- membership and sampling ------------------------------------------------------

def test_identity_point_matches_nothing():
    assert membership(CharPoint(2, 2, 2, 2, 8), PretzelParams(0, 0, 1)) == []
    with pytest.raises(ReconstructionError):
        build_representation(CharPoint(2, 2, 2, 2, 8), PretzelParams(0, 0, 1))


def test_samples_are_x3_only(samples):
    for ks, (params, pts) in samples.items():
        assert len(pts) == 20
        for p in pts:
            assert membership(p, params) == ["X3"]
            assert abs(p.t) > 1e-6
            assert abs(x3_excluded_locus().evaluate(p.assignment())) > 1e-6
            for eq in x3_equations(params):
                assert abs(eq.evaluate(p.assignment())) < 1e-8 * max(1, abs(p.lam) ** 4)


def test_sampling_deterministic():
    params = PretzelParams(1, 1, 1)
    a = sample_X3(params, 6, seed=3)
    b = sample_X3(params, 6, seed=3)
    assert [p.to_json() for p in a] == [p.to_json() for p in b]
    c = sample_X3(params, 6, seed=4)
    assert [p.to_json() for p in a] != [p.to_json() for p in c]


def test_solve_at_t_matches_hand_reduction():
    # (0,0,1), t = 1: s1 = s2 = lam - 2 leaves two equations in (s3, lam)
    S3, L = sympy.symbols("s3 lam")
    a = L - 2
    e1, e2, e3 = 2 * a + S3, a * a + 2 * a * S3, a * a * S3
    delta = 4 + e3 + 2 * e2 - e1**2
    eqs = [S3**2 - S3 * L + e1 - 2, L**2 - (e1 + 2) * L + e2 + 4 - delta]
    want = []
    for sol in sympy.solve(eqs, [S3, L], dict=True):
        if L not in sol:  # the excluded line s3 = 2, lam free
            assert sol[S3] == 2
            continue
        v3, vl = complex(sol[S3]), complex(sol[L])
        if abs(v3 - 2) > 1e-9:  # the excluded locus sigma1 + 2 - 2 lam = s3 - 2
            want.append((v3, vl))
    got, _ = solve_at_t(PretzelParams(0, 0, 1), Fraction(1))
    assert len(got) == len(want)
    for z in got:
        assert abs(z[0] - z[3] + 2) < 1e-10 and abs(z[1] - z[3] + 2) < 1e-10
        assert min(abs(z[2] - v3) + abs(z[3] - vl) for v3, vl in want) < 1e-10


# -- t = 0 --------------------------------------------------------------------------

def _t0_point(s, sign=1):
    s = [complex(x) for x in s]
    e1 = sum(s)
    e2 = s[0] * s[1] + s[1] * s[2] + s[2] * s[0]
    delta = 4 + s[0] * s[1] * s[2] + 2 * e2 - e1**2
    return CharPoint(0, *s, sign * cmath.sqrt(delta))


def test_classify_t0_examples():
    with pytest.raises(ValueError):
        classify_t0(CharPoint(1, 0, 0, 0, 0), PretzelParams(1, 1, 1))
    # k_j = 0: gamma - beta = 1, so bullet 1 never holds
    assert 1 not in classify_t0(_t0_point((0.3, -0.4, 0)), PretzelParams(0, 0, 1))
    assert classify_t0(_t0_point((1, 1, 0)), PretzelParams(1, 1, 1)) == {1}
    # off kappa = delta
    assert classify_t0(CharPoint(0, 1, 1, 0, 2j), PretzelParams(1, 1, 1)) == frozenset()


def test_bullet2_with_tau_matches_x0_1():
    params = PretzelParams(1, 1, 2)
    b3_roots = uni_roots(abg(2, "s3")[1])
    x01 = next(s for s in component_systems(params) if s.label == "X0_1")
    # gamma_j + beta_j = s + 1 for k_j = 1: s = -1
    for r3 in b3_roots:
        p = _t0_point((-1, -1, r3))
        bullets = classify_t0(p, params)
        assert (2 in bullets and abs(p.tau) > 1e-6) == satisfies(x01, p)
