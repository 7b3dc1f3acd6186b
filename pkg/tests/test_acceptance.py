"""One test per acceptance criterion.  Each prints a single PASS/FAIL line
with its measurement and wall time, then asserts."""

import itertools
import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from pretzelchar.apoly import (
    b3_traces_closed,
    b3_traces_direct,
    longitude_trace_residual,
    hard_apoly,
    longitude_matrix,
    peripheral_pair,
    peripheral_samples,
    verify_apoly,
)
from pretzelchar.charvariety import (
    CharPoint,
    PretzelParams,
    a_matrices,
    adjudicate_X2,
    aj_trace_closed,
    classify_t0,
    conic_taus,
    enumerate_X2,
    representation_from_point,
    sample_X3,
)
from pretzelchar.chebyshev import omega_poly
from pretzelchar.polycore import MultiPoly, content_primitive, square_free, uni_roots
from pretzelchar.sl2 import (
    TraceData,
    lemma21_residual,
    max_norm,
    power_direct,
    power_via_omega,
    seven_traces,
    triple_from_traces,
)

from conftest import common_trace_triple, random_sl2

DESK = [(0, 0, 1), (1, 1, 1), (1, 2, 2)]


@pytest.fixture
def report(capsys):
    start = time.perf_counter()

    def emit(criterion, ok, detail, limit):
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail} "
                  f"({elapsed:.2f}s, limit {limit:g}s)")
        return ok

    return emit


@pytest.fixture(scope="module")
def desk_samples():
    """20 X3 points per desk knot with their representation residuals."""
    out = {}
    for ks in DESK:
        params = PretzelParams(*ks)
        rows = []
        for p in sample_X3(params, 20, seed=2024):
            rep, res = representation_from_point(p, params)
            rows.append((p, rep, res))
        out[ks] = (params, rows)
    return out


def _accepted(desk_samples):
    for params, rows in desk_samples.values():
        for p, rep, res in rows:
            if res < 1e-8:
                yield params, p, rep


# -- 1 --------------------------------------------------------------------------------

def test_criterion_1_omega_identities(report):
    t = MultiPoly.var("t")
    bad = []
    for k in range(-12, 13):
        wk, wm, wp = omega_poly(k), omega_poly(k - 1), omega_poly(k + 1)
        if not (wk + omega_poly(-k)).is_zero():
            bad.append((k, "odd"))
        if not (wp - t * wk + wm).is_zero():
            bad.append((k, "recursion"))
        if wk * wk - t * wk * wm + wm * wm != 1:
            bad.append((k, "determinant"))
    ok = report(1, not bad, f"exact identities for |k| <= 12, failures {bad}", 1.0)
    assert ok


# -- 2 --------------------------------------------------------------------------------

def test_criterion_2_power_law(report):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        X = random_sl2(rng)
        for k in range(-6, 7):
            A, B = power_via_omega(X, k), power_direct(X, k)
            worst = max(worst, np.max(np.abs(A - B)) / max(1.0, np.max(np.abs(B))))
    ok = report(2, worst < 1e-9, f"max relative entry error {worst:.2e} (< 1e-9)", 1.0)
    assert ok


# -- 3 --------------------------------------------------------------------------------

def test_criterion_3_trace_identities(report):
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        worst = max(worst, *lemma21_residual(random_sl2(rng), random_sl2(rng)))
    ok = report(3, worst < 1e-9, f"max residual {worst:.2e} (< 1e-9)", 1.0)
    assert ok


# -- 4 --------------------------------------------------------------------------------

def _word_trace(mats, word):
    M = np.eye(2, dtype=complex)
    for i, e in word:
        M = M @ power_via_omega(mats[i], e)
    return np.trace(M)


def test_criterion_4_triple_realization(report):
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        mats = common_trace_triple(rng)
        want = seven_traces(*mats)
        got = seven_traces(*triple_from_traces(TraceData.from_matrices(*mats)))
        worst = max(worst, np.max(np.abs(got - want) / np.maximum(1, np.abs(want))))
    mats = common_trace_triple(rng)
    rebuilt = triple_from_traces(TraceData.from_matrices(*mats))
    worst_word = 0.0
    for _ in range(20):
        word = [(int(rng.integers(0, 3)), int(rng.choice([-2, -1, 1, 2]))) for _ in range(8)]
        want = _word_trace(mats, word)
        worst_word = max(worst_word, abs(_word_trace(rebuilt, word) - want) / max(1, abs(want)))
    ok = report(4, worst < 1e-8 and worst_word < 1e-7,
                f"round trip {worst:.2e} (< 1e-8), 20 words {worst_word:.2e} (< 1e-7)", 5.0)
    assert ok


# -- 5 --------------------------------------------------------------------------------

def test_criterion_5_end_to_end(report):
    parts, ok = [], True
    for ks in DESK:
        params = PretzelParams(*ks)
        pts = sample_X3(params, 20, seed=5)
        res = [representation_from_point(p, params)[1] for p in pts]
        good = sum(r < 1e-8 for r in res)
        ill = [f"{r:.1e}" for r in res if r >= 1e-8]
        ok &= len(pts) >= 20 and good >= 0.95 * len(pts)
        parts.append(f"{params.knot_name} {good}/{len(pts)} ill-conditioned {ill}")
    ok = report(5, ok, "; ".join(parts), 60.0)
    assert ok


# -- 6 --------------------------------------------------------------------------------

def test_criterion_6_closed_trace_forms(report, desk_samples):
    worst_a = worst_b = 0.0
    n = 0
    for params, p, rep in _accepted(desk_samples):
        n += 1
        A = a_matrices(rep)
        pair_s = {1: p.s1, 2: p.s2, 3: p.s3}
        for side in (1, 2, 3):
            want = np.trace(A[side - 1])
            got = aj_trace_closed(p.t, pair_s[side], params.ks[side - 1], side)
            worst_a = max(worst_a, abs(got - want) / max(1, abs(want)))
        closed = np.array(b3_traces_closed(p, params))
        direct = np.array(b3_traces_direct(rep))
        worst_b = max(worst_b, np.max(np.abs(closed - direct) / np.maximum(1, np.abs(direct))))
    ok = report(6, n > 0 and worst_a < 1e-7 and worst_b < 1e-7,
                f"{n} samples, tr A_j {worst_a:.2e}, B3 traces {worst_b:.2e} (< 1e-7)", 60.0)
    assert ok


# -- 7 --------------------------------------------------------------------------------

X2_PARAMS = [(0, 0, 1), (1, 1, 1), (1, 2, 2), (2, 1, 3), (0, 2, 2), (2, 2, 1), (3, 0, 2),
             (1, 1, 4), (2, 3, 3), (1, 0, 2)]


def test_criterion_7_x2_structure(report):
    counts_ok, exact_worst, rel_worst = True, 0.0, 0.0
    interior = endpoints = 0
    statuses = {}
    for ks in X2_PARAMS:
        k1, k2, k3 = ks
        params = PretzelParams(*ks)
        entries = enumerate_X2(params)
        counts_ok &= len(entries) == (k1 + 1) * (k2 + 1) * k3
        for e, verdict in zip(entries, adjudicate_X2(params)):
            if e.endpoint:
                endpoints += 1
                statuses[verdict["status"]] = statuses.get(verdict["status"], 0) + 1
                continue
            interior += 1
            exact_worst = max(exact_worst, *e.exact_residuals)
            rel_worst = max(rel_worst, verdict["max_residual"])
            for tau in conic_taus(e, 0.45 - 0.3j):
                _, res = representation_from_point(CharPoint(0.45 - 0.3j, *e.s, tau), params)
                rel_worst = max(rel_worst, res)
    ok = counts_ok and interior > 0 and exact_worst < 1e-10 and rel_worst < 1e-8
    ok = report(7, ok, f"counts {'ok' if counts_ok else 'WRONG'}; {interior} interior entries: "
                f"exact {exact_worst:.1e} (< 1e-10), relations {rel_worst:.1e} (< 1e-8); "
                f"{endpoints} endpoint entries adjudicated {statuses}", 30.0)
    assert ok


# -- 8 --------------------------------------------------------------------------------

def test_criterion_8_peripheral_system(report, desk_samples):
    worst_c = worst_l1 = worst_24 = 0.0
    n = 0
    for params, p, rep in _accepted(desk_samples):
        n += 1
        pp = peripheral_pair(rep)
        scale = max(1.0, max_norm(longitude_matrix(rep)))
        worst_c = max(worst_c, pp.commutator)
        worst_l1 = max(worst_l1, pp.l1_residual / scale)
        worst_24 = max(worst_24, longitude_trace_residual(pp, rep))
    ok = n > 0 and worst_c < 1e-8 and worst_l1 < 1e-8 and worst_24 < 1e-6
    ok = report(8, ok, f"{n} samples: commutator {worst_c:.1e}, longitude from meridian {worst_l1:.1e} (< 1e-8), "
                f"trace consistency {worst_24:.1e} (< 1e-6)", 60.0)
    assert ok


# -- 9 --------------------------------------------------------------------------------

def _apoly_criterion(ks, other, limit, report):
    params = PretzelParams(*ks)
    result = hard_apoly(params, use_cache=False)
    again = hard_apoly(params, use_cache=False)
    p = result.poly
    integer = all(c.denominator == 1 for c in p.terms.values())
    primitive = content_primitive(p).primitive == p
    sqf = square_free(p) == p
    deterministic = result.to_json() == again.to_json()
    own = peripheral_samples(params, 20, seed=9)
    foreign = peripheral_samples(PretzelParams(*other), 20, seed=9)
    on = verify_apoly(result, own, tol=1e-6, factor_report=False)
    off = verify_apoly(result, foreign, tol=1e-6, factor_report=False)
    ok = (not p.is_zero() and integer and primitive and sqf and deterministic
          and on.n_samples >= 20 and on.n_fail == 0 and off.n_samples >= 20
          and off.n_pass == 0)
    return report(9, ok, f"{params.knot_name}: {len(p)} terms, integer={integer}, "
                  f"primitive={primitive}, square-free={sqf}, deterministic={deterministic}; "
                  f"vanishes {on.n_pass}/{on.n_samples} (max {on.max_scaled_residual:.1e}); "
                  f"negative control fails {off.n_fail}/{off.n_samples}", limit)


def test_criterion_9_apoly_001(report):
    assert _apoly_criterion((0, 0, 1), (1, 1, 1), 120.0, report)


@pytest.mark.slow
def test_criterion_9_apoly_111(report):
    assert _apoly_criterion((1, 1, 1), (0, 0, 1), 600.0, report)


# -- 10 --------------------------------------------------------------------------------

def _sigma(s):
    s1, s2, s3 = s
    return s1 + s2 + s3, s1 * s2 + s2 * s3 + s3 * s1, s1 * s2 * s3


def _delta(s):
    e1, e2, e3 = _sigma(s)
    return 4 + e3 + 2 * e2 - e1 * e1


def _point(s, tau=None):
    s = [complex(x) for x in s]
    if tau is None:
        tau = np.sqrt(complex(_delta(s)))
    return CharPoint(0, *s, tau)


def _roots(poly):
    return uni_roots(poly) if not poly.is_constant() else []


def _real_roots(poly):
    return [r.real for r in _roots(poly) if abs(r.imag) < 1e-9]


def _bullet1_points(ks):
    k1, k2, k3 = ks
    d = [_real_roots(omega_poly(k + 1) - omega_poly(k)) if k else [] for k in (k1, k2)]
    s3s = [2 * math.cos((2 * h + 1) * math.pi / (2 * k3)) for h in range(k3)]
    return [_point((a, b, c), sign * np.sqrt(complex(_delta((a, b, c)))))
            for a in d[0] for b in d[1] for c in s3s for sign in (1, -1)]


def _bullet2_points(ks):
    k1, k2, k3 = ks
    p = [_roots(omega_poly(k + 1) + omega_poly(k)) for k in (k1, k2)]
    b3 = _roots(omega_poly(k3))
    return [_point((a, b, c)) for a in p[0] for b in p[1] for c in b3]


def _bullet3_points(ks, grid=400):
    """delta = 0 with s_j = 2cos(theta_j) and a common cosine c of the
    multiplied angles: scan the branch choices and solve delta = 0 in arccos c."""
    ns = (abs(2 * ks[0] + 1), abs(2 * ks[1] + 1), 2 * ks[2])

    def s_of(a, branch):
        return [2 * math.cos((sg * a + 2 * math.pi * m) / n) for n, (m, sg) in zip(ns, branch)]

    choices = [[(m, sg) for m in range(n) for sg in (1, -1)] for n in ns]
    xs = np.linspace(1e-3, math.pi - 1e-3, grid)
    points, seen = [], set()
    for branch in itertools.product(*choices):
        vals = [_delta(s_of(a, branch)) for a in xs]
        for i in range(grid - 1):
            if vals[i] * vals[i + 1] < 0:
                a = brentq(lambda x: _delta(s_of(x, branch)), xs[i], xs[i + 1], xtol=1e-15)
                s = tuple(s_of(a, branch))
                key = tuple(round(x, 9) for x in s)
                if key not in seen:
                    seen.add(key)
                    points.append(_point(s, 0))
    return points


T0_PARAMS = [(1, 1, 1), (1, 2, 2), (2, 1, 3), (0, 1, 2)]


def test_criterion_10_t0_classifier(report):
    rng = np.random.default_rng(10)
    counts = {1: 0, 2: 0, 3: 0}
    wrong = []
    for ks in T0_PARAMS:
        params = PretzelParams(*ks)
        for bullet, build in ((1, _bullet1_points), (2, _bullet2_points), (3, _bullet3_points)):
            for p in build(ks):
                counts[bullet] += 1
                got = classify_t0(p, params)
                if got != {bullet}:
                    wrong.append((ks, bullet, sorted(got)))
    off = 0
    for _ in range(200):
        ks = T0_PARAMS[int(rng.integers(len(T0_PARAMS)))]
        s = rng.normal(size=3) + 1j * rng.normal(size=3)
        tau = complex(*rng.normal(size=2))
        off += classify_t0(CharPoint(0, *s, tau), PretzelParams(*ks)) != frozenset()
    ok = all(counts.values()) and not wrong and off == 0
    ok = report(10, ok, f"constructed points per bullet {counts}, misclassified {wrong[:5]}"
                f"{'...' if len(wrong) > 5 else ''} ({len(wrong)}); "
                f"random off-variety non-empty {off}/200", 5.0)
    assert ok
