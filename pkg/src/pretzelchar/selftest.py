"""Quick invariant suites run by ``pretzelchar selftest``.

Each suite returns ``(ok, detail)``.  They are small versions of the test
suite, meant to catch a broken install rather than to certify results.
"""

import numpy as np

from .apoly import hard_apoly, peripheral_samples, verify_apoly
from .charvariety import PretzelParams, build_representation, relation_residual, sample_X3
from .chebyshev import omega_poly
from .polycore import MultiPoly
from .rng import task_rng
from .sl2 import TraceData, lemma21_residual, power_direct, power_via_omega, triple_from_traces

T = MultiPoly.var("t")


def _random_sl2(rng):
    a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
    if abs(a) < 0.1:
        a = 1.0
    return np.array([[a, b], [c, (1 + b * c) / a]])


def omega_identities(kmax=12):
    bad = []
    for k in range(-kmax, kmax + 1):
        wk, wm, wp = omega_poly(k), omega_poly(k - 1), omega_poly(k + 1)
        if not (wk + omega_poly(-k)).is_zero():
            bad.append(("odd", k))
        if not (wp - T * wk + wm).is_zero():
            bad.append(("recursion", k))
        if not (wk * wk - T * wk * wm + wm * wm - 1).is_zero():
            bad.append(("quadratic", k))
    return not bad, f"|k| <= {kmax}, failures: {bad}"


def power_law(n=20, seed=0):
    rng = task_rng(seed, 0)
    worst = 0.0
    for _ in range(n):
        X = _random_sl2(rng)
        for k in range(-6, 7):
            A, B = power_via_omega(X, k), power_direct(X, k)
            worst = max(worst, np.max(np.abs(A - B)) / max(1.0, np.max(np.abs(B))))
    return worst < 1e-9, f"max relative error {worst:.2e}"


def trace_identities(n=20, seed=0):
    rng = task_rng(seed, 1)
    worst = max(max(lemma21_residual(_random_sl2(rng), _random_sl2(rng))) for _ in range(n))
    return worst < 1e-9, f"max residual {worst:.2e}"


def triple_round_trip(n=10, seed=0):
    rng = task_rng(seed, 2)
    worst = 0.0
    for _ in range(n):
        u = complex(rng.normal(), rng.normal()) + 1.5
        D = np.diag([u, 1 / u])
        mats = []
        for _ in range(3):
            P = _random_sl2(rng)
            mats.append(P @ D @ np.linalg.inv(P))
        d = TraceData.from_matrices(*mats)
        got = TraceData.from_matrices(*triple_from_traces(d))
        worst = max(worst, max(abs(getattr(got, f) - getattr(d, f)) / max(1, abs(getattr(d, f)))
                               for f in ("t", "t12", "t23", "t13", "t123")))
    return worst < 1e-8, f"max trace error {worst:.2e}"


def end_to_end(ks=(0, 0, 1), count=5, seed=0):
    params = PretzelParams(*ks)
    res = [relation_residual(build_representation(p, params)) for p in sample_X3(params, count, seed)]
    return max(res) < 1e-8, f"{len(res)} points of X3, max relation residual {max(res):.2e}"


def apoly_small(seed=0):
    params = PretzelParams(0, 0, 1)
    result = hard_apoly(params, use_cache=False)
    report = verify_apoly(result, peripheral_samples(params, 5, seed), factor_report=False)
    return report.n_fail == 0 and report.n_samples > 0, report.summary


SUITES = {
    "omega_identities": omega_identities,
    "power_law": power_law,
    "trace_identities": trace_identities,
    "triple_round_trip": triple_round_trip,
    "end_to_end": end_to_end,
    "apoly_small": apoly_small,
}


def run_all(seed=0):
    out = []
    for name, fn in SUITES.items():
        try:
            kwargs = {"seed": seed} if "seed" in fn.__code__.co_varnames else {}
            ok, detail = fn(**kwargs)
        except Exception as exc:  # a crashing suite is a failing suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"suite": name, "ok": bool(ok), "detail": detail})
    return out
