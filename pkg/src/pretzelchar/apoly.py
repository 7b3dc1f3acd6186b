"""Peripheral data and the X3 part of the A-polynomial.

Conventions: u is the upper-left entry of rho(meridian) = X1 once X1 is upper
triangular, w the upper-left entry of rho(longitude) in the same frame, and
t = u + 1/u.  The polynomial is reported in (u, w).
"""

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .charvariety import (
    CharPoint,
    PretzelParams,
    build_representation,
    sample_X3,
    x3_equations,
)
from .charvariety.invariants import S, delta_poly, sigma_polys
from .charvariety.relations import y_matrices
from .chebyshev import omega_eval, omega_poly
from .errors import (
    PretzelError,
    ReconstructionError,
    SizeEnvelopeError,
    ZeroResultantError,
)
from .polycore import MultiPoly, content_primitive, poly_gcd, primitive, square_free
from .polycore.elimination import eliminate
from .sl2 import DEFAULT_TOL, max_norm, meridian_eigenvalue, power_via_omega as pw, sl2_inv

U, W, T, LAM = (MultiPoly.var(v) for v in ("u", "w", "t", "lam"))

DEFAULT_ORDERS = (
    ("s1", "s2", "s3", "lam"),
    ("s3", "s1", "s2", "lam"),
    ("lam", "s1", "s2", "s3"),
    ("s2", "s1", "s3", "lam"),
)
CACHE_VERSION = 1


# -- the longitude ---------------------------------------------------------------

@dataclass(frozen=True)
class GroupWord:
    """Letters (generator index, exponent) in the representation generators.

    Index 3 stands for X3 = rho(x3^-1), so the knot-group letter x3^e is
    stored as (3, -e).
    """

    letters: tuple

    def exponent_sum(self):
        return sum(e for _, e in self.letters)

    def __len__(self):
        return len(self.letters)


def _block(pair, n):
    """(a b)^n for letters a, b, expanded."""
    (i, e), (j, f) = pair
    if n >= 0:
        return [(i, e), (j, f)] * n
    return [(j, -f), (i, -e)] * (-n)


def longitude_word(params):
    """The longitude commuting with the meridian x1, letter by letter."""
    k1, k2, k3 = params.ks
    x1x2inv = ((1, 1), (2, -1))          # x1 x2^-1     -> X1 X2^-1 = Y3
    x3inv_x1inv = ((3, 1), (1, -1))      # x3^-1 x1^-1  -> X3 X1^-1 = Y2
    x2x3 = ((2, 1), (3, -1))             # x2 x3        -> X2 X3^-1 = Y1
    letters = (
        _block(x1x2inv, -k3)
        + _block(x3inv_x1inv, k2)
        + _block(x2x3, -k1 - 1)
        + _block(x1x2inv, k3)
        + _block(x2x3, -k1)
        + _block(x3inv_x1inv, k2 + 1)
    )
    return GroupWord(tuple(letters))


def framing_shift(params):
    """n with preferred longitude = longitude * meridian^n.

    The knot-group exponent sum of the longitude word (x3 letters flipped
    back) is its linking number with the knot; the preferred longitude has
    linking number 0.
    """
    return -sum(-e if i == 3 else e for i, e in longitude_word(params).letters)


def reframe(poly, shift):
    """Rewrite A(u, w) in w' = w u^shift: u^m A(u, w' u^-shift), primitive,
    with the smallest m that clears denominators."""
    poly = poly.with_vars(("u", "w"))
    terms = {}
    for (a, b), c in poly.terms.items():
        terms[(a - shift * b, b)] = c
    low = min(e[0] for e in terms)
    return content_primitive(
        MultiPoly(("u", "w"), {(a - low, b): c for (a, b), c in terms.items()})).primitive


def evaluate_word(word, rep):
    mats = rep.mats
    out = np.eye(2, dtype=np.complex128)
    for i, e in word.letters:
        out = out @ pw(mats[i - 1], e)
    return out


def longitude_matrix(rep):
    """Y3^-k3 Y2^k2 Y1^(-k1-1) Y3^k3 Y1^-k1 Y2^(k2+1)."""
    k1, k2, k3 = rep.params.ks
    Y1, Y2, Y3 = y_matrices(rep)
    return (pw(Y3, -k3) @ pw(Y2, k2) @ pw(Y1, -k1 - 1)
            @ pw(Y3, k3) @ pw(Y1, -k1) @ pw(Y2, k2 + 1))


# -- peripheral eigenvalues -------------------------------------------------------

class PeripheralError(PretzelError):
    pass


@dataclass(frozen=True)
class PeripheralPair:
    u: complex
    w: complex
    commutator: float = 0.0
    l1_residual: float = 0.0

    def to_json(self):
        return {"u": [self.u.real, self.u.imag], "w": [self.w.real, self.w.imag]}

    @classmethod
    def from_json(cls, data):
        return cls(complex(*data["u"]), complex(*data["w"]))


def _eigenframe(X, u):
    """Q with Q^-1 X Q upper triangular and u in the upper-left corner."""
    a, b, c, d = X[0, 0], X[0, 1], X[1, 0], X[1, 1]
    v1, v2 = np.array([b, u - a]), np.array([u - d, c])
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    v = v / np.linalg.norm(v)
    return np.array([[v[0], -np.conj(v[1])], [v[1], np.conj(v[0])]], dtype=np.complex128)


def l1_residual(L, X1, u, w):
    """|| L - ((w - 1/w) X1 + (u/w - w/u) I) / (u - 1/u) ||, max entry."""
    den = u - 1 / u
    rhs = ((w - 1 / w) * X1 + (u / w - w / u) * np.eye(2)) / den
    return max_norm(L - rhs)


def peripheral_pair(rep, tol=DEFAULT_TOL, other=False):
    """(u, w) in a frame where X1 is upper triangular.

    The canonical frame has |u| >= 1; ``other`` uses the other eigenvalue,
    which gives (1/u, 1/w).
    """
    X1 = rep.X1
    t = X1[0, 0] + X1[1, 1]
    if abs(t - 2) < tol or abs(t + 2) < tol:
        raise PeripheralError("meridian is parabolic (u = +-1); the longitude formula degenerates")
    u = meridian_eigenvalue(t, other)
    L = longitude_matrix(rep)
    comm = max_norm(L @ X1 - X1 @ L) / max(1.0, max_norm(L) * max_norm(X1))
    if comm >= tol:
        raise PeripheralError(f"longitude does not commute with the meridian ({comm:.2e})")
    Q = _eigenframe(X1, u)
    Qi = Q.conj().T
    T = Qi @ L @ Q
    # the small diagonal entry loses relative precision; invert the large one
    w = complex(T[0, 0]) if abs(T[0, 0]) >= abs(T[1, 1]) else complex(1 / T[1, 1])
    return PeripheralPair(complex(u), w, comm, l1_residual(T, Qi @ X1 @ Q, u, w))


def b3_matrix(rep):
    k1, k2, _ = rep.params.ks
    Y1, Y2, _ = y_matrices(rep)
    return pw(Y1, -k1) @ pw(Y2, k2 + 1)


def b3_traces_direct(rep):
    """(tr B3 X2^-1, tr B3 X1, tr B3) from the matrices."""
    B3 = b3_matrix(rep)
    return (complex(np.trace(B3 @ sl2_inv(rep.X2))), complex(np.trace(B3 @ rep.X1)),
            complex(np.trace(B3)))


def _ratio(k, s, lam, e1, eps):
    """beta/(lam - 2 - s), or the equal gamma/(e1 - s - lam) when the first
    denominator is smaller (the X3 equation makes the two agree)."""
    d1, d2 = lam - 2 - s, e1 - s - lam
    if max(abs(d1), abs(d2)) < eps:
        raise ZeroDivisionError("both denominators vanish; the closed forms are undefined")
    if abs(d1) >= abs(d2):
        return omega_eval(k, s) / d1
    return omega_eval(k + 1, s) / d2


def b3_traces_closed(p, params, eps=1e-12):
    """Closed forms of (tr B3 X2^-1, tr B3 X1, tr B3) at a point of X3.

    The quadratic factor is kappa in lam-form, lam^2 - (e1 + 2) lam + e2 + 4,
    which is kappa(t, tau) / t^2.
    """
    k1, k2, _ = params.ks
    t = p.t
    lam = p.lam
    s1, s2, s3 = p.s
    e1 = s1 + s2 + s3
    e2 = s1 * s2 + s2 * s3 + s3 * s1
    kappa = lam * lam - (e1 + 2) * lam + e2 + 4
    f = _ratio(k1, s1, lam, e1, eps) * _ratio(k2, s2, lam, e1, eps)
    return (t * f * (e1 + 2 - lam - t * t) * kappa, t * f * (lam - t * t) * kappa,
            f * (e1 + 2 - 2 * t * t) * kappa)


def longitude_trace_residual(pair, rep):
    """(w+1) tr(B3 X2^-1) - (u + w/u) tr(B3), scaled by its larger side."""
    tb, _, tr = b3_traces_direct(rep)
    u, w = pair.u, pair.w
    lhs, rhs = (w + 1) * tb, (u + w / u) * tr
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


# -- the eliminating system ---------------------------------------------------------

def clear_t(p):
    """u^d p((u^2 + 1)/u) for d = deg_t p, with common powers of u removed."""
    coeffs = p.coeffs_in("t")
    d = len(coeffs) - 1
    num = U**2 + 1
    out = MultiPoly.zero(("u",))
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            out = out + c * num**k * U ** (d - k)
    return _strip_u_power(out)


def _strip_u_power(p):
    if p.is_zero() or "u" not in p.vars:
        return p
    i = p.vars.index("u")
    m = min(e[i] for e in p.terms)
    if m == 0:
        return p
    return MultiPoly(p.vars, {e[:i] + (e[i] - m,) + e[i + 1:]: c for e, c in p.terms.items()})


def ap_system(params):
    """The two tangle equations, the tangle-3 equation, the conic in lam and
    the peripheral equation, as polynomials in (u, w, s1, s2, s3, lam) with
    t = (u^2 + 1)/u cleared."""
    e1, e2, _ = sigma_polys()
    ap1, ap1b, ap2 = x3_equations(params)
    ap3 = T**2 * (LAM**2 - (e1 + 2) * LAM + e2 + 4) - delta_poly()
    # u * [(w+1) t (sigma1 + 2 - lam - t^2) - (u + w/u)(sigma1 + 2 - 2t^2)]
    ap4 = U * (W + 1) * T * (e1 + 2 - LAM - T**2) - (U**2 + W) * (e1 + 2 - 2 * T**2)
    return [ap1, ap1b, ap2, clear_t(ap3), clear_t(ap4)]


def eliminate_chain(system, order, divide_common=False, steps=None, method="auto"):
    """Eliminate ``order`` from ``system``; return the primitive square-free
    polynomial left in the remaining variables.

    A zero resultant raises ZeroResultantError naming the stage.  Several
    surviving polynomials are combined by their gcd.
    """
    result = eliminate(system, order, divide_common=divide_common, method=method)
    if steps is not None:
        steps.extend(result.steps)
    left = [p for p in result.remaining if not p.is_constant()]
    if not left:
        raise ZeroResultantError("elimination left no non-constant polynomial",
                                 stage=len(order))
    g = left[0]
    for p in left[1:]:
        g = poly_gcd(g, p)
    if g.is_constant():
        raise ZeroResultantError("surviving polynomials have no common factor",
                                 stage=len(order))
    return content_primitive(g).primitive


# -- the A-polynomial hard part --------------------------------------------------------

@dataclass
class APolyResult:
    poly: MultiPoly
    elimination_order: list
    steps: list
    knot: PretzelParams
    divide_common: bool = False
    attempts: list = field(default_factory=list)

    def to_json(self):
        return {
            "knot": self.knot.to_json(),
            "order": list(self.elimination_order),
            "apoly": self.poly.to_json(),
            "apoly_text": self.poly.to_text(),
            "divide_common": self.divide_common,
            "steps": self.steps,
            "attempts": self.attempts,
        }

    @classmethod
    def from_json(cls, data):
        try:
            knot = PretzelParams(**data["knot"])
            return cls(
                MultiPoly.from_json(data["apoly"]),
                list(data["order"]),
                list(data.get("steps", [])),
                knot,
                bool(data.get("divide_common", False)),
                list(data.get("attempts", [])),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed A-polynomial JSON: {exc}") from exc


def check_envelope(params):
    k1, k2, k3 = params.ks
    if abs(k1) <= 2 and abs(k2) <= 2 and 1 <= k3 <= 2:
        return
    degs = [omega_poly(k + 1).degree("t") + 1 for k in (k1, k2, k3)]
    bound = 1
    for d in degs + [2, 3]:
        bound *= d + 1
    raise SizeEnvelopeError(
        f"{params.knot_name} is outside the desk-scale envelope (|k1|, |k2| <= 2, k3 <= 2); "
        f"a Bezout-type degree estimate for the eliminant is {bound}"
    )


def cache_dir(override=None):
    if override:
        return Path(override)
    env = os.environ.get("APOLY_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "pretzelchar" / "apoly"


def cache_key(params, order):
    payload = json.dumps({"k": list(params.ks), "order": list(order) if order else "default",
                          "version": CACHE_VERSION}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _atomic_write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _final_normalize(p, steps):
    """Primitive, square-free over all variables, positive leading coefficient.

    No factor is removed; spurious ones are only reported by verify_apoly.
    """
    before = p
    p = square_free(p)
    note = {"stage": "final", "square_free": True, "reduced": p != before, "terms": len(p),
            "degrees": {v: p.degree(v) for v in p.used_vars()}}
    steps.append(note)
    return p


def hard_apoly(params, order=None, use_cache=True, cache=None):
    """The X3 part of the A-polynomial by resultant elimination of ``ap_system``.

    Orders are tried in sequence (``order`` alone if given).  Each order is
    first run plainly; on a vanishing resultant it is rerun dividing each
    pivot/partner pair by their gcd.  Results are cached on disk.
    """
    check_envelope(params)
    path = cache_dir(cache) / f"{cache_key(params, order)}.json"
    if use_cache and path.exists():
        try:
            return APolyResult.from_json(json.loads(path.read_text()))
        except (ValueError, json.JSONDecodeError):
            pass
    system = ap_system(params)
    orders = [tuple(order)] if order else list(DEFAULT_ORDERS)
    attempts = []
    for ord_ in orders:
        if sorted(ord_) != sorted(("s1", "s2", "s3", "lam")):
            raise ValueError(f"order must be a permutation of s1, s2, s3, lam: {ord_}")
        for divide in (False, True):
            steps = []
            try:
                poly = eliminate_chain(system, ord_, divide_common=divide, steps=steps)
            except ZeroResultantError as exc:
                attempts.append({"order": list(ord_), "divide_common": divide,
                                 "error": str(exc), "stage": exc.stage})
                continue
            if poly.used_vars() != ("u", "w"):
                attempts.append({"order": list(ord_), "divide_common": divide,
                                 "error": f"result in {poly.used_vars()}, not (u, w)"})
                continue
            poly = _final_normalize(poly, steps)
            attempts.append({"order": list(ord_), "divide_common": divide, "ok": True})
            result = APolyResult(poly, list(ord_), steps, params, divide, attempts)
            if use_cache:
                _atomic_write(path, json.dumps(result.to_json(), sort_keys=True))
            return result
    raise ZeroResultantError(f"every elimination order failed for {params.knot_name}: {attempts}")


# -- verification ------------------------------------------------------------------------

def scaled_apoly_residual(poly, u, w):
    f = poly.compile(("u", "w"))
    x = [u, w]
    return abs(f(x)) / max(f.magnitude(x), 1e-300)


FACTOR_TERM_LIMIT = 400


def _content_in(poly, var):
    """gcd of the coefficients of ``poly`` as a polynomial in ``var``."""
    g = None
    for c in poly.coeffs_in(var):
        if c.is_zero():
            continue
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            break
    return primitive(g)


def _sympy_factors(poly):
    from sympy import Poly, symbols

    vars = poly.used_vars()
    if not vars:
        return []
    syms = symbols(" ".join(vars), seq=True)
    sp = Poly.from_dict({e: int(c) for e, c in poly.with_vars(vars).terms.items()}, *syms)
    _, factors = sp.factor_list()
    return [MultiPoly(vars, {m: int(c) for m, c in f.terms()}) for f, _ in factors]


def split_factors(poly):
    """Factors of ``poly`` as far as is cheap: the irreducible factors of its
    content in u and in w, then the rest, itself factored only when small.

    Returns (factors, complete) where ``complete`` says the list is a full
    irreducible factorization.
    """
    poly = poly.with_vars(("u", "w"))
    cw = _content_in(poly, "u")      # free of u
    cu = _content_in(poly, "w")      # free of w
    core = poly.exact_div(cw).exact_div(cu)
    out = _sympy_factors(cw) + _sympy_factors(cu)
    complete = core.is_constant() or len(core) <= FACTOR_TERM_LIMIT
    if core.is_constant():
        pass
    elif complete:
        out += _sympy_factors(core)
    else:
        out.append(core)
    return out, complete


def _factor_report(poly, samples, tol):
    """Factors vanishing at none of the samples (texts), and whether the
    factor list was a full factorization."""
    if not samples:
        return None, False
    factors, complete = split_factors(poly)
    unsupported = [f.to_text() for f in factors
                   if all(scaled_apoly_residual(f, s.u, s.w) >= tol for s in samples)]
    return unsupported, complete


@dataclass
class VerificationReport:
    n_samples: int
    n_pass: int
    n_fail: int
    residuals: list
    max_scaled_residual: float
    unsupported_factors: list = None
    factorization_complete: bool = False

    @property
    def summary(self):
        return f"{self.n_pass}/{self.n_samples} samples pass"

    def to_json(self):
        return {
            "n_samples": self.n_samples,
            "n_pass": self.n_pass,
            "n_fail": self.n_fail,
            "max_scaled_residual": self.max_scaled_residual,
            "residuals": self.residuals,
            "unsupported_factors": bool(self.unsupported_factors),
            "unsupported_factor_list": self.unsupported_factors,
            "factorization_complete": self.factorization_complete,
            "summary": self.summary,
        }


def verify_apoly(result, samples, tol=1e-6, factor_report=True):
    """Scaled residual |A(u, w)| / (largest monomial) at each peripheral pair."""
    poly = result.poly if isinstance(result, APolyResult) else result
    res = [scaled_apoly_residual(poly, s.u, s.w) for s in samples]
    n_pass = sum(r < tol for r in res)
    unsupported, complete = _factor_report(poly, samples, tol) if factor_report else (None, False)
    return VerificationReport(len(res), n_pass, len(res) - n_pass, res,
                              max(res) if res else 0.0, unsupported, complete)


def peripheral_samples(params, count, seed=0, tol=DEFAULT_TOL, both_frames=False):
    """Peripheral pairs from representations at sampled X3 points.

    Points whose representation or peripheral data fail the checks are
    skipped; with ``both_frames`` the pair from the other eigenvalue is
    appended after each canonical pair.
    """
    out = []
    pts = sample_X3(params, count, seed, tol)
    for p in pts:
        try:
            rep = build_representation(p, params, tol)
            out.append(peripheral_pair(rep, tol))
            if both_frames:
                out.append(peripheral_pair(rep, tol, other=True))
        except (ReconstructionError, PeripheralError):
            continue
    return out


def point_from_pair_data(p):
    """CharPoint from a JSON sample record (for CLI round trips)."""
    return CharPoint.from_json(p)


__all__ = [
    "APolyResult",
    "DEFAULT_ORDERS",
    "GroupWord",
    "PeripheralError",
    "PeripheralPair",
    "VerificationReport",
    "ap_system",
    "b3_matrix",
    "b3_traces_closed",
    "b3_traces_direct",
    "clear_t",
    "eliminate_chain",
    "longitude_trace_residual",
    "evaluate_word",
    "framing_shift",
    "reframe",
    "hard_apoly",
    "l1_residual",
    "longitude_matrix",
    "longitude_word",
    "peripheral_pair",
    "peripheral_samples",
    "verify_apoly",
]

S_VARS = tuple(str(s) for s in S)
