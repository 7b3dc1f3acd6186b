"""Sparse multivariate polynomials with exact rational coefficients.

Exponent tuples are stored against a variable list kept in the package-wide
canonical order ``(u, w, t, s1, s2, s3, lam, tau)``; any other name sorts
after those, alphabetically.  Terms are ordered graded-lexicographically over
that list, which fixes the leading term, the printed form and the JSON form.
"""

from fractions import Fraction
from math import lcm
from types import MappingProxyType

import numpy as np

Rational = Fraction

CANONICAL_ORDER = ("u", "w", "t", "s1", "s2", "s3", "lam", "tau")
_CANON_INDEX = {name: i for i, name in enumerate(CANONICAL_ORDER)}


def var_key(name):
    return (_CANON_INDEX.get(name, len(CANONICAL_ORDER)), name)


def canonical_vars(names):
    return tuple(sorted(set(names), key=var_key))


def term_key(exp):
    """Graded-lex sort key; larger key means larger term."""
    return (sum(exp), exp)


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, (float, np.floating)):
        return Fraction(float(c))
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class MultiPoly:
    """Immutable polynomial in named variables over the rationals.

    >>> x, y = MultiPoly.var("x"), MultiPoly.var("y")
    >>> str((x + y) ** 2 - 2 * x * y)
    'x^2 + y^2'
    """

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, vars=(), terms=None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        order = sorted(range(len(vars)), key=lambda i: var_key(vars[i]))
        ordered = tuple(vars[i] for i in order)
        identity = order == list(range(len(vars)))
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars):
                raise ValueError(f"exponent {exp} does not match variables {vars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if not identity:
                exp = tuple(exp[i] for i in order)
            c = clean.get(exp, 0) + _as_fraction(c)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self._vars = ordered
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, vars, terms):
        # trusted path: vars canonical, exponents aligned, no zero coefficients
        obj = object.__new__(cls)
        obj._vars = vars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name):
        return cls._make((name,), {(1,): Fraction(1)})

    @classmethod
    def const(cls, c, vars=()):
        vars = canonical_vars(vars)
        c = _as_fraction(c)
        return cls._make(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def zero(cls, vars=()):
        return cls._make(canonical_vars(vars), {})

    # -- basic views ---------------------------------------------------------

    @property
    def vars(self):
        return self._vars

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def used_vars(self):
        used = [False] * len(self._vars)
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self._vars, used) if u)

    def is_constant(self):
        return not self.used_vars()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), Fraction(0))

    def degree(self, var):
        if var not in self._vars:
            return 0 if self._terms else -1
        i = self._vars.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def leading_exponent(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=term_key)

    def leading_coefficient(self):
        return self._terms[self.leading_exponent()]

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: term_key(kv[0]), reverse=True)

    # -- variable bookkeeping ------------------------------------------------

    def with_vars(self, vars):
        """Re-express over a (canonical) superset of the used variables."""
        vars = canonical_vars(vars)
        if vars == self._vars:
            return self
        missing = set(self.used_vars()) - set(vars)
        if missing:
            raise ValueError(f"variables {sorted(missing)} still occur")
        pos = [self._vars.index(v) if v in self._vars else None for v in vars]
        terms = {
            tuple(exp[p] if p is not None else 0 for p in pos): c
            for exp, c in self._terms.items()
        }
        return MultiPoly._make(vars, terms)

    def compact(self):
        return self.with_vars(self.used_vars())

    def _aligned(self, other):
        if self._vars == other._vars:
            return self._vars, self._terms, other._terms
        vars = canonical_vars(self._vars + other._vars)
        return vars, self.with_vars(vars)._terms, other.with_vars(vars)._terms

    @staticmethod
    def _coerce(value):
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.const(value)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        vars, a, b = self._aligned(other)
        out = dict(a)
        for exp, c in b.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._make(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPoly._make(self._vars, {})
            return MultiPoly._make(self._vars, {e: v * c for e, v in self._terms.items()})
        vars, a, b = self._aligned(other)
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                out[exp] = out.get(exp, 0) + ca * cb
        return MultiPoly._make(vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, (int, np.integer)):
            return NotImplemented
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.const(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        # scalar division only; polynomial quotients go through exact_div
        c = _as_fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.compact(), other.compact()
        return a._vars == b._vars and a._terms == b._terms

    def __hash__(self):
        if self._hash is None:
            c = self.compact()
            self._hash = hash((c._vars, frozenset(c._terms.items())))
        return self._hash

    # -- structure -----------------------------------------------------------

    def coeffs_in(self, var):
        """Coefficients with respect to ``var``; entry k multiplies var**k."""
        rest = tuple(v for v in self._vars if v != var)
        if var not in self._vars:
            return [MultiPoly._make(rest, dict(self._terms))]
        i = self._vars.index(var)
        buckets = {}
        for exp, c in self._terms.items():
            buckets.setdefault(exp[i], {})[exp[:i] + exp[i + 1:]] = c
        deg = max(buckets, default=0)
        return [MultiPoly._make(rest, buckets.get(k, {})) for k in range(deg + 1)]

    @classmethod
    def from_coeffs(cls, var, coeffs):
        x = cls.var(var)
        out = cls.zero((var,))
        for c in reversed(list(coeffs)):
            out = out * x + c
        return out

    def diff(self, var):
        if var not in self._vars:
            return MultiPoly._make(self._vars, {})
        i = self._vars.index(var)
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return MultiPoly._make(self._vars, out)

    def substitute(self, var, value):
        """Replace ``var`` by ``value`` (a polynomial or an exact number)."""
        if var not in self._vars:
            raise ValueError(f"{var!r} is not a variable of this polynomial")
        value = self._coerce(value)
        coeffs = self.coeffs_in(var)
        out = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            out = out * value + c
        vars = canonical_vars(tuple(v for v in self._vars if v != var) + value.vars)
        return out.with_vars(vars)

    def substitute_many(self, mapping):
        out = self
        for var, value in mapping.items():
            if var in out.vars:
                out = out.substitute(var, value)
        return out

    def exact_div(self, other):
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        vars = canonical_vars(self._vars + other._vars)
        rem = dict(self.with_vars(vars)._terms)
        div = other.with_vars(vars)._terms
        lead = max(div, key=term_key)
        lc = div[lead]
        quot = {}
        while rem:
            e = max(rem, key=term_key)
            shift = tuple(a - b for a, b in zip(e, lead))
            if any(s < 0 for s in shift):
                raise ArithmeticError("polynomial division is not exact")
            q = rem[e] / lc
            quot[shift] = q
            for ed, cd in div.items():
                key = tuple(a + b for a, b in zip(ed, shift))
                v = rem.get(key, 0) - q * cd
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return MultiPoly._make(vars, quot)

    # -- numerics ------------------------------------------------------------

    def evaluate(self, assignment):
        """Nested Horner evaluation at complex values keyed by variable name."""
        used = self.used_vars()
        missing = [v for v in used if v not in assignment]
        if missing:
            raise ValueError(f"no value supplied for {missing}")
        if not self._terms:
            return 0j
        p = self.compact()
        values = [complex(assignment[v]) for v in p.vars]
        return complex(_horner(list(p._terms.items()), values, 0))

    def compile(self, vars=None):
        return PolyFunction(self, vars)

    # -- serialization -------------------------------------------------------

    def to_text(self):
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self._vars, exp) if e
            )
            mag = abs(c)
            if not mono:
                body = _fmt_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self):
        return {
            "vars": list(self._vars),
            "terms": [
                {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
                for exp, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            vars = data["vars"]
            terms = {}
            for t in data["terms"]:
                exp = tuple(t["exp"])
                terms[exp] = terms.get(exp, 0) + Fraction(int(t["num"]), int(t["den"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        return cls(vars, terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"


def _fmt_rational(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _horner(items, values, i):
    if i == len(values):
        return sum((complex(c) for _, c in items), 0j)
    groups = {}
    for exp, c in items:
        groups.setdefault(exp[i], []).append((exp, c))
    x = values[i]
    acc = 0j
    for k in range(max(groups), -1, -1):
        acc = acc * x
        if k in groups:
            acc += _horner(groups[k], values, i + 1)
    return acc


def common_denominator(p):
    return lcm(*(c.denominator for c in p.terms.values())) if len(p) else 1


class PolyFunction:
    """Vectorised numeric view of a MultiPoly for repeated evaluation.

    Used by Newton iterations and root polishing where ``evaluate`` would be
    too slow; values agree with ``MultiPoly.evaluate`` to rounding.
    """

    def __init__(self, poly, vars=None):
        vars = tuple(vars) if vars is not None else poly.used_vars()
        missing = set(poly.used_vars()) - set(vars)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not covered")
        self.vars = vars
        p = poly.with_vars(canonical_vars(vars))
        perm = [p.vars.index(v) for v in vars]
        items = list(p.terms.items())
        self.exps = np.array([[e[i] for i in perm] for e, _ in items], dtype=np.int64).reshape(
            len(items), len(vars)
        )
        self.coeffs = np.array([float(c) for _, c in items], dtype=np.complex128)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.complex128)
        if not len(self.coeffs):
            return 0j
        return complex(np.sum(self.coeffs * np.prod(x[None, :] ** self.exps, axis=1)))

    def gradient(self, x):
        x = np.asarray(x, dtype=np.complex128)
        grad = np.zeros(len(self.vars), dtype=np.complex128)
        if not len(self.coeffs):
            return grad
        for j in range(len(self.vars)):
            e = self.exps.copy()
            mask = e[:, j] > 0
            if not mask.any():
                continue
            factor = e[mask, j].astype(np.complex128)
            e = e[mask]
            e[:, j] -= 1
            grad[j] = np.sum(self.coeffs[mask] * factor * np.prod(x[None, :] ** e, axis=1))
        return grad

    def magnitude(self, x):
        """Largest monomial magnitude at x, the natural scale for residuals."""
        x = np.asarray(x, dtype=np.complex128)
        if not len(self.coeffs):
            return 0.0
        return float(np.max(np.abs(self.coeffs * np.prod(x[None, :] ** self.exps, axis=1))))
