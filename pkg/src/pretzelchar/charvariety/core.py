"""Value types: knot parameters, ambient points, component systems, triples."""

from dataclasses import dataclass, field

import numpy as np

from ..sl2 import as_mat2


@dataclass(frozen=True)
class PretzelParams:
    """(k1, k2, k3) selecting the pretzel knot P(2k1+1, 2k2+1, 2k3)."""

    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        for name in ("k1", "k2", "k3"):
            if not isinstance(getattr(self, name), (int, np.integer)):
                raise TypeError(f"{name} must be an integer")
        if self.k3 < 1:
            raise ValueError("k3 must be at least 1")

    @property
    def ks(self):
        return (self.k1, self.k2, self.k3)

    @property
    def knot_name(self):
        return f"P({2 * self.k1 + 1},{2 * self.k2 + 1},{2 * self.k3})"

    def to_json(self):
        return {"k1": self.k1, "k2": self.k2, "k3": self.k3}


def _c(x):
    return complex(x)


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v):
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)):
        return complex(v)
    raise ValueError(f"cannot read a complex number from {v!r}")


@dataclass(frozen=True)
class CharPoint:
    """A point (t, s1, s2, s3, tau) of the ambient space C^5."""

    t: complex
    s1: complex
    s2: complex
    s3: complex
    tau: complex

    def __post_init__(self):
        for name in ("t", "s1", "s2", "s3", "tau"):
            value = _c(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} is not finite")
            object.__setattr__(self, name, value)

    @property
    def s(self):
        return (self.s1, self.s2, self.s3)

    @property
    def r(self):
        """Trace of X1 X2 X3."""
        return self.t**3 + self.t - self.tau

    @property
    def lam(self):
        if self.t == 0:
            raise ZeroDivisionError("lambda = tau / t is undefined at t = 0")
        return self.tau / self.t

    def assignment(self):
        """Variable values for polynomial evaluation (``lam`` only when t != 0)."""
        out = {"t": self.t, "s1": self.s1, "s2": self.s2, "s3": self.s3, "tau": self.tau}
        if self.t != 0:
            out["lam"] = self.tau / self.t
        return out

    def to_json(self):
        return {k: complex_to_json(getattr(self, k)) for k in ("t", "s1", "s2", "s3", "tau")}

    @classmethod
    def from_json(cls, data):
        return cls(**{k: complex_from_json(data[k]) for k in ("t", "s1", "s2", "s3", "tau")})


@dataclass
class ComponentSystem:
    """A constructible set: equations = 0 and inequations != 0.

    ``selection`` optionally pins variables to numeric windows
    ``(var, center, radius)``; X2 components use it to pick one root of the
    exact conditions.  ``extra`` carries flags and alternative descriptions.
    """

    label: str
    equations: list
    inequations: list = field(default_factory=list)
    notes: str = ""
    selection: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "label": self.label,
            "equations": [p.to_json() for p in self.equations],
            "inequations": [p.to_json() for p in self.inequations],
            "notes": self.notes,
        }
        if self.selection:
            out["selection"] = [
                {"var": v, "center": complex_to_json(c), "radius": r} for v, c, r in self.selection
            ]
        if self.extra:
            out["extra"] = _jsonable(self.extra)
        return out


def _jsonable(obj):
    from ..polycore import MultiPoly

    if isinstance(obj, MultiPoly):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return complex_to_json(obj)
    return obj


@dataclass(frozen=True, eq=False)
class RepTriple:
    """X1 = rho(x1), X2 = rho(x2), X3 = rho(x3^-1) for the knot ``params``."""

    X1: np.ndarray
    X2: np.ndarray
    X3: np.ndarray
    params: PretzelParams

    def __post_init__(self):
        for name in ("X1", "X2", "X3"):
            object.__setattr__(self, name, as_mat2(getattr(self, name)))

    @property
    def mats(self):
        return (self.X1, self.X2, self.X3)
