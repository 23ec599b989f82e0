"""Supercommutative functions on the (1|2)-supercircle.

A :class:`SuperFunction` is a finite sum of monomials ``c * X_m * t1^e1 * t2^e2``
with exact rational coefficients.  ``X_m`` is the m-th basis function of the
even coordinate ring; two derivative models are supported:

``laurent``
    ``X_m = x^m`` with ``d/dx x^m = m x^(m-1)``.
``fourier``
    ``X_m = e^(m x)`` with ``d/dx e^(m x) = m e^(m x)``.  This is the periodic
    model (Fourier modes on the circle, rescaled so that all structure
    constants stay rational).  Products multiply modes in both models.

Odd derivatives are LEFT derivatives with respect to the normal order t1 t2.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

LAURENT = "laurent"
FOURIER = "fourier"
MODELS = (LAURENT, FOURIER)

Key = Tuple[int, int, int]


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1
    MIXED = 2


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# -- helpers on Grassmann bit masks (bit g <-> g-th odd generator) ----------

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_sign(a: int, b: int) -> int:
    """Sign of ``mono(a) * mono(b)`` brought to normal order, 0 if they overlap."""
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        # every generator of ``a`` above ``low`` has to pass it
        swaps += popcount(a & ~(2 * low - 1))
        b ^= low
    return -1 if swaps & 1 else 1


def left_derivative(mask: int, g: int) -> Tuple[int, int]:
    """Left derivative of a normal-ordered monomial: (sign, new mask), sign 0 if absent."""
    bit = 1 << g
    if not mask & bit:
        return 0, mask
    sign = -1 if popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask ^ bit


def dx_factor(model: str, m: int, order: int = 1) -> Tuple[int, int]:
    """``d^order/dx^order X_m = factor * X_new``; returns (factor, new mode)."""
    if model == FOURIER:
        return m ** order, m
    f = 1
    for j in range(order):
        f *= m - j
    return f, m - order


def _to_mask(e1: int, e2: int) -> int:
    return e1 | (e2 << 1)


def _from_mask(mask: int) -> Tuple[int, int]:
    return mask & 1, (mask >> 1) & 1


class SuperFunction:
    """Element of C(S^{1|2}) truncated to finitely many modes.

    Stored as ``{(m, e1, e2): Fraction}`` with zero coefficients pruned.
    Instances are treated as immutable values.
    """

    __slots__ = ("terms", "model")

    def __init__(self, terms: Mapping[Key, object] | Iterable[Tuple[Key, object]] = (),
                 model: str = LAURENT):
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Key, Fraction] = {}
        for key, c in items:
            if c:
                acc[key] = acc.get(key, 0) + _frac(c)
        self.terms: Dict[Key, Fraction] = {k: v for k, v in acc.items() if v}
        self.model = model

    # -- construction -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction], model: str) -> "SuperFunction":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.model = model
        return obj

    @classmethod
    def monomial(cls, m: int = 0, e1: int = 0, e2: int = 0, coeff=1,
                 model: str = LAURENT) -> "SuperFunction":
        return cls({(m, e1, e2): coeff}, model)

    @classmethod
    def constant(cls, c, model: str = LAURENT) -> "SuperFunction":
        return cls({(0, 0, 0): c}, model)

    @classmethod
    def zero(cls, model: str = LAURENT) -> "SuperFunction":
        return cls._raw({}, model)

    def _like(self, terms: Dict[Key, Fraction]) -> "SuperFunction":
        return SuperFunction._raw({k: v for k, v in terms.items() if v}, self.model)

    def _coerce(self, other) -> "SuperFunction":
        if isinstance(other, SuperFunction):
            if other.model != self.model:
                raise ValueError("cannot mix derivative models")
            return other
        if isinstance(other, (int, Fraction)):
            return SuperFunction.constant(other, self.model)
        return NotImplemented

    # -- vector space -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction._raw({k: -v for k, v in self.terms.items()}, self.model)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SuperFunction":
        c = _frac(c)
        if not c:
            return SuperFunction.zero(self.model)
        return SuperFunction._raw({k: v * c for k, v in self.terms.items()}, self.model)

    # -- algebra ------------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Key, Fraction] = {}
        for (m, a1, a2), c in self.terms.items():
            ma = _to_mask(a1, a2)
            for (n, b1, b2), d in other.terms.items():
                s = mask_sign(ma, _to_mask(b1, b2))
                if s:
                    key = (m + n, a1 | b1, a2 | b2)
                    out[key] = out.get(key, 0) + s * c * d
        return self._like(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperFunction.constant(other, self.model)
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self.terms == other.terms and (not self.terms or self.model == other.model)

    def __hash__(self):
        return hash((self.model, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def coeff(self, m: int, e1: int = 0, e2: int = 0) -> Fraction:
        return self.terms.get((m, e1, e2), Fraction(0))

    def __repr__(self):
        from .expr import format_function
        return f"SuperFunction({format_function(self)!r}, model={self.model!r})"

    def __str__(self):
        from .expr import format_function
        return format_function(self)

    # -- parity -------------------------------------------------------------
    def homogeneous_parts(self) -> Dict[int, "SuperFunction"]:
        parts: Dict[int, Dict[Key, Fraction]] = {}
        for k, v in self.terms.items():
            parts.setdefault((k[1] + k[2]) & 1, {})[k] = v
        return {p: SuperFunction._raw(t, self.model) for p, t in parts.items()}

    @property
    def parity(self) -> Parity:
        return parity_of(self)

    def p(self) -> int:
        """Integer parity of a homogeneous function (0 for zero)."""
        par = parity_of(self)
        if par is Parity.MIXED:
            raise ValueError("parity of a mixed element is undefined")
        return par.value

    def max_abs_mode(self) -> int:
        return max((abs(k[0]) for k in self.terms), default=0)


def add(a: SuperFunction, b: SuperFunction) -> SuperFunction:
    return a + b


def mul(a: SuperFunction, b: SuperFunction) -> SuperFunction:
    return a * b


def parity_of(a: SuperFunction) -> Parity:
    ps = {(k[1] + k[2]) & 1 for k in a.terms}
    if len(ps) > 1:
        return Parity.MIXED
    return Parity.ODD if ps == {1} else Parity.EVEN


def d_dx(a: SuperFunction, order: int = 1) -> SuperFunction:
    out: Dict[Key, Fraction] = {}
    for (m, e1, e2), c in a.terms.items():
        f, n = dx_factor(a.model, m, order)
        if f:
            key = (n, e1, e2)
            out[key] = out.get(key, 0) + f * c
    return a._like(out)


def d_theta(i: int, a: SuperFunction) -> SuperFunction:
    """Left derivative with respect to ``t_i`` (i in {1, 2})."""
    if i not in (1, 2):
        raise ValueError("odd index must be 1 or 2")
    out: Dict[Key, Fraction] = {}
    for (m, e1, e2), c in a.terms.items():
        s, mask = left_derivative(_to_mask(e1, e2), i - 1)
        if s:
            f1, f2 = _from_mask(mask)
            out[(m, f1, f2)] = out.get((m, f1, f2), 0) + s * c
    return a._like(out)


def theta(i: int, model: str = LAURENT) -> SuperFunction:
    return SuperFunction.monomial(0, int(i == 1), int(i == 2), model=model)


def mul_theta(i: int, a: SuperFunction) -> SuperFunction:
    """``t_i * a`` without building the full product."""
    out: Dict[Key, Fraction] = {}
    for (m, e1, e2), c in a.terms.items():
        if i == 1 and not e1:
            out[(m, 1, e2)] = c
        elif i == 2 and not e2:
            out[(m, e1, 1)] = -c if e1 else c
    return a._like(out)


def eta(i: int, a: SuperFunction) -> SuperFunction:
    """``eta_i = d/dt_i - t_i d/dx``."""
    return d_theta(i, a) - mul_theta(i, d_dx(a))


def eta_bar(i: int, a: SuperFunction) -> SuperFunction:
    """``etabar_i = d/dt_i + t_i d/dx``."""
    return d_theta(i, a) + mul_theta(i, d_dx(a))


def sign_p(a: SuperFunction, shift: int = 0) -> int:
    """``(-1)^(p(a) + shift)`` for homogeneous ``a``."""
    return -1 if (a.p() + shift) & 1 else 1


def by_parity(fn):
    """Extend a parity-dependent map of homogeneous inputs linearly to mixed inputs."""
    def wrapped(a: SuperFunction, *args, **kw):
        parts = a.homogeneous_parts()
        if len(parts) <= 1:
            return fn(a, *args, **kw)
        out = None
        for part in parts.values():
            r = fn(part, *args, **kw)
            out = r if out is None else out + r
        return out
    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped
