"""Superpseudodifferential symbols on S^{1|2}.

A symbol is a finite sum of normal-ordered monomials

    c * X_m * t1^e1 t2^e2 * xi^k * bt1^n1 bt2^n2

stored flat as ``{(m, k, mask): Fraction}`` where ``mask`` has bits
``t1 = 1, t2 = 2, bt1 = 4, bt2 = 8``.  The normal order ``t1 t2 bt1 bt2``
puts every coefficient function to the left of the odd momenta.

Grading: ``deg x = deg t = 0`` and ``deg xi = deg bt = 1``.  A symbol may carry
a ``cutoff`` N, meaning it is exact in every degree ``>= -N`` and unknown
below; ``cutoff=None`` marks an exact finite symbol.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .grassmann import (
    FOURIER, LAURENT, MODELS, SuperFunction, dx_factor, eta, left_derivative,
    mask_sign, popcount, sign_p, by_parity,
)

SKey = Tuple[int, int, int]
T1, T2, BT1, BT2 = 1, 2, 4, 8
NEG_INF = float("-inf")

_SIGN = [[mask_sign(a, b) for b in range(16)] for a in range(16)]
_POP = [popcount(m) for m in range(16)]
_DEG_MASK = [_POP[m >> 2] for m in range(16)]
_INF = math.inf


def _min_cut(*cuts):
    vals = [c for c in cuts if c is not None and c != _INF]
    return min(vals) if vals else None


class Symbol:
    """Element of SP(2) / SPsiDO(S^{1|2}) (same underlying space)."""

    __slots__ = ("terms", "model", "cutoff")

    def __init__(self, terms: Mapping[SKey, object] | Iterable = (), model: str = LAURENT,
                 cutoff: Optional[int] = None):
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[SKey, Fraction] = {}
        for key, c in items:
            if c:
                acc[key] = acc.get(key, 0) + Fraction(c)
        self.model = model
        self.cutoff = cutoff
        self.terms = {k: v for k, v in acc.items() if v and _keep(k, cutoff)}

    @classmethod
    def _raw(cls, terms, model, cutoff=None) -> "Symbol":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.model = model
        obj.cutoff = cutoff
        return obj

    # -- construction -------------------------------------------------------
    @classmethod
    def from_function(cls, F: SuperFunction, k: int = 0, n1: int = 0, n2: int = 0) -> "Symbol":
        """``F * xi^k * bt1^n1 * bt2^n2``."""
        nu = (n1 << 2) | (n2 << 3)
        return cls._raw({(m, k, e1 | (e2 << 1) | nu): c for (m, e1, e2), c in F.terms.items()},
                        F.model)

    @classmethod
    def monomial(cls, m=0, e1=0, e2=0, k=0, n1=0, n2=0, coeff=1, model=LAURENT) -> "Symbol":
        return cls({(m, k, e1 | (e2 << 1) | (n1 << 2) | (n2 << 3)): coeff}, model)

    @classmethod
    def zero(cls, model: str = LAURENT, cutoff=None) -> "Symbol":
        return cls._raw({}, model, cutoff)

    @classmethod
    def xi(cls, k: int = 1, model: str = LAURENT) -> "Symbol":
        return cls.monomial(k=k, model=model)

    @classmethod
    def thetabar(cls, i: int, model: str = LAURENT) -> "Symbol":
        return cls.monomial(n1=int(i == 1), n2=int(i == 2), model=model)

    @classmethod
    def zeta(cls, i: int, model: str = LAURENT) -> "Symbol":
        """``zeta_i = bt_i - t_i xi``."""
        return cls({(0, 0, 4 if i == 1 else 8): 1, (0, 1, 1 if i == 1 else 2): -1}, model)

    def _coerce(self, other) -> "Symbol":
        if isinstance(other, Symbol):
            if other.model != self.model and other.terms and self.terms:
                raise ValueError("cannot mix derivative models")
            return other
        if isinstance(other, SuperFunction):
            return Symbol.from_function(other)
        if isinstance(other, (int, Fraction)):
            return Symbol({(0, 0, 0): other}, self.model)
        return NotImplemented

    def with_cutoff(self, N: Optional[int]) -> "Symbol":
        """Truncate to degrees >= -N (never loosens an existing cutoff)."""
        N = _min_cut(N, self.cutoff)
        return Symbol._raw({k: v for k, v in self.terms.items() if _keep(k, N)}, self.model, N)

    # -- vector space -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = _min_cut(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        model = self.model if self.terms else other.model
        return Symbol._raw({k: v for k, v in out.items() if v and _keep(k, N)}, model, N)

    __radd__ = __add__

    def __neg__(self):
        return Symbol._raw({k: -v for k, v in self.terms.items()}, self.model, self.cutoff)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Symbol":
        c = Fraction(c)
        if not c:
            return Symbol._raw({}, self.model, self.cutoff)
        return Symbol._raw({k: v * c for k, v in self.terms.items()}, self.model, self.cutoff)

    def __mul__(self, other):
        """Supercommutative product of SP(2)."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = _prod_cut(self, other, 0)
        out: Dict[SKey, Fraction] = {}
        for (ma, ka, sa), ca in self.terms.items():
            row = _SIGN[sa]
            for (mb, kb, sb), cb in other.terms.items():
                s = row[sb]
                if s:
                    key = (ma + mb, ka + kb, sa | sb)
                    out[key] = out.get(key, 0) + s * ca * cb
        model = self.model if self.terms else other.model
        return Symbol._raw({k: v for k, v in out.items() if v and _keep(k, N)}, model, N)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, SuperFunction):
            return Symbol.from_function(other) * self
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SuperFunction)):
            other = self._coerce(other)
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.terms == other.terms and self.cutoff == other.cutoff

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.cutoff))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        from .expr import format_symbol
        return f"Symbol({format_symbol(self)!r}, model={self.model!r}, cutoff={self.cutoff})"

    def __str__(self):
        from .expr import format_symbol
        return format_symbol(self)

    # -- structure ----------------------------------------------------------
    def coefficient(self, k: int, n1: int = 0, n2: int = 0) -> SuperFunction:
        """The coefficient function ``a_{k,nu}`` of ``xi^k bt1^n1 bt2^n2``."""
        nu = (n1 << 2) | (n2 << 3)
        return SuperFunction(
            {(m, s & 1, (s >> 1) & 1): c for (m, kk, s), c in self.terms.items()
             if kk == k and (s & 12) == nu}, self.model)

    def degrees(self):
        return sorted({_deg(k) for k in self.terms})

    def top_degree(self):
        return max((_deg(k) for k in self.terms), default=NEG_INF)

    def homogeneous_parts(self) -> Dict[int, "Symbol"]:
        parts: Dict[int, dict] = {}
        for k, v in self.terms.items():
            parts.setdefault(_POP[k[2]] & 1, {})[k] = v
        return {p: Symbol._raw(t, self.model, self.cutoff) for p, t in parts.items()}

    def p(self) -> int:
        ps = {_POP[k[2]] & 1 for k in self.terms}
        if len(ps) > 1:
            raise ValueError("parity of a mixed symbol is undefined")
        return ps.pop() if ps else 0

    def agrees(self, other: "Symbol", upto: Optional[int] = None) -> bool:
        """Equality in every degree where both sides are known (and >= -upto)."""
        N = _min_cut(self.cutoff, other.cutoff, upto)
        a = {k: v for k, v in self.terms.items() if _keep(k, N)}
        b = {k: v for k, v in other.terms.items() if _keep(k, N)}
        return a == b

    def max_abs_mode(self) -> int:
        return max((abs(k[0]) for k in self.terms), default=0)


def _deg(key: SKey) -> int:
    return key[1] + _DEG_MASK[key[2]]


def _keep(key: SKey, N) -> bool:
    return N is None or _deg(key) >= -N


def _prod_cut(A: Symbol, B: Symbol, shift: int):
    """Cutoff of a bilinear product lowering degree by ``shift`` (None if exact)."""
    cuts = []
    if A.cutoff is not None:
        cuts.append(A.cutoff - B.top_degree() + shift if B.terms else None)
    if B.cutoff is not None:
        cuts.append(B.cutoff - A.top_degree() + shift if A.terms else None)
    return _min_cut(*cuts)


# -- derivatives ------------------------------------------------------------

def _odd_derivative(A: Symbol, bit_index: int) -> Symbol:
    out: Dict[SKey, Fraction] = {}
    for (m, k, s), c in A.terms.items():
        sg, s2 = left_derivative(s, bit_index)
        if sg:
            out[(m, k, s2)] = out.get((m, k, s2), 0) + sg * c
    return Symbol._raw({k: v for k, v in out.items() if v}, A.model, A.cutoff)


def d_theta_sym(i: int, A: Symbol) -> Symbol:
    return _odd_derivative(A, i - 1)


def d_thetabar(i: int, A: Symbol) -> Symbol:
    return _odd_derivative(A, i + 1)


def d_x_sym(A: Symbol) -> Symbol:
    out: Dict[SKey, Fraction] = {}
    for (m, k, s), c in A.terms.items():
        f, n = dx_factor(A.model, m)
        if f:
            out[(n, k, s)] = out.get((n, k, s), 0) + f * c
    return Symbol._raw(out, A.model, A.cutoff)


def d_xi(A: Symbol) -> Symbol:
    out = {(m, k - 1, s): k * c for (m, k, s), c in A.terms.items() if k}
    N = None if A.cutoff is None else A.cutoff - 1
    return Symbol._raw(out, A.model, N)


# -- Poisson structure --------------------------------------------------------

def poisson_bracket(A: Symbol, B: Symbol) -> Symbol:
    """Poisson superbracket of SP(2) (lowers degree by one).

    ``{A,B} = d_xi A d_x B - d_x A d_xi B
               - (-1)^p(A) sum_i (d_ti A d_bti B + d_bti A d_ti B)``
    with left odd derivatives.
    """
    model = A.model if A.terms else B.model
    N = _prod_cut(A, B, 1)
    out: Dict[SKey, Fraction] = {}
    bterms = list(B.terms.items())
    for (ma, ka, sa), ca in A.terms.items():
        pa = _POP[sa] & 1
        fa, na = dx_factor(model, ma)
        odd_a = []
        for g in range(4):
            sg, s2 = left_derivative(sa, g)
            if sg:
                odd_a.append((g, sg, s2))
        for (mb, kb, sb), cb in bterms:
            c = ca * cb
            # d_xi A d_x B
            if ka:
                fb, nb = dx_factor(model, mb)
                if fb:
                    s = _SIGN[sa][sb]
                    if s:
                        key = (ma + nb, ka - 1 + kb, sa | sb)
                        out[key] = out.get(key, 0) + s * ka * fb * c
            # - d_x A d_xi B
            if kb and fa:
                s = _SIGN[sa][sb]
                if s:
                    key = (na + mb, ka + kb - 1, sa | sb)
                    out[key] = out.get(key, 0) - s * fa * kb * c
            # odd part: pair t_i (bit i-1) with bt_i (bit i+1)
            for g, sg, s2 in odd_a:
                partner = g + 2 if g < 2 else g - 2
                sh, sb2 = left_derivative(sb, partner)
                if not sh:
                    continue
                s = _SIGN[s2][sb2]
                if s:
                    key = (ma + mb, ka + kb, s2 | sb2)
                    val = sg * sh * s * c
                    out[key] = out.get(key, 0) + (val if pa else -val)
    return Symbol._raw({k: v for k, v in out.items() if v and _keep(k, N)}, model, N)


# -- composition ----------------------------------------------------------------

# Sign of the (nu1, nu2) term of A o B, for a monomial of A of parity p.
# Derived from the normal-ordered operator product (bt_i acting as d/dt_i) with
# the odd derivatives applied as d_bt1(d_bt2 A) and d_t1(d_t2 B); frozen here
# and checked against identity, associativity and the homomorphism property.
COMPOSE_SIGNS = {
    (0, 0, 0): 1, (0, 0, 1): 1,
    (1, 0, 0): -1, (1, 0, 1): 1,
    (0, 1, 0): -1, (0, 1, 1): 1,
    (1, 1, 0): -1, (1, 1, 1): -1,
}

_NU_MASKS = [(0, 0), (1, 0), (0, 1), (1, 1)]


def _apply_nu(mask: int, nu1: int, nu2: int, base: int) -> Tuple[int, int]:
    """Apply d_{g1}^nu1 d_{g2}^nu2 (inner one first) to a mask; generators at base, base+1."""
    sign = 1
    if nu2:
        s, mask = left_derivative(mask, base + 1)
        if not s:
            return 0, mask
        sign *= s
    if nu1:
        s, mask = left_derivative(mask, base)
        if not s:
            return 0, mask
        sign *= s
    return sign, mask


def _falling(k: int, a: int) -> int:
    f = 1
    for j in range(a):
        f *= k - j
    return f


def compose(A: Symbol, B: Symbol, cutoff: Optional[int] = None,
            signs: Optional[dict] = None) -> Symbol:
    """Associative product of SPsiDO, truncated below degree ``-cutoff``.

    ``A o B = sum_{alpha, nu} s(nu, p) / alpha! (d_xi^alpha d_bt^nu A)(d_x^alpha d_t^nu B)``
    with the sign table :data:`COMPOSE_SIGNS`.
    """
    signs = COMPOSE_SIGNS if signs is None else signs
    model = A.model if A.terms else B.model
    N = _min_cut(_prod_cut(A, B, 0), cutoff)
    out: Dict[SKey, Fraction] = {}
    bterms = list(B.terms.items())
    for (ma, ka, sa), ca in A.terms.items():
        pa = _POP[sa] & 1
        deg_a = ka + _DEG_MASK[sa]
        for nu1, nu2 in _NU_MASKS:
            if (nu1 and not sa & BT1) or (nu2 and not sa & BT2):
                continue
            sgn_a, sa2 = _apply_nu(sa, nu1, nu2, 2)
            tab = signs[(nu1, nu2, pa)] * sgn_a
            for (mb, kb, sb), cb in bterms:
                sgn_b, sb2 = _apply_nu(sb, nu1, nu2, 0)
                if not sgn_b:
                    continue
                s = _SIGN[sa2][sb2]
                if not s:
                    continue
                base = tab * sgn_b * s * ca * cb
                deg0 = deg_a + kb + _DEG_MASK[sb] - nu1 - nu2
                mask = sa2 | sb2
                # last alpha with a nonzero term, None if unbounded
                stop = ka if ka >= 0 else None
                xstop = 0 if model == FOURIER and mb == 0 else (
                    mb if model == LAURENT and mb >= 0 else None)
                if xstop is not None:
                    stop = xstop if stop is None else min(stop, xstop)
                if N is not None:
                    stop = deg0 + N if stop is None else min(stop, deg0 + N)
                elif stop is None:
                    raise ValueError("composition yields an infinite series; pass a cutoff")
                fact = 1
                for alpha in range(stop + 1):
                    if alpha:
                        fact *= alpha
                    fb, nb = dx_factor(model, mb, alpha)
                    key = (ma + nb, ka - alpha + kb, mask)
                    out[key] = out.get(key, 0) + base * Fraction(_falling(ka, alpha) * fb, fact)
    return Symbol._raw({k: v for k, v in out.items() if v and _keep(k, N)}, model, N)


def supercommutator(A: Symbol, B: Symbol, cutoff: Optional[int] = None,
                    signs: Optional[dict] = None) -> Symbol:
    """``[A, B] = A o B - (-1)^(p(A)p(B)) B o A`` (bilinear over homogeneous parts)."""
    out = None
    for pa, Ah in (A.homogeneous_parts() or {0: A}).items():
        for pb, Bh in (B.homogeneous_parts() or {0: B}).items():
            r = compose(Ah, Bh, cutoff, signs)
            r2 = compose(Bh, Ah, cutoff, signs)
            r = r - r2 if not (pa and pb) else r + r2
            out = r if out is None else out + r
    return out


# -- grading and order ------------------------------------------------------------

def order_of(A: Symbol):
    """Top degree (xi and bt both count 1); ``-inf`` for the zero symbol."""
    return A.top_degree()


def grade_project(A: Symbol, n: int) -> Symbol:
    """Homogeneous component of degree ``-n`` (the slot SP_n)."""
    if A.cutoff is not None and -n < -A.cutoff:
        raise ValueError(f"degree {-n} lies below the cutoff of this symbol")
    return Symbol._raw({k: v for k, v in A.terms.items() if _deg(k) == -n}, A.model)


def slot_of(key: SKey) -> int:
    return -_deg(key)


# -- embedding of K(2) ------------------------------------------------------------

@by_parity
def pi_embed(F) -> Symbol:
    """``pi(v_F) = F xi + (-1)^(p(F)+1)/2 sum_i eta_i(F) zeta_i``."""
    from .contact import ContactField
    if isinstance(F, ContactField):
        F = F.F
    model = F.model
    out = Symbol.from_function(F, k=1)
    half = Fraction(sign_p(F, 1), 2)
    for i in (1, 2):
        e = eta(i, F)
        if e:
            out = out + (Symbol.from_function(e) * Symbol.zeta(i, model)).scale(half)
    return out


def module_action_sp(v, A: Symbol) -> Symbol:
    """Poisson action ``v_F . A = {pi(v_F), A}`` of K(2) on SP(2)."""
    return poisson_bracket(_pi(v, A.model), A)


def module_action_psido(v, A: Symbol, cutoff: Optional[int] = None) -> Symbol:
    """Action ``[pi(v_F), A]`` on SPsiDO, truncated."""
    return supercommutator(_pi(v, A.model), A, cutoff)


def _pi(v, model) -> Symbol:
    from .contact import ContactField
    F = v.F if isinstance(v, ContactField) else v
    if isinstance(F, Symbol):
        return F
    return pi_embed(F)
