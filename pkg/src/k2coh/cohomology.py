"""First cohomology of windowed K(2) / K(1)_i with coefficients in densities and symbols.

Cochains live on a :class:`~k2coh.contact.GeneratorBasis` (monomial generators
with |m| <= D).  A cocycle equation is imposed only when both generators and
their bracket lie in the window; pairs whose bracket leaves the window are
reported as unchecked.

The cocycle equations are used in the form

    (E1) c([g1,g2]) - g1.c(g2) + g2.c(g1) = 0     g1, g2 even
    (E2) c([g,h])   - g.c(h)   + h.c(g)   = 0     g even, h odd
    (E3) c([h1,h2]) - h1.c(h2) - h2.c(h1) = 0     h1, h2 odd

for cochains of either parity, with coboundaries ``v -> v.G``.

Dimensions are computed on the weight-0 subcomplex for the Euler field
(``v_1`` in the fourier model, ``v_x`` in the laurent model), which acts
diagonally on monomials.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .contact import (
    GeneratorBasis, contact_bracket, generator_weight, lie_derivative,
)
from .grassmann import FOURIER, LAURENT, SuperFunction, popcount
from .linalg import (
    ColumnIndex, Echelon, Infeasible, check_certificate, nullspace, rank, solve,
)
from .symbols import Symbol, module_action_psido, module_action_sp, pi_embed, _deg

GKey = Tuple[int, int, int]
HALF = Fraction(1, 2)


class UncheckedPair(Exception):
    """The bracket of two generators leaves the window."""


# -- modules -------------------------------------------------------------------------

class Module:
    """Interface of a coefficient module.

    ``act(F, elem)`` is the action of the generator with Hamiltonian ``F``;
    ``coords`` gives a sparse coordinate vector; ``weight_basis`` lists the
    monomial basis of a weight space.
    """

    name = "module"
    model = FOURIER

    def act(self, F: SuperFunction, elem):
        raise NotImplementedError

    def coords(self, elem) -> Dict[Hashable, Fraction]:
        return dict(elem.terms)

    def zero(self):
        raise NotImplementedError

    def parity_of_key(self, key) -> int:
        raise NotImplementedError

    def weight_of_key(self, key) -> Fraction:
        raise NotImplementedError

    def element(self, key):
        raise NotImplementedError

    def weight_basis(self, w: Fraction, parity: Optional[int] = None) -> List[Hashable]:
        raise NotImplementedError

    def contains(self, elem) -> bool:
        return True

    def describe(self) -> str:
        return self.name


class DensityModule(Module):
    """Weighted densities ``F alpha_2^lam`` (or on S_i^{1|1} with ``odd_vars=(i,)``).

    ``pi_shift`` flips the module grading only.
    """

    def __init__(self, lam, model: str = FOURIER, odd_vars=(1, 2), pi_shift: int = 0,
                 mode_range: int = 64):
        self.lam = Fraction(lam)
        self.model = model
        self.odd_vars = tuple(odd_vars)
        self.pi_shift = pi_shift
        self.mode_range = mode_range
        tag = "F" if len(self.odd_vars) == 2 else f"I^{self.odd_vars[0]}"
        self.name = f"{'Pi ' if pi_shift else ''}{tag}_{self.lam}"

    def act(self, F, elem):
        return lie_derivative(self.lam, F, elem)

    def zero(self):
        return SuperFunction.zero(self.model)

    def element(self, key):
        return SuperFunction({key: 1}, self.model)

    def parity_of_key(self, key) -> int:
        return (key[1] + key[2] + self.pi_shift) & 1

    def weight_of_key(self, key) -> Fraction:
        m, e1, e2 = key
        if self.model == FOURIER:
            return Fraction(m)
        return m + Fraction(e1 + e2, 2) + self.lam

    def _odd_choices(self):
        for e1 in (0, 1):
            for e2 in (0, 1):
                if e1 and 1 not in self.odd_vars or e2 and 2 not in self.odd_vars:
                    continue
                yield e1, e2

    def weight_basis(self, w, parity=None):
        out = []
        for e1, e2 in self._odd_choices():
            if self.model == FOURIER:
                m = w
            else:
                m = w - Fraction(e1 + e2, 2) - self.lam
            if Fraction(m).denominator != 1:
                continue
            key = (int(m), e1, e2)
            if parity is None or self.parity_of_key(key) == parity:
                out.append(key)
        return out

    def contains(self, elem) -> bool:
        return all((e1 == 0 or 1 in self.odd_vars) and (e2 == 0 or 2 in self.odd_vars)
                   for (_, e1, e2) in elem.terms)


class SPSlotModule(Module):
    """Homogeneous component SP_n (degree -n) with the Poisson action."""

    def __init__(self, n: int, model: str = FOURIER):
        self.n = n
        self.model = model
        self.name = f"SP_{n}"

    def act(self, F, elem):
        return module_action_sp(F, elem)

    def zero(self):
        return Symbol.zero(self.model)

    def element(self, key):
        return Symbol._raw({key: Fraction(1)}, self.model)

    def parity_of_key(self, key) -> int:
        return popcount(key[2]) & 1

    def weight_of_key(self, key) -> Fraction:
        m, k, mask = key
        if self.model == FOURIER:
            return Fraction(m)
        odd = popcount(mask & 3) - popcount(mask >> 2)
        return m - k + Fraction(odd, 2)

    def _keys_of_weight(self, w, degree):
        for mask in range(16):
            k = degree - popcount(mask >> 2)
            if self.model == FOURIER:
                m = Fraction(w)
            else:
                m = w + k - Fraction(popcount(mask & 3) - popcount(mask >> 2), 2)
            if m.denominator == 1:
                yield (int(m), k, mask)

    def weight_basis(self, w, parity=None):
        return [key for key in self._keys_of_weight(Fraction(w), -self.n)
                if parity is None or self.parity_of_key(key) == parity]

    def contains(self, elem) -> bool:
        return all(_deg(k) == -self.n for k in elem.terms)


class PsiDOModule(SPSlotModule):
    """Truncated SPsiDO: symbols of degree in [-N, top] with the commutator action.

    Values are trusted down to degree ``-N``; actions are computed with the
    cutoff propagated, so defects are compared on the known degrees only.
    """

    def __init__(self, N: int, top: int = 1, model: str = FOURIER):
        super().__init__(0, model)
        self.N = N
        self.top = top
        self.name = f"SPsiDO[deg>={-N}]"

    def act(self, F, elem):
        return module_action_psido(F, elem.with_cutoff(self.N), cutoff=self.N)

    def zero(self):
        return Symbol.zero(self.model, cutoff=self.N)

    def element(self, key):
        return Symbol._raw({key: Fraction(1)}, self.model, self.N)

    def weight_basis(self, w, parity=None):
        out = []
        for d in range(-self.N, self.top + 1):
            out.extend(key for key in self._keys_of_weight(Fraction(w), d)
                       if parity is None or self.parity_of_key(key) == parity)
        return out

    def contains(self, elem) -> bool:
        return True


# -- cochains ----------------------------------------------------------------------

@dataclass
class Cochain1:
    """Linear map from windowed generators to a module, stored per monomial key."""

    basis: GeneratorBasis
    module: Module
    values: Dict[GKey, object]
    parity: int = 0
    name: str = "c"

    def value(self, key: GKey):
        v = self.values.get(key)
        return self.module.zero() if v is None else v

    def __call__(self, F: SuperFunction):
        out = self.module.zero()
        for key, c in F.terms.items():
            if key not in self.values and not self.basis.contains(
                    SuperFunction({key: 1}, F.model)):
                raise UncheckedPair(f"generator {key} outside the window")
            out = out + self.value(key).scale(c)
        return out

    def __add__(self, other: "Cochain1") -> "Cochain1":
        keys = set(self.values) | set(other.values)
        vals = {k: self.value(k) + other.value(k) for k in keys}
        return Cochain1(self.basis, self.module, vals, self.parity,
                        f"({self.name} + {other.name})")

    def __sub__(self, other: "Cochain1") -> "Cochain1":
        return self + other.scale(-1)

    def scale(self, c) -> "Cochain1":
        return Cochain1(self.basis, self.module,
                        {k: v.scale(c) for k, v in self.values.items()},
                        self.parity, f"{c}*{self.name}")

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def parity_consistent(self) -> bool:
        """Generator parity a maps to module parity a + b."""
        for (m, e1, e2), v in self.values.items():
            want = (e1 + e2 + self.parity) & 1
            for key in self.module.coords(v):
                if self.module.parity_of_key(key) != want:
                    return False
        return True


def tabulate(basis: GeneratorBasis, module: Module, fn: Callable[[SuperFunction], object],
             parity: int = 0, name: str = "c") -> Cochain1:
    """Build a cochain by evaluating ``fn`` on every monomial generator."""
    vals = {}
    for key in basis.keys:
        v = fn(SuperFunction({key: 1}, basis.model))
        if v:
            vals[key] = v
    return Cochain1(basis, module, vals, parity, name)


def restrict_cochain(c: Cochain1, i: int) -> Cochain1:
    sub = GeneratorBasis(c.basis.D, c.basis.model, i)
    keys = set(sub.keys)
    return Cochain1(sub, c.module, {k: v for k, v in c.values.items() if k in keys},
                    c.parity, f"{c.name}|K(1)_{i}")


def coboundary_of(G, basis: GeneratorBasis, module: Module, parity: Optional[int] = None,
                  name: str = "dG") -> Cochain1:
    """The cochain ``v -> v.G``."""
    if parity is None:
        parity = G.p() if G else 0
    return tabulate(basis, module, lambda F: module.act(F, G), parity, name)


# -- cocycle condition ----------------------------------------------------------------

def _mono(key, model):
    return SuperFunction({key: Fraction(1)}, model)


def bracket_in_window(basis: GeneratorBasis, u: GKey, v: GKey) -> SuperFunction:
    br = contact_bracket(_mono(u, basis.model), _mono(v, basis.model))
    if not basis.contains(br):
        raise UncheckedPair(f"[{u}, {v}] leaves the window")
    return br


def cocycle_defect(c: Cochain1, u: GKey, v: GKey):
    """Left-hand side of (E1)/(E2)/(E3) for the generator pair (u, v)."""
    model = c.basis.model
    pu, pv = (u[1] + u[2]) & 1, (v[1] + v[2]) & 1
    if pu and not pv:
        u, v, pu, pv = v, u, pv, pu
    br = bracket_in_window(c.basis, u, v)
    act = c.module.act
    lhs = c(br) - act(_mono(u, model), c.value(v))
    other = act(_mono(v, model), c.value(u))
    return lhs - other if (pu and pv) else lhs + other


def generator_pairs(basis: GeneratorBasis):
    keys = basis.keys
    for a, u in enumerate(keys):
        for v in keys[a:]:
            if u == v and not (u[1] + u[2]) & 1:
                continue  # [g, g] = 0 for even g; the equation is empty
            yield u, v


@dataclass
class CocycleReport:
    name: str
    checked: int = 0
    unchecked: List[Tuple[GKey, GKey]] = field(default_factory=list)
    failures: List[Tuple[GKey, GKey, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"checked_pairs": self.checked, "unchecked_pairs": len(self.unchecked),
                "failures": [{"u": list(u), "v": list(v), "defect": d}
                             for u, v, d in self.failures[:5]],
                "n_failures": len(self.failures)}


def is_cocycle(c: Cochain1, window: Optional[int] = None, max_failures: int = 5) -> CocycleReport:
    basis = c.basis if window is None else GeneratorBasis(window, c.basis.model, c.basis.sub)
    if window is not None:
        c = Cochain1(basis, c.module, {k: v for k, v in c.values.items()
                                       if k in set(basis.keys)}, c.parity, c.name)
    rep = CocycleReport(c.name)
    for u, v in generator_pairs(basis):
        try:
            d = cocycle_defect(c, u, v)
        except UncheckedPair:
            rep.unchecked.append((u, v))
            continue
        rep.checked += 1
        if d:
            rep.failures.append((u, v, str(d)))
            if len(rep.failures) >= max_failures:
                break
    return rep


# -- weights --------------------------------------------------------------------------

def weight_of(x, model: str = FOURIER, module: Optional[Module] = None) -> Fraction:
    """Euler eigenvalue of a generator (SuperFunction) or module monomial.

    The eigenvector property is asserted by applying the Euler action.
    """
    from .contact import euler_hamiltonian
    E = euler_hamiltonian(model)
    if module is None:
        assert len(x.terms) == 1, "weight_of expects a monomial"
        key = next(iter(x.terms))
        w = generator_weight(key, model)
        assert contact_bracket(E, x) == x.scale(w), "not an eigenvector"
        return w
    assert len(x.terms) == 1, "weight_of expects a monomial"
    key = next(iter(x.terms))
    w = module.weight_of_key(key)
    assert module.act(E, x) == x.scale(w), "not an eigenvector"
    return w


def cochain_weights(c: Cochain1) -> Dict[Fraction, Cochain1]:
    """Split a cochain into weight-homogeneous parts."""
    model = c.basis.model
    parts: Dict[Fraction, Dict[GKey, dict]] = {}
    for gkey, val in c.values.items():
        gw = generator_weight(gkey, model)
        for mkey, coef in c.module.coords(val).items():
            w = c.module.weight_of_key(mkey) - gw
            parts.setdefault(w, {}).setdefault(gkey, {})[mkey] = coef
    out = {}
    for w, vals in parts.items():
        values = {g: _from_coords(c.module, d) for g, d in vals.items()}
        out[w] = Cochain1(c.basis, c.module, values, c.parity, f"{c.name}[w={w}]")
    return out


def _from_coords(module: Module, coords: Dict) -> object:
    el = module.zero()
    terms = dict(coords)
    if isinstance(el, Symbol):
        return Symbol._raw(terms, el.model, el.cutoff)
    return SuperFunction._raw(terms, el.model)


# -- coboundary solving ------------------------------------------------------------

class _ActionCache:
    def __init__(self, basis: GeneratorBasis, module: Module):
        self.basis = basis
        self.module = module
        self.cache: Dict[Tuple[GKey, Hashable], Dict] = {}

    def __call__(self, g: GKey, mkey) -> Dict:
        key = (g, mkey)
        out = self.cache.get(key)
        if out is None:
            el = self.module.act(_mono(g, self.basis.model), self.module.element(mkey))
            out = self.cache[key] = self.module.coords(el)
        return out


@dataclass
class SolveResult:
    feasible: bool
    G: object = None
    certificate: Optional[dict] = None
    weights: Tuple = ()

    def __bool__(self):
        return self.feasible


def solve_coboundary(c: Cochain1, window: Optional[int] = None,
                     cache: Optional[_ActionCache] = None) -> SolveResult:
    """Find G with ``v.G = c(v)`` on all windowed generators, or an exact certificate.

    G is sought weight by weight in the module slice matching each weight
    component of ``c``.  The certificate maps equation labels
    ``(weight, generator, coordinate)`` to integer multipliers.
    """
    basis = c.basis if window is None else GeneratorBasis(window, c.basis.model, c.basis.sub)
    module = c.module
    cache = cache or _ActionCache(basis, module)
    total = module.zero()
    parts = cochain_weights(c)
    for w, cw in sorted(parts.items()):
        unknowns = module.weight_basis(w, c.parity)
        cols = ColumnIndex(unknowns)
        eqs = []
        for g in basis.keys:
            target = module.coords(cw.value(g))
            rows: Dict[Hashable, Dict[int, Fraction]] = {}
            for u in unknowns:
                for mk, coef in cache(g, u).items():
                    rows.setdefault(mk, {})[cols(u)] = coef
            for mk in set(rows) | set(target):
                eqs.append(((w, g, mk), rows.get(mk, {}), target.get(mk, 0)))
        try:
            sol = solve(eqs, len(cols))
        except Infeasible as exc:
            assert check_certificate(eqs, exc.certificate)
            return SolveResult(False, certificate={str(k): v for k, v in
                                                   exc.certificate.items()},
                               weights=tuple(parts))
        G = _from_coords(module, {cols.keys[j]: v for j, v in sol.items() if v})
        total = total + G
    return SolveResult(True, G=total, weights=tuple(parts))


# -- H^1 on the weight-0 subcomplex ---------------------------------------------------

@dataclass
class H1Result:
    module: str
    D: int
    parity: int
    cocycles: int
    coboundaries: int
    unknowns: int
    equations: int
    basis: List[Dict] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.cocycles - self.coboundaries


class WeightZeroComplex:
    """Weight-0 cochains of one parity: unknowns, cocycle equations, coboundaries."""

    def __init__(self, basis: GeneratorBasis, module: Module, parity: int):
        self.basis = basis
        self.module = module
        self.parity = parity
        self.model = basis.model
        self.cache = _ActionCache(basis, module)
        self.cols = ColumnIndex()
        self.slots: Dict[GKey, List] = {}
        for g in basis.keys:
            w = generator_weight(g, self.model)
            par = (g[1] + g[2] + parity) & 1
            self.slots[g] = module.weight_basis(w, par)
            for mk in self.slots[g]:
                self.cols((g, mk))
        self._brackets: Dict[Tuple[GKey, GKey], Optional[SuperFunction]] = {}

    def _bracket(self, u, v):
        key = (u, v)
        if key not in self._brackets:
            try:
                self._brackets[key] = bracket_in_window(self.basis, u, v)
            except UncheckedPair:
                self._brackets[key] = None
        return self._brackets[key]

    def equations(self):
        """Yield one sparse row per (pair, output coordinate)."""
        for u, v in generator_pairs(self.basis):
            pu, pv = (u[1] + u[2]) & 1, (v[1] + v[2]) & 1
            if pu and not pv:
                u, v, pu, pv = v, u, pv, pu
            br = self._bracket(u, v)
            if br is None:
                continue
            sign_other = -1 if (pu and pv) else 1
            rows: Dict[Hashable, Dict[int, Fraction]] = {}

            def put(mk, col, coef):
                r = rows.setdefault(mk, {})
                val = r.get(col, 0) + coef
                if val:
                    r[col] = val
                else:
                    r.pop(col, None)

            for gk, coef in br.terms.items():
                for mk in self.slots[gk]:
                    put(mk, self.cols.index[(gk, mk)], coef)
            for mk in self.slots[v]:
                col = self.cols.index[(v, mk)]
                for ok, coef in self.cache(u, mk).items():
                    put(ok, col, -coef)
            for mk in self.slots[u]:
                col = self.cols.index[(u, mk)]
                for ok, coef in self.cache(v, mk).items():
                    put(ok, col, sign_other * coef)
            for r in rows.values():
                if r:
                    yield r

    def coboundary_rows(self):
        """Coordinates of ``v -> v.G`` for G running over the weight-0 module basis."""
        for mk0 in self.module.weight_basis(Fraction(0), self.parity):
            row = {}
            for g in self.basis.keys:
                for ok, coef in self.cache(g, mk0).items():
                    row[self.cols((g, ok))] = coef
            yield row

    def vector(self, c: Cochain1) -> Dict[int, Fraction]:
        """Coordinates of a weight-0 cochain of this parity."""
        out = {}
        for g in self.basis.keys:
            for mk, coef in self.module.coords(c.value(g)).items():
                j = self.cols.index.get((g, mk))
                if j is None:
                    raise ValueError(f"{c.name} is not a weight-0 cochain of parity {self.parity}")
                out[j] = coef
        return out

    def cochain(self, vec: Dict[int, Fraction], name="z") -> Cochain1:
        vals: Dict[GKey, Dict] = {}
        for j, coef in vec.items():
            g, mk = self.cols.keys[j]
            vals.setdefault(g, {})[mk] = coef
        values = {g: _from_coords(self.module, d) for g, d in vals.items()}
        return Cochain1(self.basis, self.module, values, self.parity, name)


def h1_weight0(basis: GeneratorBasis, module: Module, parity: int,
               want_basis: bool = False) -> H1Result:
    cx = WeightZeroComplex(basis, module, parity)
    n = len(cx.cols)
    rows = list(cx.equations())
    ech = Echelon()
    for r in rows:
        ech.add(r)
    zdim = n - ech.rank
    brows = list(cx.coboundary_rows())
    bdim = rank(brows)
    res = H1Result(module.describe(), basis.D, parity, zdim, bdim, n, len(rows))
    if want_basis:
        res.basis = nullspace(rows, n)
    return res


@dataclass
class H1Dimension:
    module: str
    D: int
    even: int
    odd: int
    even_prev: int
    odd_prev: int

    @property
    def stable(self) -> bool:
        return (self.even, self.odd) == (self.even_prev, self.odd_prev)

    def as_tuple(self):
        return (self.even, self.odd)


def h1_dimension(module: Module, D: int, sub: Optional[int] = None,
                 model: Optional[str] = None) -> H1Dimension:
    """(even, odd) dimension of the weight-0 windowed H^1, with the D-1 values."""
    if D < 2:
        raise ValueError("window too small: need D >= 2")
    model = model or module.model
    dims = {}
    for d in (D - 1, D):
        basis = GeneratorBasis(d, model, sub)
        dims[d] = tuple(h1_weight0(basis, module, b).dim for b in (0, 1))
    return H1Dimension(module.describe(), D, *dims[D], *dims[D - 1])


# -- cocycles with trivial restrictions -------------------------------------------------

@dataclass
class RestrictionKernel:
    """Weight-0 cocycles of K(2) whose restrictions to K(1)_1 and K(1)_2 are coboundaries."""

    complex: WeightZeroComplex
    vectors: List[Dict[int, Fraction]]
    coboundary_rank: int

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def cochain(self, coeffs: Sequence, name: str = "z") -> Cochain1:
        vec: Dict[int, Fraction] = {}
        for c, v in zip(coeffs, self.vectors):
            for j, x in v.items():
                vec[j] = vec.get(j, 0) + Fraction(c) * x
        return self.complex.cochain({j: x for j, x in vec.items() if x}, name)


def restriction_kernel(module: Module, D: int, parity: int = 0,
                       model: Optional[str] = None) -> RestrictionKernel:
    """Solve for the cocycles ``z`` with ``z|K(1)_i = d(G_i)`` for i = 1, 2.

    Unknowns are coordinates on the weight-0 cocycle space plus one
    coboundary potential per restriction; the solution space is projected
    onto the cocycle coordinates.
    """
    model = model or module.model
    basis = GeneratorBasis(D, model)
    cx = WeightZeroComplex(basis, module, parity)
    n = len(cx.cols)
    zbasis = nullspace(list(cx.equations()), n)
    cols = ColumnIndex(("z", a) for a in range(len(zbasis)))
    rows: Dict[Hashable, Dict[int, Fraction]] = {}
    for a, z in enumerate(zbasis):
        for j, x in z.items():
            g, mk = cx.cols.keys[j]
            for i in (1, 2):
                if (i == 1 and g[2]) or (i == 2 and g[1]):
                    continue
                rows.setdefault((i, g, mk), {})[cols(("z", a))] = x
    for i in (1, 2):
        sub = GeneratorBasis(D, model, i)
        cache = _ActionCache(sub, module)
        for b, mk0 in enumerate(module.weight_basis(Fraction(0), parity)):
            col = cols(("g", i, b))
            for g in sub.keys:
                for ok, coef in cache(g, mk0).items():
                    r = rows.setdefault((i, g, ok), {})
                    r[col] = r.get(col, 0) - coef
    sol = nullspace(list(rows.values()), len(cols))
    ech = Echelon()
    for v in sol:
        ech.add({cols.keys[j][1]: x for j, x in v.items() if cols.keys[j][0] == "z"})
    vectors = []
    for row in ech.rref().values():
        vec: Dict[int, Fraction] = {}
        for a, x in row.items():
            for j, y in zbasis[a].items():
                vec[j] = vec.get(j, 0) + x * y
        vectors.append({j: x for j, x in vec.items() if x})
    return RestrictionKernel(cx, vectors, rank(list(cx.coboundary_rows())))
