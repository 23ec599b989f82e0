"""The explicit cocycles: c_0..c_3, C_0..C_7, Upsilon_1..10 and the Theta series.

Every entry is a function ``F -> value`` on homogeneous Hamiltonians plus the
module it lands in; :func:`build_cocycle` tabulates it on a generator window.
Products are formed in the order the formulas are written, e.g.
``eta_1(F') zeta_1 xi^{-1}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .cohomology import (
    Cochain1, DensityModule, Module, PsiDOModule, SPSlotModule, WeightZeroComplex,
    is_cocycle, restrict_cochain, solve_coboundary, tabulate,
)
from .contact import GeneratorBasis
from .densities import FamilyTag, build_family_element
from .grassmann import (
    FOURIER, SuperFunction, by_parity, d_dx, eta, eta_bar, mul_theta, sign_p, theta,
)
from .linalg import Echelon
from .symbols import Symbol, _deg, grade_project

HALF = Fraction(1, 2)
FAMILY_NAMES = {"c": "c", "C": "C", "upsilon": "Upsilon", "theta": "Theta"}
INDEX_RANGE = {"c": range(0, 4), "C": range(0, 8), "upsilon": range(1, 11), "theta": range(1, 11)}


@dataclass(frozen=True)
class CatalogKey:
    family: str
    index: int
    i: int = 1
    N: Optional[int] = None

    def __post_init__(self):
        if self.family not in INDEX_RANGE:
            raise ValueError(f"unknown family {self.family!r}")
        if self.index not in INDEX_RANGE[self.family]:
            raise ValueError(f"index {self.index} out of range for family {self.family}")
        if self.i not in (1, 2):
            raise ValueError("i must be 1 or 2")
        if self.family == "theta" and self.N is not None and self.N < 0:
            raise ValueError("truncation N must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "CatalogKey":
        """``upsilon:7``, ``theta:10@N=8``, ``C:3@i=2``, ``c:0``."""
        mt = re.fullmatch(r"\s*([A-Za-z]+)\s*:\s*(\d+)\s*((?:@\s*\w+\s*=\s*\d+\s*)*)", text)
        if not mt:
            raise ValueError(f"cannot parse catalog key {text!r}")
        fam = mt.group(1)
        fam = fam if fam in ("c", "C") else fam.lower()
        opts = dict(re.findall(r"@\s*(\w+)\s*=\s*(\d+)", mt.group(3)))
        unknown = set(opts) - {"i", "N"}
        if unknown:
            raise ValueError(f"unknown parameter(s) {sorted(unknown)}")
        return cls(fam, int(mt.group(2)), int(opts.get("i", 1)),
                   int(opts["N"]) if "N" in opts else None)

    @property
    def label(self) -> str:
        base = f"{FAMILY_NAMES[self.family]}_{self.index}"
        if self.family in ("c", "C"):
            base += f"[i={self.i}]"
        if self.family == "theta" and self.N is not None:
            base += f"[N={self.N}]"
        return base

    def __str__(self):
        out = f"{self.family}:{self.index}"
        if self.family in ("c", "C"):
            out += f"@i={self.i}"
        if self.family == "theta" and self.N is not None:
            out += f"@N={self.N}"
        return out


# -- symbol helpers -------------------------------------------------------------------

def _S(F: SuperFunction) -> Symbol:
    return Symbol.from_function(F)


def _xi(k, model):
    return Symbol.xi(k, model)


def _z(i, model):
    return Symbol.zeta(i, model)


def _zz(model):
    return _z(1, model) * _z(2, model)


def _e12(F):
    return eta(1, eta(2, F))


def _e21_t12(F):
    """``eta_2 eta_1 (F theta_1 theta_2)``."""
    t12 = theta(1, F.model) * theta(2, F.model)
    return eta(2, eta(1, F * t12))


def _odd_part_quarter(F):
    """``1/4 (F + (-1)^{p(F)+1} F)``: F/2 on odd F, 0 on even F."""
    return F.scale(Fraction(1 + sign_p(F, 1), 4))


# -- c and C families (K(1)_i) -------------------------------------------------------

@by_parity
def _c0(F, i):
    return F.scale(Fraction(3 + sign_p(F), 4))


def _c1(F, i):
    return d_dx(F)


def _c2(F, i):
    return eta_bar(i, d_dx(F))


def _c3(F, i):
    return eta_bar(i, d_dx(F, 2))


def _times_theta(G, j):
    """``G theta_j`` (theta on the right)."""
    return G * theta(j, G.model)


C_FORMULAS: Dict[int, Tuple[Callable, Fraction, int]] = {
    0: (lambda F, i: _c0(F, i), Fraction(0), 0),
    1: (lambda F, i: _c1(F, i), Fraction(0), 0),
    2: (lambda F, i: _times_theta(_c2(F, i), 3 - i), Fraction(0), 0),
    3: (lambda F, i: _times_theta(_c3(F, i), 3 - i), Fraction(1), 0),
    4: (lambda F, i: _times_theta(_c0(F, i), 3 - i), Fraction(-1, 2), 1),
    5: (lambda F, i: _times_theta(_c1(F, i), 3 - i), Fraction(-1, 2), 1),
    6: (lambda F, i: _c2(F, i), HALF, 1),
    7: (lambda F, i: _c3(F, i), Fraction(3, 2), 1),
}
# (formula, density weight, cochain parity)
SMALL_C_FORMULAS: Dict[int, Tuple[Callable, Fraction, int]] = {
    0: (_c0, Fraction(0), 0),
    1: (_c1, Fraction(0), 0),
    2: (_c2, HALF, 1),
    3: (_c3, Fraction(3, 2), 1),
}


# -- Upsilon family (K(2) -> SP_n) ----------------------------------------------------

@by_parity
def _u1(F):
    return _S(_e12(F)) * _xi(-1, F.model) * _zz(F.model)


@by_parity
def _u2(F):
    return _S(d_dx(F)) * _xi(-1, F.model) * _zz(F.model)


@by_parity
def _u3(F):
    return _S(_odd_part_quarter(F) + _e21_t12(F)) * _xi(-1, F.model) * _zz(F.model)


@by_parity
def _u4(F):
    return _S(_odd_part_quarter(F) + _e21_t12(F))


@by_parity
def _u5(F):
    return _S(d_dx(F))


@by_parity
def _u6(F):
    return _S(_e12(F))


@by_parity
def _u7(F):
    mdl, F1 = F.model, d_dx(F)
    inner = _S(eta(1, F1)) * _z(1, mdl) + _S(eta(2, F1)) * _z(2, mdl)
    return (inner * _xi(-1, mdl)).scale(sign_p(F))


@by_parity
def _u8(F):
    mdl, F1 = F.model, d_dx(F)
    out = _S(d_dx(F, 2)) * _xi(-2, mdl) * _zz(mdl)
    inner = _S(eta(2, F1)) * _z(1, mdl) - _S(eta(1, F1)) * _z(2, mdl)
    return out + (inner * _xi(-1, mdl)).scale(sign_p(F))


@by_parity
def _u9(F):
    return _S(_e12(d_dx(F))) * _xi(-2, F.model) * _zz(F.model)


@by_parity
def _u10(F):
    mdl, F2 = F.model, d_dx(F, 2)
    out = (_S(d_dx(F, 3)) * _xi(-3, mdl) * _zz(mdl)).scale(Fraction(2, 3))
    inner = _S(eta(2, F2)) * _z(1, mdl) - _S(eta(1, F2)) * _z(2, mdl)
    out = out + (inner * _xi(-2, mdl)).scale(sign_p(F))
    return out + (_S(_e12(d_dx(F))) * _xi(-1, mdl)).scale(2)


UPSILON: Dict[int, Tuple[Callable, int]] = {
    1: (_u1, -1), 2: (_u2, -1), 3: (_u3, -1),
    4: (_u4, 0), 5: (_u5, 0), 6: (_u6, 0), 7: (_u7, 0), 8: (_u8, 0), 9: (_u9, 0),
    10: (_u10, 1),
}


def upsilon_tilde(k: int) -> Callable:
    """The combinations used in the correspondence: Y~7 = Y7 + Y9, Y~8 = Y8 + Y6."""
    extra = {7: 9, 8: 6}[k]
    return lambda F: UPSILON[k][0](F) + UPSILON[extra][0](F)


# -- Theta series ------------------------------------------------------------------------

def theta_terms(k: int, F: SuperFunction, n: int) -> List[Symbol]:
    """The summands with index ``n`` of Theta_k(v_F) (empty for k <= 6 unless n == 0).

    Each summand is homogeneous in degree; terms whose sum starts at n = 1 are
    absent for n = 0.
    """
    mdl = F.model
    s = sign_p(F)

    def D(r):
        return d_dx(F, r)

    def one(A: Symbol, c) -> Symbol:
        return A.scale(c)

    if k <= 6:
        return [UPSILON[k][0](F)] if n == 0 else []
    sgn = -1 if n & 1 else 1
    out = []
    if k == 7:
        inner = _S(eta(1, D(n + 1))) * _z(1, mdl) + _S(eta(2, D(n + 1))) * _z(2, mdl)
        out.append(one(inner * _xi(-n - 1, mdl), Fraction(s * sgn, n + 1)))
        out.append(one(_S(D(n + 2)) * _xi(-n - 1, mdl), Fraction(2 * sgn, n + 2)))
    elif k == 8:
        inner = _S(eta(2, D(n + 1))) * _z(1, mdl) - _S(eta(1, D(n + 1))) * _z(2, mdl)
        out.append(one(inner * _xi(-n - 1, mdl), s * sgn))
        out.append(one(_S(D(n + 2)) * _xi(-n - 2, mdl) * _zz(mdl), sgn))
        if n >= 1:
            out.append(one(_S(_e12(D(n))) * _xi(-n, mdl), sgn))
    elif k == 9:
        out.append(one(_S(_e12(D(n + 1))) * _xi(-n - 2, mdl) * _zz(mdl), sgn))
        if n >= 1:
            inner = _S(eta(1, D(n + 1))) * _z(1, mdl) + _S(eta(2, D(n + 1))) * _z(2, mdl)
            out.append(one(inner * _xi(-n - 1, mdl), Fraction(s * sgn * n, n + 1)))
            out.append(one(_S(D(n + 2)) * _xi(-n - 1, mdl), Fraction(sgn * n, n + 2)))
    elif k == 10:
        if n >= 1:
            out.append(one(_S(D(n + 2)) * _xi(-n - 2, mdl) * _zz(mdl),
                           Fraction(-sgn * 2 * n, n + 2)))
            out.append(one(_S(eta(1, D(n + 1))) * _xi(-n - 1, mdl) * _z(2, mdl),
                           Fraction(s * sgn * 2 * n, n + 1)))
            out.append(one(_S(eta(2, D(n + 1))) * _xi(-n - 1, mdl) * _z(1, mdl),
                           Fraction(-s * sgn * 2 * n, n + 1)))
            out.append(one(_S(_e12(D(n))) * _xi(-n, mdl), -2 * sgn))
    else:
        raise ValueError(f"Theta index {k} out of range")
    return [t for t in out if t]


def theta_value(k: int, F: SuperFunction, N: int) -> Symbol:
    """Theta_k(v_F), exact in degrees >= -N (each n-summand has degree >= -n-1)."""
    parts = F.homogeneous_parts()
    if len(parts) > 1:
        total = Symbol.zero(F.model, cutoff=N)
        for part in parts.values():
            total = total + theta_value(k, part, N)
        return total
    out = Symbol.zero(F.model)
    for n in range(0, N + 2):
        for t in theta_terms(k, F, n):
            out = out + t
    kept = {key: c for key, c in out.terms.items() if _deg(key) >= -N}
    return Symbol._raw(kept, F.model, N)


# -- building cochains ---------------------------------------------------------------

def module_for(key: CatalogKey, model: str = FOURIER) -> Module:
    if key.family == "c":
        return DensityModule(SMALL_C_FORMULAS[key.index][1], model, odd_vars=(key.i,))
    if key.family == "C":
        return DensityModule(C_FORMULAS[key.index][1], model)
    if key.family == "upsilon":
        return SPSlotModule(UPSILON[key.index][1], model)
    return PsiDOModule(key.N if key.N is not None else 8, top=1, model=model)


def cocycle_function(key: CatalogKey) -> Callable[[SuperFunction], object]:
    if key.family == "c":
        fn = SMALL_C_FORMULAS[key.index][0]
        return by_parity(lambda F: fn(F, key.i))
    if key.family == "C":
        fn = C_FORMULAS[key.index][0]
        return by_parity(lambda F: fn(F, key.i))
    if key.family == "upsilon":
        return UPSILON[key.index][0]
    N = key.N if key.N is not None else 8
    return lambda F: theta_value(key.index, F, N)


def cocycle_parity(key: CatalogKey) -> int:
    if key.family == "c":
        return SMALL_C_FORMULAS[key.index][2]
    if key.family == "C":
        return C_FORMULAS[key.index][2]
    return 0


def build_cocycle(key: CatalogKey, D: int, model: str = FOURIER) -> Cochain1:
    """Tabulate a catalog cocycle on the generator window |m| <= D."""
    if isinstance(key, str):
        key = CatalogKey.parse(key)
    sub = key.i if key.family in ("c", "C") else None
    basis = GeneratorBasis(D, model, sub)
    module = module_for(key, model)
    return tabulate(basis, module, cocycle_function(key), cocycle_parity(key), key.label)


def all_keys(N: int = 8) -> List[CatalogKey]:
    keys = [CatalogKey("c", l, i) for i in (1, 2) for l in range(4)]
    keys += [CatalogKey("C", l, i) for i in (1, 2) for l in range(8)]
    keys += [CatalogKey("upsilon", k) for k in range(1, 11)]
    keys += [CatalogKey("theta", k, N=N) for k in range(1, 11)]
    return keys


# -- the beta cocycles of K(1)_i and the correspondence ----------------------------------

# beta name -> (C index, family slot n, family j)
BETA = {
    "beta0": (0, -1, "1"), "beta1": (1, -1, "1"), "beta2": (2, -1, "1"),
    "beta4": (4, -1, "1/2"), "beta4~": (4, -1, "~1/2"),
    "beta5": (5, -1, "1/2"), "beta5~": (5, -1, "~1/2"),
    "beta6": (0, 0, "0"), "beta7": (1, 0, "0"), "beta8": (2, 0, "0"),
    "beta9": (3, 0, "1"), "beta10": (6, 0, "1/2"), "beta10~": (6, 0, "~1/2"),
    "psi_1,0(C3)": (3, 1, "0"),
}

# K(2)-cocycle -> beta it restricts to (up to a nonzero scalar and a coboundary)
CORRESPONDENCE = [
    ("Upsilon_1", "beta2"), ("Upsilon_2", "beta5"), ("Upsilon_3", "beta4"),
    ("Upsilon_4", "beta6"), ("Upsilon_5", "beta7"), ("Upsilon_6", "beta8"),
    ("Upsilon~_7", "beta10"), ("Upsilon~_8", "beta10~"), ("Upsilon_9", "beta9"),
    ("Upsilon_10", "psi_1,0(C3)"),
]


def beta_function(name: str, i: int) -> Tuple[Callable, int]:
    """``F -> psi(C_l(v_F))`` and the slot n it lands in."""
    l, n, j = BETA[name]
    tag = FamilyTag(n, j, i)
    cfn = C_FORMULAS[l][0]
    return by_parity(lambda F: build_family_element(tag, cfn(F, i))), n


def upsilon_function(name: str) -> Tuple[Callable, int]:
    if name.startswith("Upsilon~_"):
        k = int(name.split("_")[1])
        return upsilon_tilde(k), UPSILON[k][1]
    k = int(name.split("_")[1])
    return UPSILON[k]


@dataclass
class CorrespondenceResult:
    upsilon: str
    beta: str
    i: int
    scalar: Optional[Fraction]
    nontrivial: bool
    coordinates: Dict[str, Fraction] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.nontrivial and self.scalar is not None and self.scalar != 0

    def summary(self) -> dict:
        return {"upsilon": self.upsilon, "beta": self.beta, "i": self.i, "ok": self.ok,
                "scalar": None if self.scalar is None else str(self.scalar),
                "coordinates": {k: str(v) for k, v in self.coordinates.items()}}


def cohomology_coordinates(target: Cochain1, named: Dict[str, Cochain1]
                           ) -> Optional[Dict[str, Fraction]]:
    """Write ``target`` as a combination of ``named`` cocycles plus a coboundary.

    All cochains are weight-0 and share one basis and module.  Returns None if
    no such combination exists.
    """
    cx = WeightZeroComplex(target.basis, target.module, target.parity)
    ech = Echelon(track=True)
    for idx, row in enumerate(cx.coboundary_rows()):
        ech.add(row, ("d", idx))
    for name, c in named.items():
        ech.add(cx.vector(c), ("c", name))
    r, combo = ech.reduce(cx.vector(target), ("t", "target"))
    if r:
        return None
    # combo expresses the residue 0 = k*target - sum(...), up to the reduction scaling
    t = combo.get(("t", "target"))
    coords = {name: Fraction(-v, t) for (kind, name), v in combo.items() if kind == "c"}
    return {k: v for k, v in coords.items() if v}


def theorem_correspondence_check(D: int, model: str = FOURIER, i_values=(1, 2)
                                 ) -> List[CorrespondenceResult]:
    out = []
    for ups, beta in CORRESPONDENCE:
        ufn, n = upsilon_function(ups)
        for i in i_values:
            basis = GeneratorBasis(D, model, i)
            module = SPSlotModule(n, model)
            betas = {name: tabulate(basis, module, beta_function(name, i)[0], 0, name)
                     for name in BETA if BETA[name][1] == n}
            target = tabulate(basis, module, ufn, 0, ups)
            coords = cohomology_coordinates(target, betas)
            nontrivial = coords is not None and bool(coords)
            scalar = None
            if coords is not None and set(coords) == {beta}:
                scalar = coords[beta]
            out.append(CorrespondenceResult(ups, beta, i, scalar, nontrivial, coords or {}))
    return out


@dataclass
class TildeResult:
    name: str
    difference_zero: bool
    difference_solvable: bool
    cocycle: bool

    @property
    def ok(self) -> bool:
        return self.difference_zero and self.difference_solvable and self.cocycle


def upsilon_tilde_check(D: int, model: str = FOURIER) -> List[TildeResult]:
    """Y~7 - (Y7 + Y9) and Y~8 - (Y8 + Y6) vanish and Y~7, Y~8 are cocycles."""
    out = []
    basis = GeneratorBasis(D, model)
    module = SPSlotModule(0, model)
    for k, extra in ((7, 9), (8, 6)):
        tilde = tabulate(basis, module, upsilon_tilde(k), 0, f"Upsilon~_{k}")
        parts = build_cocycle(CatalogKey("upsilon", k), D, model) + \
            build_cocycle(CatalogKey("upsilon", extra), D, model)
        diff = tilde - parts
        out.append(TildeResult(tilde.name, diff.is_zero(), solve_coboundary(diff).feasible,
                               is_cocycle(tilde).ok))
    return out


# -- Theta versus Upsilon ---------------------------------------------------------------

THETA_SLOT = {k: UPSILON[k][1] for k in UPSILON}


def theta_leading_term(k: int, F: SuperFunction, N: int = 8) -> Symbol:
    """The component of Theta_k(v_F) in the slot of Upsilon_k."""
    return Symbol._raw(grade_project(theta_value(k, F, N), THETA_SLOT[k]).terms, F.model)


def theta_leading_term_check(k: int, D: int = 3, model: str = FOURIER, N: int = 8) -> bool:
    """Leading graded component of Theta_k equals Upsilon_k on every generator |m| <= D."""
    if k not in UPSILON:
        raise ValueError("index must be in 1..10")
    basis = GeneratorBasis(D, model)
    ufn = UPSILON[k][0]
    for key in basis.keys:
        F = SuperFunction({key: 1}, model)
        if theta_leading_term(k, F, N) != ufn(F):
            return False
    if k <= 6:
        for key in basis.keys:
            F = SuperFunction({key: 1}, model)
            if theta_value(k, F, N).terms != ufn(F).terms:
                return False
    return True


@dataclass
class IndependenceResult:
    n: int
    members: List[str]
    rank_increase: int

    @property
    def ok(self) -> bool:
        return self.rank_increase == len(self.members)


def upsilon_independence(D: int, model: str = FOURIER) -> List[IndependenceResult]:
    """Per slot n, how many dimensions the Upsilon classes add to the coboundaries.

    All classes in one slot are jointly independent modulo coboundaries iff the
    increase equals their number (classes in different slots are independent
    automatically, the slots being submodules).
    """
    out = []
    for n in (-1, 0, 1):
        ks = [k for k in UPSILON if UPSILON[k][1] == n]
        c0 = build_cocycle(CatalogKey("upsilon", ks[0]), D, model)
        cx = WeightZeroComplex(c0.basis, c0.module, 0)
        ech = Echelon()
        for row in cx.coboundary_rows():
            ech.add(row)
        base = ech.rank
        for k in ks:
            ech.add(cx.vector(build_cocycle(CatalogKey("upsilon", k), D, model)))
        out.append(IndependenceResult(n, [f"Upsilon_{k}" for k in ks], ech.rank - base))
    return out
