"""K(1)_i-module families inside the graded slots SP_n and the maps psi.

Each family is a linear map ``F -> A_F`` from functions on S^{1|2} to SP_n
that intertwines the density action of some weight with the Poisson action
``v_G . A = {pi(v_G), A}`` of K(1)_i.  For n not in {0, -1} the families
``(n, 0)``, ``(n, 1/2)``, ``(n, ~1/2)`` are modules only modulo the
B-family ``SP_{n,i}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .contact import WeightedDensity, in_K1, lie_derivative
from .grassmann import SuperFunction, by_parity, d_dx, d_theta, eta, mul_theta, sign_p
from .linalg import ColumnIndex, Infeasible, nullspace, rank, solve
from .symbols import Symbol, grade_project, module_action_sp, _deg

HALF = Fraction(1, 2)
# Coefficient c of the leading term (c theta_j d/dtheta_j - 1)(F) zeta_i xi^{-n-1} of
# A^{(n,1/2,i)}, n not in {0,-1}.  With c = 1 the map F -> A_F kills theta_j C^oo and
# the quotient families fall two dimensions short of SP_n / SP_{n,i}; c = 2 (the
# pattern of the n = 0 family) gives an injective intertwiner that completes them.
HALF_FAMILY_COEFF = 2
FAMILIES = ("0", "1/2", "~1/2", "1", "B")


@dataclass(frozen=True)
class FamilyTag:
    n: int
    j: str
    i: int = 1

    def __post_init__(self):
        if self.j not in FAMILIES or self.i not in (1, 2):
            raise ValueError(f"invalid family tag {self}")
        special = self.n in (0, -1)
        if self.j == "B" and special:
            raise ValueError("the B-family exists only for n not in {0, -1}")

    @property
    def quotient(self) -> bool:
        """Family is a module only modulo SP_{n,i}."""
        return self.n not in (0, -1) and self.j in ("0", "1/2", "~1/2")

    @property
    def weight(self) -> Fraction:
        """Density weight intertwined by the family."""
        return self.n + {"0": 0, "1/2": HALF, "~1/2": HALF, "1": 1, "B": 1}[self.j]

    @property
    def pi_shift(self) -> int:
        return int(self.j in ("1/2", "~1/2"))

    def __str__(self):
        return f"({self.n},{self.j},{self.i})"


def all_tags(n: int) -> List[FamilyTag]:
    js = ("0", "1/2", "~1/2", "1") if n in (0, -1) else ("0", "1/2", "~1/2", "B")
    return [FamilyTag(n, j, i) for i in (1, 2) for j in js]


# -- helpers ----------------------------------------------------------------------------

def _S(F: SuperFunction) -> Symbol:
    return Symbol.from_function(F)


def _xi(k, model):
    return Symbol.xi(k, model)


def _bt(i, model):
    return Symbol.thetabar(i, model)


def _zeta(i, model):
    return Symbol.zeta(i, model)


def _th(i, F):
    return mul_theta(i, F)


def _t(i, model):
    return Symbol.monomial(e1=int(i == 1), e2=int(i == 2), model=model)


# -- the displayed families (one function per family) --------------------------------

@by_parity
def _B(F, n, i):
    j, mdl = 3 - i, F.model
    first = _S(F) * _t(j, mdl) * _bt(j, mdl) * _xi(-n - 1, mdl)
    inner = eta(j, F) - eta(i, F).scale(HALF)
    second = _S(_th(j, inner)) * _zeta(i, mdl) * _zeta(j, mdl) * _xi(-n - 2, mdl)
    return first + second


@by_parity
def _A_minus1_0(F, n, i):
    mdl = F.model
    out = _S(F) * _xi(1, mdl)
    half = Fraction(sign_p(F, 1), 2)
    for k in (1, 2):
        out = out + (_S(eta(k, F)) * _zeta(k, mdl)).scale(half)
    return out


@by_parity
def _A_0_0(F, n, i):
    return _S(F)


@by_parity
def _A_0_half(F, n, i):
    j, mdl = 3 - i, F.model
    out = _S(_th(i, F))
    out = out - _S(F - _th(j, d_theta(j, F)).scale(2)) * _bt(i, mdl) * _xi(-1, mdl)
    out = out - _S(_th(j, d_theta(i, F))) * _bt(j, mdl) * _xi(-1, mdl)
    out = out + _S(d_dx(F)) * _t(j, mdl) * _bt(i, mdl) * _bt(j, mdl) * _xi(-2, mdl)
    return out


@by_parity
def _At_0_half(F, n, i):
    j, mdl = 3 - i, F.model
    s = sign_p(F)
    inner = d_theta(j, F) - d_theta(i, F).scale(2) + _th(j, d_theta(j, d_theta(i, F))).scale(2)
    out = _S(_th(i, inner)) * _bt(j, mdl) * _xi(-1, mdl)
    out = out + (_S(F.scale(Fraction(3 - s, 2))) * _bt(j, mdl) * _xi(-1, mdl))
    third = d_theta(j, F) - d_theta(i, F) + _th(i, d_dx(F))
    out = out + (_S(third) * _bt(i, mdl) * _bt(j, mdl) * _xi(-2, mdl)).scale(s)
    return out


@by_parity
def _A_minus1_half(F, n, i):
    j, mdl = 3 - i, F.model
    out = _S(F) * _zeta(i, mdl)
    out = out - _S(_th(j, eta(i, F)) + _th(i, d_theta(j, F))) * _bt(j, mdl)
    out = out - (_S(d_theta(j, F)) * _bt(i, mdl) * _bt(j, mdl) * _xi(-1, mdl)).scale(sign_p(F))
    return out


@by_parity
def _At_minus1_half(F, n, i):
    j, mdl = 3 - i, F.model
    return _S(F) * _zeta(i, mdl) + _S(F - _th(j, eta(i, F))) * _bt(j, mdl)


@by_parity
def _A_n_0(F, n, i):
    j, mdl = 3 - i, F.model
    r = Fraction(1, 2 * n + 1)
    s = sign_p(F)
    out = _S(F) * _xi(-n, mdl)
    t2 = _th(j, eta(j, eta(i, F))).scale(r) - eta(i, F)
    out = out + (_S(t2) * _zeta(i, mdl) * _xi(-n - 1, mdl)).scale(Fraction(s, 2))
    t3 = d_theta(j, F) + _th(i, d_theta(j, d_theta(i, F))).scale((3 * n + 1) * r)
    out = out + _S(t3) * _bt(j, mdl) * _xi(-n - 1, mdl)
    ei3 = eta(i, eta(i, eta(i, F)))
    t4 = _th(j, ei3) + eta(i, eta(j, F))
    out = out + (_S(t4) * _bt(j, mdl) * _bt(i, mdl) * _xi(-n - 2, mdl)).scale((n + 1) * r)
    return out


@by_parity
def _A_n_half(F, n, i, coeff=HALF_FAMILY_COEFF):
    j, mdl = 3 - i, F.model
    r = Fraction(1, 2 * n + 1)
    out = _S(_th(j, d_theta(j, F)).scale(coeff) - F) * _zeta(i, mdl) * _xi(-n - 1, mdl)
    t2 = _th(i, _th(j, d_dx(F))).scale(n) - _th(j, d_theta(i, F))
    out = out + (_S(t2) * _bt(j, mdl) * _xi(-n - 1, mdl)).scale(r)
    out = out + (_S(d_dx(F)) * _t(j, mdl) * _bt(i, mdl) * _bt(j, mdl)
                 * _xi(-n - 2, mdl)).scale((n + 1) * r)
    return out


@by_parity
def _At_n_half(F, n, i):
    j, mdl = 3 - i, F.model
    r = Fraction(n, 2 * n + 1)
    s = sign_p(F)
    t1 = F + _th(i, d_theta(j, F)) - _th(i, d_theta(i, F)).scale(r)
    out = (_S(_th(j, t1)) * _xi(-n, mdl)).scale(s)
    t2 = _th(j, d_theta(j, F)) - _th(j, eta(i, F)).scale(r)
    out = out + _S(t2) * _bt(i, mdl) * _xi(-n - 1, mdl)
    t3 = _th(j, d_dx(F)) + eta(j, F)
    out = out + (_S(t3) * _zeta(i, mdl) * _bt(j, mdl) * _xi(-n - 2, mdl)).scale(s)
    return out


def _A_special_1(F, n, i):
    # A^{(n,1,i)} for n in {0, -1} has the same shape as the B-family
    return _B(F, n, i)


_TABLE: Dict[tuple, Callable] = {
    (0, "0"): _A_0_0, (0, "1/2"): _A_0_half, (0, "~1/2"): _At_0_half, (0, "1"): _A_special_1,
    (-1, "0"): _A_minus1_0, (-1, "1/2"): _A_minus1_half, (-1, "~1/2"): _At_minus1_half,
    (-1, "1"): _A_special_1,
}
_GENERIC = {"0": _A_n_0, "1/2": _A_n_half, "~1/2": _At_n_half, "B": _B}


def build_family_element(tag: FamilyTag, F: SuperFunction) -> Symbol:
    """The symbol ``A_F`` (or ``B_F``) of the family ``tag``; lies in SP_n."""
    fn = _TABLE.get((tag.n, tag.j)) if tag.n in (0, -1) else _GENERIC[tag.j]
    if fn is None:
        raise ValueError(f"invalid family tag {tag}")
    if not F:
        return Symbol.zero(F.model)
    out = fn(F, tag.n, tag.i)
    bad = [k for k in out.terms if _deg(k) != -tag.n]
    assert not bad, f"family {tag} leaves slot {tag.n}: {bad}"
    return out


def psi(tag: FamilyTag, d: WeightedDensity) -> Symbol:
    """``psi^i_{n,j}``: density of the tag's weight -> family element."""
    if Fraction(d.weight) != tag.weight:
        raise ValueError(f"weight {d.weight} does not match family {tag} (weight {tag.weight})")
    return build_family_element(tag, d.F)


# -- quotient by the B-family ------------------------------------------------------------

def _candidate_functions(A: Symbol, spread: int = 3):
    modes = {k[0] for k in A.terms}
    out = []
    for m in sorted({m + s for m in modes for s in range(-spread, spread + 1)}):
        for e1 in (0, 1):
            for e2 in (0, 1):
                out.append((m, e1, e2))
    return out


def b_span_member(A: Symbol, n: int, i: int) -> Optional[SuperFunction]:
    """Return H with ``A == B_H^{(n,i)}`` if one exists, else None."""
    if not A:
        return SuperFunction.zero(A.model)
    cands = _candidate_functions(A)
    cols = ColumnIndex(cands)
    rows: Dict = {}
    for key in cands:
        img = _B(SuperFunction({key: 1}, A.model), n, i)
        for mk, c in img.terms.items():
            rows.setdefault(mk, {})[cols(key)] = c
    eqs = [(mk, rows.get(mk, {}), A.terms.get(mk, 0)) for mk in set(rows) | set(A.terms)]
    try:
        sol = solve(eqs, len(cols))
    except Infeasible:
        return None
    return SuperFunction({cols.keys[j]: v for j, v in sol.items()}, A.model)


def equal_mod_b(A: Symbol, B: Symbol, n: int, i: int) -> bool:
    return b_span_member(A - B, n, i) is not None


def verify_intertwining(tag: FamilyTag, G: SuperFunction, F: SuperFunction,
                        weight: Optional[Fraction] = None) -> bool:
    """``v_G . A_F == A_{L^w_{v_G} F}`` (modulo SP_{n,i} for quotient families)."""
    if not in_K1(tag.i, G):
        raise ValueError("G must lie in K(1)_i")
    w = tag.weight if weight is None else Fraction(weight)
    lhs = module_action_sp(G, build_family_element(tag, F))
    rhs = build_family_element(tag, lie_derivative(w, G, F))
    if tag.quotient:
        return equal_mod_b(lhs, rhs, tag.n, tag.i)
    return lhs == rhs


def slot_rank(tags: List[FamilyTag], mode: int, model: str) -> int:
    """Rank of the union of family images of all monomials in one mode."""
    rows = []
    for tag in tags:
        for e1 in (0, 1):
            for e2 in (0, 1):
                img = build_family_element(tag, SuperFunction({(mode, e1, e2): 1}, model))
                rows.append(dict(img.terms))
    cols = ColumnIndex()
    return rank({cols(k): v for k, v in r.items()} for r in rows)


# -- whole-slot checks ------------------------------------------------------------------

@dataclass
class FamilyCheck:
    name: str
    passed: bool
    instances: int
    witness: Optional[str] = None

    def summary(self) -> dict:
        return {"name": self.name, "passed": self.passed, "instances": self.instances,
                "witness": self.witness}


def _monomials(R: int, model: str, sub: Optional[int] = None) -> List[SuperFunction]:
    return [SuperFunction.monomial(m, e1, e2, model=model)
            for m in range(-R, R + 1) for e1 in (0, 1) for e2 in (0, 1)
            if not (sub == 1 and e2 or sub == 2 and e1 or sub and e1 and e2)]


def intertwining_check(tag: FamilyTag, R: int = 3, model: str = "fourier") -> FamilyCheck:
    count = 0
    for G in _monomials(R, model, tag.i):
        for F in _monomials(R, model):
            count += 1
            if not verify_intertwining(tag, G, F):
                return FamilyCheck(f"intertwining {tag}", False, count, f"G={G}, F={F}")
    return FamilyCheck(f"intertwining {tag}", True, count)


def decomposition_check(n: int, i: int, R: int = 3, model: str = "fourier") -> FamilyCheck:
    """Per mode, the families of slot n span all 16 dimensions of SP_n.

    With 16 image vectors per mode this means the sum is direct (n in {0, -1})
    or, for the other n, that the three quotient families span SP_n modulo the
    B-family.  Modes are preserved by every family in the fourier model only.
    """
    if model != "fourier":
        raise ValueError("the per-mode decomposition check needs the fourier model")
    tags = [t for t in all_tags(n) if t.i == i]
    for m in range(-R, R + 1):
        r = slot_rank(tags, m, model)
        if r != 16:
            return FamilyCheck(f"decomposition SP_{n} (i={i})", False, m + R + 1,
                               f"mode {m}: rank {r} of 16")
    return FamilyCheck(f"decomposition SP_{n} (i={i})", True, 2 * R + 1)


def family_suite(n_values=range(-3, 4), R: int = 3, model: str = "fourier"
                       ) -> List[FamilyCheck]:
    out = []
    for n in n_values:
        for tag in all_tags(n):
            out.append(intertwining_check(tag, R, model))
        for i in (1, 2):
            out.append(decomposition_check(n, i, R, model))
    return out
