"""The contact Lie superalgebra K(2), its subalgebras K(1)_i and weighted densities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .grassmann import (
    FOURIER, LAURENT, SuperFunction, by_parity, d_dx, d_theta, eta, mul_theta,
    parity_of, Parity, sign_p,
)


@dataclass(frozen=True)
class ContactField:
    """The vector field ``v_F`` with contact Hamiltonian ``F``."""

    F: SuperFunction

    @property
    def parity(self) -> Parity:
        return parity_of(self.F)

    def __add__(self, other: "ContactField") -> "ContactField":
        return ContactField(self.F + other.F)

    def scale(self, c) -> "ContactField":
        return ContactField(self.F.scale(c))

    def __call__(self, G: SuperFunction) -> SuperFunction:
        return apply_field(self, G)


@dataclass(frozen=True)
class WeightedDensity:
    """``F alpha_2^weight``, optionally parity shifted (Pi)."""

    F: SuperFunction
    weight: Fraction
    pi_shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))

    @property
    def parity(self) -> Parity:
        par = parity_of(self.F)
        if par is Parity.MIXED or not self.pi_shift:
            return par
        return Parity.ODD if par is Parity.EVEN else Parity.EVEN


def _hamiltonian(v) -> SuperFunction:
    return v.F if isinstance(v, ContactField) else v


@by_parity
def _apply_homogeneous(F: SuperFunction, G: SuperFunction) -> SuperFunction:
    half = Fraction(sign_p(F, 1), 2)
    out = F * d_dx(G)
    for i in (1, 2):
        eF = eta(i, F)
        if eF:
            out = out + (eF * eta(i, G)).scale(half)
    return out


def apply_field(v, G: SuperFunction) -> SuperFunction:
    """``v_F(G) = F G' + (-1)^(p(F)+1)/2 sum_i eta_i(F) eta_i(G)``."""
    return _apply_homogeneous(_hamiltonian(v), G)


def lie_derivative(lam, v, G: SuperFunction) -> SuperFunction:
    """Weight-``lam`` density action ``L^lam_{v_F}(G) = v_F(G) + lam F' G``."""
    F = _hamiltonian(v)
    out = apply_field(F, G)
    lam = Fraction(lam)
    if lam:
        out = out + (d_dx(F) * G).scale(lam)
    return out


def contact_bracket(F, G) -> SuperFunction:
    """Hamiltonian of ``[v_F, v_G]``; equals ``L^{-1}_{v_F}(G)``."""
    return lie_derivative(-1, F, G)


def restrict_to_K1(i: int, v) -> Optional[ContactField]:
    """Return ``v`` if it lies in K(1)_i (no t_{3-i}, no t1 t2), else None."""
    if i not in (1, 2):
        raise ValueError("index must be 1 or 2")
    F = _hamiltonian(v)
    for (_, e1, e2) in F.terms:
        if (e1, e2)[2 - i] or (e1 and e2):
            return None
    return v if isinstance(v, ContactField) else ContactField(F)


def in_K1(i: int, F: SuperFunction) -> bool:
    return restrict_to_K1(i, F) is not None


def phi_iso(d: WeightedDensity, i: int) -> Tuple[WeightedDensity, WeightedDensity]:
    """Split a K(2)-density into two K(1)_i-densities (weights lam and lam + 1/2).

    The second component carries the sign ``(-1)^(p(F)+1)`` and is parity
    shifted relative to ``F``.
    """
    j = 3 - i
    F = d.F
    first = F - mul_theta(j, d_theta(j, F))

    @by_parity
    def second(H):
        return d_theta(j, H).scale(sign_p(H, 1))

    return (WeightedDensity(first, d.weight, d.pi_shift),
            WeightedDensity(second(F), d.weight + Fraction(1, 2), 1 - d.pi_shift))


# -- finite windows -----------------------------------------------------------

def euler_hamiltonian(model: str) -> SuperFunction:
    """Hamiltonian of the field whose adjoint action grades K(2) by weight."""
    if model == FOURIER:
        return SuperFunction.constant(1, model)
    return SuperFunction.monomial(1, model=model)


def generator_keys(D: int, sub: Optional[int] = None) -> List[Tuple[int, int, int]]:
    """Monomial keys ``(m, e1, e2)`` with |m| <= D, for K(2) or K(1)_sub."""
    keys = []
    for m in range(-D, D + 1):
        for e1 in (0, 1):
            for e2 in (0, 1):
                if sub == 1 and e2 or sub == 2 and e1:
                    continue
                keys.append((m, e1, e2))
    return keys


@dataclass(frozen=True)
class GeneratorBasis:
    """Monomial generators ``v_{X_m t^e}`` with |m| <= D."""

    D: int
    model: str = FOURIER
    sub: Optional[int] = None  # None for K(2), i for K(1)_i

    @property
    def keys(self) -> List[Tuple[int, int, int]]:
        return generator_keys(self.D, self.sub)

    def fields(self) -> List[ContactField]:
        return [ContactField(SuperFunction.monomial(*k, model=self.model)) for k in self.keys]

    def contains(self, F: SuperFunction) -> bool:
        if self.sub is not None and not in_K1(self.sub, F):
            return False
        return all(abs(k[0]) <= self.D for k in F.terms)

    def __len__(self):
        return len(self.keys)


def generator_weight(key: Tuple[int, int, int], model: str) -> Fraction:
    """Eigenvalue of ad(Euler) on the generator with monomial key ``key``."""
    m, e1, e2 = key
    if model == FOURIER:
        return Fraction(m)
    return Fraction(2 * (m - 1) + e1 + e2, 2)
