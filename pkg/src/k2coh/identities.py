"""Exact identity suites for K(2), SP(2) and the symbol composition.

Each check runs over a monomial window and returns an :class:`IdentityCheck`
holding the number of instances tested and the first failing witness.
Identities on K(2) run on the full window; identities on symbols use a
seeded sample (the symbol window also ranges over xi powers and bt masks).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

from .contact import contact_bracket, lie_derivative
from .grassmann import FOURIER, MODELS, SuperFunction, d_dx, eta
from .symbols import (
    COMPOSE_SIGNS, Symbol, compose, pi_embed, poisson_bracket, supercommutator,
)


@dataclass
class IdentityCheck:
    name: str
    model: str
    instances: int = 0
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    def summary(self) -> dict:
        return {"name": self.name, "model": self.model, "passed": self.passed,
                "instances": self.instances, "witness": self.witness}


def _sgn(*pairs) -> int:
    e = sum(a.p() * b.p() for a, b in pairs)
    return -1 if e & 1 else 1


def function_window(D: int, model: str) -> List[SuperFunction]:
    return [SuperFunction.monomial(m, e1, e2, model=model)
            for m in range(-D, D + 1) for e1 in (0, 1) for e2 in (0, 1)]


def symbol_sample(D: int, model: str, count: int, rng: random.Random,
                  kmax: int = 2) -> List[Symbol]:
    out = []
    for _ in range(count):
        out.append(Symbol.monomial(rng.randint(-D, D), rng.randint(0, 1), rng.randint(0, 1),
                                   rng.randint(-kmax, kmax), rng.randint(0, 1),
                                   rng.randint(0, 1), model=model))
    return out


def _run(name: str, model: str, cases: Iterable, test: Callable) -> IdentityCheck:
    chk = IdentityCheck(name, model)
    for case in cases:
        chk.instances += 1
        if not test(*case):
            chk.witness = " ; ".join(str(c) for c in case)
            break
    return chk


# -- individual suites ----------------------------------------------------------------

def check_contact_antisymmetry(mons, model):
    return _run("contact bracket super-antisymmetry", model,
                itertools.product(mons, repeat=2),
                lambda F, G: contact_bracket(F, G) == -contact_bracket(G, F).scale(_sgn((F, G))))


def check_contact_jacobi(mons, model):
    def jac(F, G, H):
        cb = contact_bracket
        total = (cb(F, cb(G, H)).scale(_sgn((F, H))) + cb(G, cb(H, F)).scale(_sgn((G, F)))
                 + cb(H, cb(F, G)).scale(_sgn((H, G))))
        return not total
    return _run("contact bracket super-Jacobi", model, itertools.product(mons, repeat=3), jac)


def check_eta_square(mons, model):
    def t(F):
        return all(eta(i, eta(i, F)) == -d_dx(F) for i in (1, 2)) and \
            eta(1, eta(2, F)) == -eta(2, eta(1, F))
    return _run("eta_i^2 = -d/dx, eta_1 eta_2 = -eta_2 eta_1", model, ((F,) for F in mons), t)


def check_density_representation(mons, model, lams=(0, Fraction(1, 2), -1, Fraction(3, 2))):
    def t(F, G, H, lam):
        lhs = lie_derivative(lam, F, lie_derivative(lam, G, H)) - \
            lie_derivative(lam, G, lie_derivative(lam, F, H)).scale(_sgn((F, G)))
        return lhs == lie_derivative(lam, contact_bracket(F, G), H)
    small = mons[::3]
    return _run("density action is a representation", model,
                ((F, G, H, lam) for lam in lams
                 for F, G, H in itertools.product(small, small, mons[::5])), t)


def check_poisson_antisymmetry(syms, model):
    return _run("Poisson super-antisymmetry", model, itertools.product(syms, repeat=2),
                lambda A, B: poisson_bracket(A, B)
                == -poisson_bracket(B, A).scale(_sgn((A, B))))


def check_poisson_jacobi(triples, model):
    def jac(A, B, C):
        pb = poisson_bracket
        total = (pb(A, pb(B, C)).scale(_sgn((A, C))) + pb(B, pb(C, A)).scale(_sgn((B, A)))
                 + pb(C, pb(A, B)).scale(_sgn((C, B))))
        return not total
    return _run("Poisson super-Jacobi", model, triples, jac)


def check_poisson_leibniz(triples, model):
    def t(A, B, C):
        lhs = poisson_bracket(A, B * C)
        rhs = poisson_bracket(A, B) * C + (B * poisson_bracket(A, C)).scale(_sgn((A, B)))
        return lhs == rhs
    return _run("Poisson bracket is a superderivation", model, triples, t)


def check_compose_identity(syms, model, signs=None):
    one = Symbol.monomial(model=model)

    def t(A):
        return compose(one, A, 12, signs).agrees(A) and compose(A, one, 12, signs).agrees(A)
    return _run("composition identity", model, ((A,) for A in syms), t)


def check_compose_associativity(triples, model, cutoff=10, depth=5, signs=None):
    def t(A, B, C):
        lhs = compose(compose(A, B, cutoff, signs), C, cutoff, signs)
        rhs = compose(A, compose(B, C, cutoff, signs), cutoff, signs)
        return lhs.agrees(rhs, depth)
    return _run("composition associativity", model, triples, t)


def check_pi_poisson(mons, model):
    return _run("pi is a homomorphism (Poisson)", model, itertools.product(mons, repeat=2),
                lambda F, G: poisson_bracket(pi_embed(F), pi_embed(G))
                == pi_embed(contact_bracket(F, G)))


def check_pi_compose(mons, model, signs=None):
    def t(F, G):
        lhs = supercommutator(pi_embed(F), pi_embed(G), cutoff=10, signs=signs)
        return lhs.agrees(pi_embed(contact_bracket(F, G)))
    return _run("pi is a homomorphism (supercommutator)", model,
                itertools.product(mons, repeat=2), t)


# -- the whole suite -----------------------------------------------------------------

def algebra_suite(D: int = 4, seed: int = 0, models: Sequence[str] = MODELS,
                  samples: int = 60, signs: Optional[dict] = None) -> List[IdentityCheck]:
    """All identity checks on the window |m| <= D for each derivative model.

    ``signs`` overrides the composition sign table (used to test that a wrong
    table is detected).
    """
    out: List[IdentityCheck] = []
    for model in models:
        rng = random.Random(f"{seed}:{model}")
        mons = function_window(D, model)
        syms = symbol_sample(D, model, samples, rng)
        triples = [tuple(rng.sample(syms, 3)) for _ in range(samples)]
        out += [
            check_contact_antisymmetry(mons, model),
            check_contact_jacobi(mons, model),
            check_eta_square(mons, model),
            check_density_representation(mons, model),
            check_poisson_antisymmetry(syms, model),
            check_poisson_jacobi(triples, model),
            check_poisson_leibniz(triples, model),
            check_compose_identity(syms, model, signs),
            check_compose_associativity(triples, model, signs=signs),
            check_pi_poisson(mons, model),
            check_pi_compose(mons, model, signs),
        ]
    return out
