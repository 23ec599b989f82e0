import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k2coh.contact import contact_bracket
from k2coh.expr import parse_function as f, parse_symbol as s
from k2coh.grassmann import FOURIER, LAURENT
from k2coh.symbols import (
    COMPOSE_SIGNS, Symbol, compose, grade_project, module_action_psido, module_action_sp,
    order_of, pi_embed, poisson_bracket, supercommutator,
)

from strategies import homogeneous_monomials, models, symbol_monomials, symbols


def test_poisson_examples():
    assert poisson_bracket(s("xi"), s("x")) == s("1")
    assert poisson_bracket(s("bt1"), s("t1")) == s("1")
    assert not poisson_bracket(s("xi^2"), s("xi"))


def test_compose_examples():
    assert compose(s("xi"), s("x"), 6) == s("x*xi + 1").with_cutoff(6)
    B = s("bt1*xi^-2")
    assert compose(s("1"), B, 6).agrees(B)
    # the normal-ordering correction is a constant
    assert compose(s("bt1"), s("t1"), 6).agrees(s("bt1*t1 + 1"))


def test_supercommutator_examples():
    assert supercommutator(s("xi"), s("x"), 6).agrees(s("1"))
    assert not supercommutator(s("xi^2"), s("xi^2"), 6).terms
    lhs = supercommutator(pi_embed(f("x^2")), pi_embed(f("x")), 8)
    assert lhs.agrees(pi_embed(contact_bracket(f("x^2"), f("x"))))


def test_odd_supercommutator_matches_poisson():
    assert supercommutator(s("bt1"), s("t1"), 6).agrees(poisson_bracket(s("bt1"), s("t1")))


def test_order_and_grading():
    assert order_of(s("xi^2")) == 2
    assert order_of(s("x*bt1*xi^-1")) == 0
    assert order_of(Symbol.zero()) == -math.inf
    assert grade_project(s("xi + xi^2"), -1) == s("xi")
    A = s("(x + t1)*xi^-2 + x^2*xi^-3*bt1")
    assert grade_project(A, 2) == A
    assert grade_project(s("t1"), 0) == s("t1")


def test_grade_project_refuses_below_cutoff():
    A = s("xi^-1 + xi^-5").with_cutoff(3)
    with pytest.raises(ValueError):
        grade_project(A, 5)


def test_pi_examples():
    assert pi_embed(f("1")) == s("xi")
    assert pi_embed(f("x")) == s("x*xi") + s("t1*(bt1 - t1*xi) + t2*(bt2 - t2*xi)").scale(
        Fraction(1, 2))
    zeta1 = Symbol.zeta(1)
    assert pi_embed(f("t1")) == s("t1*xi") + zeta1.scale(Fraction(1, 2))


def test_module_action_examples():
    assert module_action_sp(f("1"), s("x")) == s("1")
    assert not module_action_sp(f("x"), s("1"))


def test_cutoff_never_loosens():
    A = s("xi^-1 + xi^-3").with_cutoff(2)
    assert A.with_cutoff(10).cutoff == 2
    assert A.with_cutoff(None).cutoff == 2
    assert (0, -3, 0) not in A.terms


def test_sign_table_is_frozen():
    assert COMPOSE_SIGNS[(0, 0, 0)] == COMPOSE_SIGNS[(0, 0, 1)] == 1
    assert COMPOSE_SIGNS[(1, 1, 0)] == COMPOSE_SIGNS[(1, 1, 1)] == -1
    for p in (0, 1):
        assert COMPOSE_SIGNS[(1, 0, p)] == COMPOSE_SIGNS[(0, 1, p)] == (-1) ** (p + 1)


@given(st.data())
def test_poisson_super_antisymmetry(data):
    model = data.draw(models)
    A, B = data.draw(symbol_monomials(model)), data.draw(symbol_monomials(model))
    sign = -1 if A.p() and B.p() else 1
    assert poisson_bracket(A, B) == -poisson_bracket(B, A).scale(sign)


@given(st.data())
def test_poisson_jacobi(data):
    model = data.draw(models)
    A, B, C = (data.draw(symbol_monomials(model)) for _ in range(3))
    def sg(X, Y):
        return -1 if X.p() and Y.p() else 1
    pb = poisson_bracket
    total = (pb(A, pb(B, C)).scale(sg(A, C)) + pb(B, pb(C, A)).scale(sg(B, A))
             + pb(C, pb(A, B)).scale(sg(C, B)))
    assert not total


@given(st.data())
def test_compose_associative(data):
    model = data.draw(models)
    A, B, C = (data.draw(symbols(model, max_terms=2)) for _ in range(3))
    lhs = compose(compose(A, B, 10), C, 10)
    rhs = compose(A, compose(B, C, 10), 10)
    assert lhs.agrees(rhs, 5)


@given(st.data())
def test_compose_leading_term_is_product(data):
    model = data.draw(models)
    A, B = data.draw(symbol_monomials(model)), data.draw(symbol_monomials(model))
    top = order_of(A * B)
    if top != -math.inf:
        assert grade_project(compose(A, B, 10), -top) == grade_project(A * B, -top)


@given(st.data())
def test_pi_is_a_homomorphism(data):
    model = data.draw(models)
    F, G = data.draw(homogeneous_monomials(model)), data.draw(homogeneous_monomials(model))
    target = pi_embed(contact_bracket(F, G))
    assert poisson_bracket(pi_embed(F), pi_embed(G)) == target
    assert supercommutator(pi_embed(F), pi_embed(G), 10).agrees(target)


@given(st.data())
def test_psido_action_deforms_poisson_action(data):
    """On SPsiDO the leading part of [pi(v_F), A] is the Poisson action."""
    model = data.draw(models)
    F, A = data.draw(homogeneous_monomials(model)), data.draw(symbol_monomials(model))
    pois = module_action_sp(F, A)
    top = order_of(pois)
    if top != -math.inf:
        full = module_action_psido(F, A, 10)
        assert grade_project(full, -top) == grade_project(pois, -top)
