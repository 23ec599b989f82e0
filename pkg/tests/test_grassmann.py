from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k2coh.expr import parse_function as f
from k2coh.grassmann import (
    FOURIER, LAURENT, Parity, SuperFunction, d_dx, d_theta, eta, eta_bar, parity_of, sign_p,
)

from strategies import functions, homogeneous_monomials, models


@pytest.mark.parametrize("a, b, want", [
    ("t1", "t1", "2*t1"),
    ("x", "-x", "0"),
    ("x + t1*t2", "x^2 - t1*t2", "x + x^2"),
])
def test_add_examples(a, b, want):
    assert f(a) + f(b) == f(want)


@pytest.mark.parametrize("a, b, want", [
    ("t2", "t1", "-t1*t2"),
    ("t1", "t1", "0"),
    ("x*t1", "x^2*t2", "x^3*t1*t2"),
])
def test_mul_examples(a, b, want):
    assert f(a) * f(b) == f(want)


def test_d_dx_examples():
    assert d_dx(f("x^3")) == f("3*x^2")
    assert not d_dx(f("t1"))
    assert d_dx(f("x^-1*t1*t2")) == f("-x^-2*t1*t2")


def test_fourier_derivative_is_diagonal():
    F = f("3*e^2 - e^-1*t1", FOURIER)
    assert d_dx(F) == f("6*e^2 + e^-1*t1", FOURIER)


def test_left_derivative_signs():
    assert d_theta(2, f("t1*t2")) == f("-t1")
    assert d_theta(1, f("t1*t2")) == f("t2")
    assert not d_theta(1, f("x*t2"))


def test_eta_examples():
    assert eta(1, f("x")) == f("-t1")
    assert eta(1, f("x*t1")) == f("x")
    assert eta(1, eta(1, f("x^2"))) == f("-2*x")
    assert eta_bar(1, f("x")) == f("t1")
    assert eta_bar(1, f("t1")) == f("1")
    assert eta_bar(1, eta_bar(1, f("x^2"))) == f("2*x")


def test_parity_examples():
    assert parity_of(f("t1*t2")) is Parity.EVEN
    assert parity_of(f("x*t2")) is Parity.ODD
    assert parity_of(f("x + t1")) is Parity.MIXED
    assert parity_of(SuperFunction.zero()) is Parity.EVEN


def test_sign_p_rejects_mixed():
    with pytest.raises(ValueError):
        sign_p(f("x + t1"))


def test_models_do_not_mix():
    with pytest.raises(ValueError):
        f("x") + f("e", FOURIER)


@given(st.data())
def test_ring_axioms(data):
    model = data.draw(models)
    a, b, c = (data.draw(functions(model)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(st.data())
def test_supercommutativity(data):
    model = data.draw(models)
    a, b = data.draw(homogeneous_monomials(model)), data.draw(homogeneous_monomials(model))
    sign = -1 if a.p() and b.p() else 1
    assert a * b == (b * a).scale(sign)


@given(st.data())
def test_derivations(data):
    model = data.draw(models)
    a, b = data.draw(homogeneous_monomials(model)), data.draw(functions(model))
    assert d_dx(a * b) == d_dx(a) * b + a * d_dx(b)
    for i in (1, 2):
        assert d_theta(i, a * b) == d_theta(i, a) * b + (a * d_theta(i, b)).scale(sign_p(a))


@given(st.data())
def test_eta_squares(data):
    model = data.draw(models)
    F = data.draw(functions(model))
    for i in (1, 2):
        assert eta(i, eta(i, F)) == -d_dx(F)
        assert eta_bar(i, eta_bar(i, F)) == d_dx(F)
    assert eta(1, eta(2, F)) == -eta(2, eta(1, F))


def test_coefficients_are_exact():
    F = SuperFunction({(1, 0, 0): Fraction(1, 3)}).scale(3)
    assert F == f("x")
    assert F.coeff(1) == 1
