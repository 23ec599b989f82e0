import pytest
from hypothesis import given
from hypothesis import strategies as st

from k2coh.cli import cmd_eval
from k2coh.expr import (
    ParseError, format_function, format_symbol, parse_function, parse_symbol,
)
from k2coh.grassmann import FOURIER, LAURENT

from strategies import functions, models, symbols


@pytest.mark.parametrize("text, want", [
    ("pb(xi, x)", "1"),
    ("cb(x^2, x)", "-x^2"),
    ("pi(t1)", "1/2*t1*xi + 1/2*bt1"),
    ("pi(1)", "xi"),
    ("lie(1/2, x, 1)", "1/2"),
    ("eta(1, x*t1)", "x"),
    ("cb(e^2, e)", "-e^3"),
    ("act(1, x)", "1"),
])
def test_eval_examples(text, want):
    assert cmd_eval(text) == want


def test_pi_t1_matches_unsimplified_form():
    assert parse_symbol("t1*xi + 1/2*bt1 - 1/2*t1*xi") == parse_symbol("1/2*t1*xi + 1/2*bt1")


def test_juxtaposition_is_supercommutative():
    assert format_symbol(parse_symbol("bt1*t1")) == "-t1*bt1"
    assert parse_function("t2*t1") == parse_function("-t1*t2")


@pytest.mark.parametrize("text", ["x +", "foo(x)", "x^-1/0", "(x", "x e", "2^-1^2", "xi^y"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_symbol(text)


def test_model_inference():
    assert parse_symbol("e^2").model == FOURIER
    assert parse_symbol("x^2").model == LAURENT
    with pytest.raises(ParseError):
        parse_symbol("x", FOURIER)


def test_function_rejects_symbol_content():
    with pytest.raises(ValueError):
        parse_function("xi")


@given(st.data())
def test_function_round_trip(data):
    model = data.draw(models)
    F = data.draw(functions(model))
    assert parse_function(format_function(F), model) == F


@given(st.data())
def test_symbol_round_trip(data):
    model = data.draw(models)
    A = data.draw(symbols(model))
    assert parse_symbol(format_symbol(A), model) == A
