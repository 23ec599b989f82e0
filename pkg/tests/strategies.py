"""Hypothesis strategies for functions and symbols on small windows."""
from fractions import Fraction

from hypothesis import strategies as st

from k2coh.grassmann import MODELS, SuperFunction
from k2coh.symbols import Symbol

coeffs = st.integers(-3, 3).filter(bool).map(Fraction)
models = st.sampled_from(MODELS)


def function_keys(D=3):
    return st.tuples(st.integers(-D, D), st.integers(0, 1), st.integers(0, 1))


def functions(model, D=3, max_terms=3):
    return st.dictionaries(function_keys(D), coeffs, max_size=max_terms).map(
        lambda d: SuperFunction(d, model))


def homogeneous_monomials(model, D=3):
    return function_keys(D).map(lambda k: SuperFunction({k: 1}, model))


def symbol_keys(D=2, kmax=2):
    return st.tuples(st.integers(-D, D), st.integers(-kmax, kmax), st.integers(0, 15))


def symbols(model, D=2, kmax=2, max_terms=3):
    return st.dictionaries(symbol_keys(D, kmax), coeffs, max_size=max_terms).map(
        lambda d: Symbol(d, model))


def symbol_monomials(model, D=2, kmax=2):
    return symbol_keys(D, kmax).map(lambda k: Symbol({k: 1}, model))
