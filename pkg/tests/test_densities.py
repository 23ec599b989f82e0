from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k2coh.contact import WeightedDensity, in_K1
from k2coh.densities import (
    FamilyTag, _A_n_half, all_tags, build_family_element, decomposition_check, equal_mod_b,
    intertwining_check, psi, verify_intertwining,
)
from k2coh.expr import parse_function as f, parse_symbol as s
from k2coh.grassmann import FOURIER, LAURENT, SuperFunction
from k2coh.symbols import Symbol

from strategies import homogeneous_monomials


def test_tag_validation():
    with pytest.raises(ValueError):
        FamilyTag(0, "B", 1)
    with pytest.raises(ValueError):
        FamilyTag(2, "3/2", 1)
    assert FamilyTag(2, "1/2", 1).quotient and not FamilyTag(2, "B", 1).quotient
    assert not FamilyTag(0, "1/2", 1).quotient
    assert FamilyTag(-1, "~1/2", 2).weight == Fraction(-1, 2)
    assert len(all_tags(0)) == len(all_tags(3)) == 8


def test_family_examples():
    assert build_family_element(FamilyTag(-1, "0", 1), f("1")) == s("xi")
    assert build_family_element(FamilyTag(0, "0", 1), f("t1*t2")) == s("t1*t2")
    zz = Symbol.zeta(1) * Symbol.zeta(2)
    want = s("x*t2*bt2*xi^-3") + s("-1/2*t1*t2*xi^-4") * zz
    assert build_family_element(FamilyTag(2, "B", 1), f("x")) == want


def test_psi_examples():
    tag = FamilyTag(-1, "1", 1)
    assert psi(tag, WeightedDensity(f("x"), 0)) == build_family_element(tag, f("x"))
    tag = FamilyTag(0, "1/2", 1)
    d = WeightedDensity(f("t1"), Fraction(1, 2), 1)
    assert psi(tag, d) == build_family_element(tag, f("t1"))
    with pytest.raises(ValueError):
        psi(FamilyTag(0, "1", 1), WeightedDensity(f("x"), Fraction(1, 2)))


def test_intertwining_examples():
    assert verify_intertwining(FamilyTag(-1, "0", 1), f("1"), f("x"))
    assert verify_intertwining(FamilyTag(0, "1", 1), f("x"), f("t2"))
    with pytest.raises(ValueError):
        verify_intertwining(FamilyTag(0, "1", 1), f("t2"), f("x"))


def test_tilde_families_use_half_weight():
    """The tilde families intertwine at weight n + 1/2, not n + 1."""
    tag = FamilyTag(0, "~1/2", 1)
    G, F = f("x^2"), f("x*t2")
    assert verify_intertwining(tag, G, F)
    assert not verify_intertwining(tag, G, F, weight=tag.n + 1)


def test_b_family_intertwines_on_window():
    assert intertwining_check(FamilyTag(2, "B", 1), R=2, model=LAURENT).passed


def test_literal_half_family_is_not_injective():
    """With coefficient 1 the family kills functions of the form t2 * h."""
    F = f("e^2*t2", FOURIER)
    assert not _A_n_half(F, 2, 1, coeff=1)
    assert _A_n_half(F, 2, 1)


@pytest.mark.parametrize("n", [-1, 0, 2])
@pytest.mark.parametrize("i", [1, 2])
def test_families_fill_the_slot(n, i):
    assert decomposition_check(n, i, R=2).passed


def test_decomposition_needs_fourier():
    with pytest.raises(ValueError):
        decomposition_check(0, 1, model=LAURENT)


def test_equal_mod_b_sees_b_elements():
    B = build_family_element(FamilyTag(1, "B", 2), f("e^-1*t1", FOURIER))
    A = build_family_element(FamilyTag(1, "0", 2), f("e", FOURIER))
    assert equal_mod_b(A + B, A, 1, 2)
    assert not equal_mod_b(A + A, A, 1, 2)


@given(st.data())
def test_intertwining_property(data):
    n = data.draw(st.integers(-3, 3))
    tag = data.draw(st.sampled_from(all_tags(n)))
    G = data.draw(homogeneous_monomials(FOURIER, 2).filter(lambda g: in_K1(tag.i, g)))
    F = data.draw(homogeneous_monomials(FOURIER, 2))
    assert verify_intertwining(tag, G, F)
