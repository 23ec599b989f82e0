from fractions import Fraction

import pytest

from k2coh.catalog import (
    BETA, CORRESPONDENCE, UPSILON, CatalogKey, all_keys, beta_function, build_cocycle,
    cohomology_coordinates, cocycle_parity, module_for, theorem_correspondence_check,
    theta_leading_term, theta_leading_term_check, theta_value, upsilon_function,
    upsilon_independence, upsilon_tilde_check,
)
from k2coh.cohomology import SPSlotModule, is_cocycle, solve_coboundary, tabulate
from k2coh.contact import GeneratorBasis
from k2coh.expr import parse_function as f, parse_symbol as s
from k2coh.grassmann import FOURIER, LAURENT
from k2coh.symbols import Symbol, grade_project


def test_key_parsing():
    assert CatalogKey.parse("upsilon:7") == CatalogKey("upsilon", 7)
    assert CatalogKey.parse("theta:10@N=8") == CatalogKey("theta", 10, N=8)
    assert CatalogKey.parse("C:3@i=2") == CatalogKey("C", 3, 2)
    assert CatalogKey.parse("Upsilon:1").family == "upsilon"
    assert str(CatalogKey("C", 3, 2)) == "C:3@i=2"
    for bad in ("upsilon:11", "C:8", "c:1@i=3", "zeta:1", "C:1@k=2", "theta"):
        with pytest.raises(ValueError):
            CatalogKey.parse(bad)


def test_all_keys():
    keys = all_keys()
    assert len(keys) == 8 + 16 + 10 + 10
    assert all(cocycle_parity(k) == 0 for k in keys if k.family in ("upsilon", "theta"))


def test_upsilon2_values():
    c = build_cocycle("upsilon:2", 2, LAURENT)
    assert c.value((1, 0, 0)) == s("xi^-1") * Symbol.zeta(1) * Symbol.zeta(2)
    assert not c.value((0, 0, 0))


def test_c0_on_theta1():
    c = build_cocycle("C:0@i=1", 2, LAURENT)
    assert c.value((0, 1, 0)) == f("1/2*t1")


def test_theta7_on_x_squared():
    got = theta_value(7, f("x^2"), 4)
    want = s("2*xi^-1 - 2*(t1*(bt1 - t1*xi) + t2*(bt2 - t2*xi))*xi^-1")
    assert got.terms == want.terms and got.cutoff == 4


def test_theta_is_exact_above_cutoff():
    F = f("e^2*t1", FOURIER)
    small, big = theta_value(9, F, 4), theta_value(9, F, 7)
    assert small.agrees(big, 4)


@pytest.mark.parametrize("k", [2, 4])
def test_theta_equals_upsilon_for_small_index(k):
    for F in (f("x^3"), f("x^2*t1"), f("x*t1*t2")):
        assert theta_value(k, F, 8).terms == UPSILON[k][0](F).terms
    assert theta_leading_term_check(k, D=2)


def test_theta10_leading_coefficients():
    """At n = 1 the series gives 2/3 F''' xi^-3 zeta1 zeta2 and unit eta-terms."""
    F = f("x^3")
    lead = theta_leading_term(10, F)
    assert lead == UPSILON[10][0](F)
    # F''' = 6, so the bt1 bt2 xi^-3 coefficient is 2/3 * 6
    assert lead.terms[(0, -3, 12)] == 4
    # t2 bt1 xi^-2: +4 from expanding 4 xi^-3 zeta1 zeta2, -6 from eta_2(F'') zeta1 xi^-2
    assert lead.terms[(0, -2, 2 | 4)] == -2


@pytest.mark.parametrize("k", [7, 8, 9, 10])
def test_theta_leading_terms(k):
    assert theta_leading_term_check(k, D=2)


@pytest.mark.parametrize("key", ["c:0", "c:2@i=2", "C:4", "C:7@i=2", "upsilon:3",
                                 "upsilon:8", "theta:8@N=5"])
def test_cocycles_on_small_window(key):
    c = build_cocycle(key, 3)
    assert is_cocycle(c).ok and c.parity_consistent()
    assert not solve_coboundary(c).feasible


@pytest.mark.parametrize("key", ["c:0", "C:0", "upsilon:3"])
def test_translation_invariant_classes_die_in_laurent_model(key):
    """Without derivatives of F these are coboundaries when x^{-1} is available."""
    c = build_cocycle(key, 3, LAURENT)
    assert is_cocycle(c).ok
    assert solve_coboundary(c).feasible


def test_upsilon_independence():
    for res in upsilon_independence(3):
        assert res.ok, res


def test_tilde_combinations():
    assert all(r.ok for r in upsilon_tilde_check(3))


@pytest.mark.parametrize("ups, beta", [("Upsilon_2", "beta5"), ("Upsilon_10", "psi_1,0(C3)")])
@pytest.mark.parametrize("i", [1, 2])
def test_correspondence_examples(ups, beta, i):
    results = {(r.upsilon, r.i): r for r in theorem_correspondence_check(3)}
    r = results[(ups, i)]
    assert r.ok and r.beta == beta and abs(r.scalar) == 1


def test_distinct_classes_separate():
    basis = GeneratorBasis(3, FOURIER, 1)
    module = SPSlotModule(-1)
    target = tabulate(basis, module, upsilon_function("Upsilon_1")[0], 0, "Upsilon_1")
    beta5 = tabulate(basis, module, beta_function("beta5", 1)[0], 0, "beta5")
    assert cohomology_coordinates(target, {"beta5": beta5}) is None


def test_every_correspondence_has_a_beta():
    assert {b for _, b in CORRESPONDENCE} <= set(BETA)
    assert len(CORRESPONDENCE) == 10
