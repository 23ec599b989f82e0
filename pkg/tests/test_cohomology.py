import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k2coh.catalog import CatalogKey, UPSILON, build_cocycle
from k2coh.cohomology import (
    Cochain1, DensityModule, PsiDOModule, SPSlotModule, coboundary_of, cocycle_defect,
    h1_dimension, is_cocycle, restrict_cochain, restriction_kernel, solve_coboundary, tabulate,
    weight_of,
)
from k2coh.contact import GeneratorBasis
from k2coh.expr import parse_function as f, parse_symbol as s
from k2coh.grassmann import FOURIER, LAURENT, SuperFunction
from k2coh.symbols import Symbol

HALF = Fraction(1, 2)


def test_coboundary_examples():
    basis = GeneratorBasis(3, LAURENT)
    assert coboundary_of(s("1"), basis, SPSlotModule(0, LAURENT)).is_zero()
    c = coboundary_of(s("x"), basis, SPSlotModule(0, LAURENT))
    assert c.value((0, 0, 0)) == s("1")


@pytest.mark.parametrize("model", [LAURENT, FOURIER])
def test_coboundaries_are_cocycles(model):
    basis = GeneratorBasis(3, model)
    G = Symbol.monomial(1, 1, 0, k=-1, n2=1, model=model)
    module = SPSlotModule(0, model)
    assert module.contains(G)
    c = coboundary_of(G, basis, module)
    assert is_cocycle(c).ok
    res = solve_coboundary(c)
    assert res.feasible
    assert (coboundary_of(res.G, basis, module) - c).is_zero()


def test_coboundary_of_x_over_xi_is_solved():
    basis = GeneratorBasis(3, LAURENT)
    module = SPSlotModule(1, LAURENT)
    c = coboundary_of(s("x*xi^-1"), basis, module)
    res = solve_coboundary(c)
    assert res.feasible
    assert (coboundary_of(res.G, basis, module) - c).is_zero()


def test_upsilon2_defect_examples():
    c = build_cocycle("upsilon:2", 3, LAURENT)
    assert not cocycle_defect(c, (1, 0, 0), (2, 0, 0))
    assert c.value((1, 0, 0)) == s("xi^-1") * Symbol.zeta(1) * Symbol.zeta(2)
    assert not build_cocycle("upsilon:2", 3, LAURENT).value((0, 0, 0))


def test_perturbed_upsilon2_is_caught():
    c = build_cocycle("upsilon:2", 3, LAURENT)
    vals = dict(c.values)
    vals[(2, 0, 0)] = vals[(2, 0, 0)] + (s("xi^-1") * Symbol.zeta(1) * Symbol.zeta(2))
    bad = Cochain1(c.basis, c.module, vals, 0, "Upsilon_2 perturbed")
    rep = is_cocycle(bad)
    assert not rep.ok
    u, v, _ = rep.failures[0]
    assert cocycle_defect(bad, u, v)


def test_random_linear_map_is_not_a_cocycle():
    rng = random.Random(7)
    basis = GeneratorBasis(2, FOURIER)
    module = DensityModule(0, FOURIER)
    vals = {key: SuperFunction({(rng.randint(-2, 2), key[1], key[2]): rng.randint(1, 3)},
                               FOURIER) for key in basis.keys}
    assert not is_cocycle(Cochain1(basis, module, vals, 0, "random")).ok


def test_upsilon2_is_nontrivial_with_certificate():
    res = solve_coboundary(build_cocycle("upsilon:2", 4))
    assert not res.feasible and res.certificate


def test_weight_examples():
    assert weight_of(f("x"), LAURENT) == 0
    assert weight_of(f("e", FOURIER), FOURIER) == 1
    assert weight_of(f("x^3*t1"), LAURENT) == Fraction(5, 2)
    assert weight_of(s("x^2*xi"), LAURENT, SPSlotModule(-1, LAURENT)) == 1
    with pytest.raises(AssertionError):
        weight_of(f("x + x^2"), LAURENT)


def test_restriction_drops_other_generators():
    c = build_cocycle("upsilon:1", 2)
    r = restrict_cochain(c, 1)
    assert all(not k[2] for k in r.values)
    assert set(r.basis.keys) == set(GeneratorBasis(2, FOURIER, 1).keys)


@pytest.mark.parametrize("n, want", [(-1, (3, 0)), (0, (6, 0)), (1, (1, 0)), (2, (0, 0))])
def test_h1_sp_slots_small_window(n, want):
    res = h1_dimension(SPSlotModule(n), 3)
    assert res.as_tuple() == want and res.stable


@pytest.mark.parametrize("lam, want", [(0, (3, 0)), (1, (1, 0)), (HALF, (0, 1)),
                                       (-HALF, (0, 2)), (2, (0, 0))])
def test_h1_densities_small_window(lam, want):
    assert h1_dimension(DensityModule(lam), 3, sub=1).as_tuple() == want


def test_h1_needs_window():
    with pytest.raises(ValueError):
        h1_dimension(SPSlotModule(0), 1)


def test_restriction_kernel_is_coboundaries():
    ker = restriction_kernel(SPSlotModule(0), 3)
    assert ker.dim == ker.coboundary_rank
    z = ker.cochain([1] * ker.dim)
    assert is_cocycle(z).ok and solve_coboundary(z).feasible


@settings(max_examples=10)
@given(st.integers(-2, 2), st.sampled_from([LAURENT, FOURIER]))
def test_parity_consistency_of_coboundaries(n, model):
    basis = GeneratorBasis(2, model)
    G = Symbol.monomial(0, 1, 0, k=-n - 1, n1=1, model=model)
    c = coboundary_of(G, basis, SPSlotModule(n, model))
    assert c.parity == 0 and c.parity_consistent()
