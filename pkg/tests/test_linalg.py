from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k2coh.linalg import (
    ColumnIndex, Echelon, Infeasible, check_certificate, integer_row, nullspace, rank, solve,
)

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(lambda n: st.lists(
        st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=max_rows).map(
        lambda rows: (n, rows)))


def as_row(values):
    return {j: v for j, v in enumerate(values) if v}


def apply(row, x):
    return sum(Fraction(v) * x.get(j, 0) for j, v in row.items())


def test_integer_row_clears_denominators():
    row, scale = integer_row({0: Fraction(1, 2), 3: Fraction(-1, 3)})
    assert row == {0: 3, 3: -2} and scale == 6


def test_small_system():
    eqs = [("a", {0: 1, 1: 1}, 3), ("b", {0: 1, 1: -1}, 1)]
    assert solve(eqs, 2) == {0: 2, 1: 1}


def test_inconsistent_system_has_certificate():
    eqs = [("a", {0: 1, 1: 1}, 1), ("b", {0: 2, 1: 2}, 3)]
    with pytest.raises(Infeasible) as exc:
        solve(eqs, 2)
    assert check_certificate(eqs, exc.value.certificate)


def test_column_index_is_stable():
    idx = ColumnIndex(["u", "v"])
    assert idx("v") == 1 and idx("w") == 2 and len(idx) == 3


@given(matrices(), st.data())
def test_solve_or_certify(shape, data):
    n, rows = shape
    b = data.draw(st.lists(entries, min_size=len(rows), max_size=len(rows)))
    eqs = [(k, as_row(r), b[k]) for k, r in enumerate(rows)]
    try:
        x = solve(eqs, n)
    except Infeasible as exc:
        assert check_certificate(eqs, exc.certificate)
    else:
        assert all(apply(a, x) == rhs for _, a, rhs in eqs)


@given(matrices())
def test_rank_nullity(shape):
    n, rows = shape
    rs = [as_row(r) for r in rows]
    kernel = nullspace(rs, n)
    assert rank(rs) + len(kernel) == n
    for v in kernel:
        assert all(apply(r, v) == 0 for r in rs)


@given(matrices())
def test_tracked_reduction_expresses_dependencies(shape):
    n, rows = shape
    ech = Echelon(track=True)
    for k, r in enumerate(rows[:-1]):
        ech.add(as_row(r), k)
    last = as_row(rows[-1])
    residue, combo = ech.reduce(last, "last")
    # residue = sum combo[label] * row[label], exactly
    total = {}
    for label, m in combo.items():
        src = last if label == "last" else as_row(rows[label])
        for j, v in src.items():
            total[j] = total.get(j, 0) + m * Fraction(v)
    assert {j: v for j, v in total.items() if v} == {j: v for j, v in residue.items() if v}
