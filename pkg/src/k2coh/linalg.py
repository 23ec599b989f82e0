"""Exact sparse linear algebra over the rationals.

Rows are stored as ``{column: int}`` with content (gcd) removed, so the
elimination is fraction-free; rational input is cleared of denominators on
entry.  Columns are arbitrary hashable keys, mapped to integers in order of
first appearance (``ColumnIndex``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Tuple

Row = Dict[int, int]


class ColumnIndex:
    def __init__(self, keys: Iterable[Hashable] = ()):
        self.index: Dict[Hashable, int] = {}
        self.keys: List[Hashable] = []
        for k in keys:
            self(k)

    def __call__(self, key: Hashable) -> int:
        j = self.index.get(key)
        if j is None:
            j = self.index[key] = len(self.keys)
            self.keys.append(key)
        return j

    def __len__(self):
        return len(self.keys)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def integer_row(row: Mapping[int, object]) -> Tuple[Row, Fraction]:
    """Scale a rational row to primitive integers; returns (row, scale) with row = scale * input."""
    items = [(j, Fraction(v)) for j, v in row.items() if v]
    if not items:
        return {}, Fraction(1)
    den = reduce(_lcm, (v.denominator for _, v in items), 1)
    ints = {j: int(v * den) for j, v in items}
    g = reduce(gcd, (abs(v) for v in ints.values()))
    return {j: v // g for j, v in ints.items()}, Fraction(den, g)


def _normalize(row: Row, combo: Optional[Dict]) -> None:
    g = reduce(gcd, (abs(v) for v in row.values()), 0)
    if combo is not None and combo:
        g = reduce(gcd, (abs(v) for v in combo.values()), g)
    if g > 1:
        for j in row:
            row[j] //= g
        if combo is not None:
            for j in combo:
                combo[j] //= g


class Echelon:
    """Incremental row echelon form.

    With ``track=True`` every stored row remembers the integer combination of
    input rows (by label) that produced it, which yields checkable
    infeasibility certificates.
    """

    def __init__(self, track: bool = False):
        self.pivots: Dict[int, Row] = {}
        self.combos: Dict[int, Dict] = {}
        self.track = track

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, object], label=None) -> Tuple[Row, Optional[Dict]]:
        r, scale = integer_row(row)
        combo = {label: int(scale.numerator)} if self.track else None
        if self.track and scale.denominator != 1:
            # keep combos integral: multiply the row instead
            r = {j: v * scale.denominator for j, v in r.items()}
        while r:
            lead = min(r)
            prow = self.pivots.get(lead)
            if prow is None:
                break
            a, b = r[lead], prow[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            # r <- fa * r - fb * prow
            out = {j: v * fa for j, v in r.items()}
            for j, v in prow.items():
                w = out.get(j, 0) - fb * v
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
            if combo is not None:
                nc = {k: v * fa for k, v in combo.items()}
                for k, v in self.combos[lead].items():
                    w = nc.get(k, 0) - fb * v
                    if w:
                        nc[k] = w
                    else:
                        nc.pop(k, None)
                combo = nc
            r = out
            _normalize(r, combo)
        return r, combo

    def add(self, row: Mapping[int, object], label=None) -> bool:
        """Insert a row; returns True if it was independent of the stored ones."""
        r, combo = self.reduce(row, label)
        if not r:
            return False
        lead = min(r)
        if r[lead] < 0:
            r = {j: -v for j, v in r.items()}
            if combo is not None:
                combo = {k: -v for k, v in combo.items()}
        self.pivots[lead] = r
        if combo is not None:
            self.combos[lead] = combo
        return True

    def rref(self) -> Dict[int, Dict[int, Fraction]]:
        """Fully reduced rows with pivot entry 1, keyed by pivot column."""
        out: Dict[int, Dict[int, Fraction]] = {}
        for lead in sorted(self.pivots, reverse=True):
            row = {j: Fraction(v, self.pivots[lead][lead]) for j, v in self.pivots[lead].items()}
            for j in [j for j in row if j != lead and j in out]:
                c = row.pop(j)
                for k, v in out[j].items():
                    if k == j:
                        continue
                    w = row.get(k, 0) - c * v
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
            out[lead] = row
        return out


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows: Iterable[Mapping[int, object]], ncols: int) -> List[Dict[int, Fraction]]:
    """Basis of ``{v : row . v = 0 for all rows}`` in columns ``0..ncols-1``."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    red = ech.rref()
    free = [j for j in range(ncols) if j not in red]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for lead, row in red.items():
            c = row.get(f)
            if c:
                v[lead] = -c
        basis.append(v)
    return basis


class Infeasible(Exception):
    def __init__(self, certificate: Dict):
        super().__init__("linear system is inconsistent")
        self.certificate = certificate


def solve(equations: Iterable[Tuple[Hashable, Mapping[int, object], object]],
          ncols: int) -> Dict[int, Fraction]:
    """Solve ``sum_j a_j x_j = b`` for labelled equations ``(label, a, b)``.

    Returns one solution (free variables set to 0) or raises :class:`Infeasible`
    carrying integer multipliers per label whose combination reads ``0 = nonzero``.
    """
    rhs = ncols
    ech = Echelon(track=True)
    for label, a, b in equations:
        row = dict(a)
        if b:
            row[rhs] = -Fraction(b)
        if not row:
            continue
        r, combo = ech.reduce(row, label)
        if r and min(r) == rhs:
            raise Infeasible(combo)
        if r:
            ech.add(row, label)
    red = ech.rref()
    return {lead: -row.get(rhs, Fraction(0)) for lead, row in red.items() if lead != rhs}


def check_certificate(equations, certificate: Mapping) -> bool:
    """True iff the combination kills every coefficient but not the right-hand side."""
    lhs: Dict[int, Fraction] = {}
    rhs = Fraction(0)
    for label, a, b in equations:
        m = certificate.get(label)
        if not m:
            continue
        for j, v in a.items():
            lhs[j] = lhs.get(j, 0) + m * Fraction(v)
        rhs += m * Fraction(b)
    return all(v == 0 for v in lhs.values()) and rhs != 0
