#!/usr/bin/env python3
"""Print the windowed H^1 dimension tables next to the expected values.

Covers K(1)_i with coefficients in F_lambda and on S^{1|1} densities, and
K(2) with coefficients in the slots SP_n.  Both derivative models can be
selected; the weight-0 subcomplex is solved exactly at windows D-1 and D.
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from k2coh.cli import expected_density, expected_small_density, expected_sp
from k2coh.cohomology import DensityModule, SPSlotModule, h1_dimension
from k2coh.grassmann import FOURIER, MODELS


@dataclass
class TableConfig:
    D: int = 5
    model: str = FOURIER
    n_min: int = -4
    n_max: int = 4
    i: int = 1

    def __post_init__(self):
        if self.D < 2:
            raise ValueError("D must be at least 2")
        if self.i not in (1, 2):
            raise ValueError("i must be 1 or 2")


LAMBDAS = ["-1", "-1/2", "0", "1/2", "1", "3/2", "2"]


def row(label, got, want):
    mark = "ok" if got.as_tuple() == want and got.stable else "MISMATCH"
    prev = (got.even_prev, got.odd_prev)
    return f"{label:<28} {str(got.as_tuple()):<8} {str(prev):<8} {str(want):<8} {mark}"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-D", type=int, default=TableConfig.D)
    ap.add_argument("--model", choices=MODELS, default=FOURIER)
    ap.add_argument("-i", type=int, default=1)
    args = ap.parse_args(argv)
    cfg = TableConfig(D=args.D, model=args.model, i=args.i)
    bad = 0
    print(f"{'module':<28} {'D=' + str(cfg.D):<8} {'D=' + str(cfg.D - 1):<8} {'expected':<8}")
    for lam in map(Fraction, LAMBDAS):
        for module, want in ((DensityModule(lam, cfg.model), expected_density(lam)),
                             (DensityModule(lam, cfg.model, odd_vars=(cfg.i,)),
                              expected_small_density(lam))):
            got = h1_dimension(module, cfg.D, sub=cfg.i)
            line = row(f"K(1)_{cfg.i} on {module.name}", got, want)
            bad += line.endswith("MISMATCH")
            print(line, flush=True)
    for n in range(cfg.n_min, cfg.n_max + 1):
        got = h1_dimension(SPSlotModule(n, cfg.model), cfg.D)
        line = row(f"K(2) on SP_{n}", got, expected_sp(n))
        bad += line.endswith("MISMATCH")
        print(line, flush=True)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
