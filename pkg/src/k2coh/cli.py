"""Command-line entry point ``k2coh``.

Subcommands::

    verify-algebra    identity suites (brackets, composition, pi)
    verify-families   K(1)_i-module families of SP_n (intertwining, decomposition)
    verify-cocycles   cocycle and nontriviality checks for catalog keys
    correspondence    K(2)-cocycles versus the K(1)_i cocycles built from C_l
    h1                windowed H^1 dimensions compared with the expected tables
    report            all of the above in one document
    eval              evaluate an expression such as ``pb(xi, x)``

Every verifying subcommand exits with 0 iff all results agree with the
expected values, 1 otherwise, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .catalog import (
    CatalogKey, all_keys, build_cocycle, theorem_correspondence_check, theta_leading_term_check,
    upsilon_tilde_check,
    upsilon_independence,
)
from .cohomology import (
    Cochain1, DensityModule, SPSlotModule, h1_dimension, is_cocycle, solve_coboundary,
)
from .contact import contact_bracket, lie_derivative
from .densities import family_suite
from .expr import ParseError, Parser, format_function, format_symbol, symbol_to_function
from .grassmann import FOURIER, LAURENT, MODELS, SuperFunction, eta, eta_bar
from .identities import algebra_suite
from .symbols import (
    Symbol, compose, module_action_psido, module_action_sp, pi_embed, poisson_bracket,
    supercommutator,
)


@dataclass
class RunConfig:
    D: int = 5
    N: int = 8
    n_range: Tuple[int, int] = (-4, 4)
    fmt: str = "json"
    seed: int = 0
    model: str = FOURIER

    def __post_init__(self):
        if self.D < 2:
            raise ValueError("window D must be at least 2")
        if self.N < 3:
            raise ValueError("cutoff N must be at least 3")
        if self.fmt not in ("json", "markdown"):
            raise ValueError("format must be json or markdown")
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        a, b = self.n_range
        if a > b:
            raise ValueError("empty n-range")


# -- expected values ---------------------------------------------------------------

def expected_sp(n: int) -> Tuple[int, int]:
    return {-1: (3, 0), 0: (6, 0), 1: (1, 0)}.get(n, (0, 0))


def expected_density(lam: Fraction) -> Tuple[int, int]:
    even = {Fraction(0): 3, Fraction(1): 1}.get(lam, 0)
    odd = {Fraction(1, 2): 1, Fraction(3, 2): 1, Fraction(-1, 2): 2}.get(lam, 0)
    return even, odd


def expected_small_density(lam: Fraction) -> Tuple[int, int]:
    even = 2 if lam == 0 else 0
    odd = 1 if lam in (Fraction(1, 2), Fraction(3, 2)) else 0
    return even, odd


def expected_sp_k1(n: int) -> Optional[Tuple[int, int]]:
    return {-1: (7, 0), 0: (6, 0)}.get(n)


# -- h1 targets -----------------------------------------------------------------

@dataclass
class Target:
    kind: str  # SP, F or J
    value: Fraction
    i: Optional[int]

    @classmethod
    def parse(cls, text: str) -> "Target":
        mt = re.fullmatch(r"\s*(SP|F|J)\s*[:_]\s*(-?\d+(?:/\d+)?)\s*(?:@\s*i\s*=\s*([12]))?\s*",
                          text)
        if not mt:
            raise ValueError(f"cannot parse target {text!r} (try SP:1, F:-1/2@i=1, J:0@i=2)")
        kind, val, i = mt.group(1), Fraction(mt.group(2)), mt.group(3)
        i = int(i) if i else None
        if kind == "SP" and val.denominator != 1:
            raise ValueError("SP slot must be an integer")
        if kind in ("F", "J") and i is None:
            i = 1
        return cls(kind, val, i)

    def module(self, model: str):
        if self.kind == "SP":
            return SPSlotModule(int(self.value), model)
        odd = (1, 2) if self.kind == "F" else (self.i,)
        return DensityModule(self.value, model, odd_vars=odd)

    def expected(self) -> Optional[Tuple[int, int]]:
        if self.kind == "SP":
            return expected_sp(int(self.value)) if self.i is None else \
                expected_sp_k1(int(self.value))
        if self.kind == "F":
            return expected_density(self.value)
        return expected_small_density(self.value)

    def __str__(self):
        base = f"{self.kind}:{self.value}"
        return base + (f"@i={self.i}" if self.i else "")


# -- reports -----------------------------------------------------------------------

class Report:
    def __init__(self, cfg: RunConfig, title: str):
        self.cfg = cfg
        self.title = title
        self.checks: List[dict] = []
        self.unchecked = 0

    def add(self, name: str, passed: bool, section: str = "", **details):
        self.checks.append({"name": name, "section": section, "passed": bool(passed),
                            "details": details})

    @property
    def failed(self) -> int:
        return sum(not c["passed"] for c in self.checks)

    def as_dict(self) -> dict:
        cfg = asdict(self.cfg)
        cfg["n_range"] = list(cfg["n_range"])
        return {"config": cfg, "checks": self.checks,
                "summary": {"passed": len(self.checks) - self.failed, "failed": self.failed,
                            "unchecked_pairs": self.unchecked}}

    def markdown(self) -> str:
        lines = [f"# {self.title}", ""]
        cfg = self.as_dict()["config"]
        lines.append("config: " + ", ".join(f"{k}={v}" for k, v in cfg.items()))
        sections: Dict[str, List[dict]] = {}
        for c in self.checks:
            sections.setdefault(c["section"], []).append(c)
        for section, checks in sections.items():
            lines += ["", f"## {section or 'checks'}", ""]
            for c in checks:
                mark = "PASS" if c["passed"] else "FAIL"
                extra = ", ".join(f"{k}={v}" for k, v in c["details"].items() if v is not None)
                lines.append(f"- {mark} {c['name']}" + (f" ({extra})" if extra else ""))
        s = self.as_dict()["summary"]
        lines += ["", f"passed {s['passed']}, failed {s['failed']}, "
                      f"unchecked pairs {s['unchecked_pairs']}"]
        return "\n".join(lines)

    def emit(self, out=None) -> int:
        out = out or sys.stdout
        if self.cfg.fmt == "json":
            json.dump(self.as_dict(), out, indent=2, default=str)
            out.write("\n")
        else:
            out.write(self.markdown() + "\n")
        return 0 if self.failed == 0 else 1


# -- commands --------------------------------------------------------------------------

def cmd_verify_algebra(cfg: RunConfig, window: int = 4, signs: Optional[dict] = None,
                       samples: int = 60) -> Report:
    rep = Report(cfg, "Algebraic identities")
    for chk in algebra_suite(window, cfg.seed, samples=samples, signs=signs):
        rep.add(f"{chk.name} [{chk.model}]", chk.passed, "identities",
                instances=chk.instances, witness=chk.witness)
    return rep


def cmd_verify_families(cfg: RunConfig, window: int = 3) -> Report:
    rep = Report(cfg, "Module families of SP_n")
    a, b = cfg.n_range
    for chk in family_suite(range(a, b + 1), window, FOURIER):
        rep.add(chk.name, chk.passed, "module families", instances=chk.instances,
                witness=chk.witness)
    return rep


def _perturb(c: Cochain1) -> Cochain1:
    """Test hook: shift one value by the value at a neighbouring generator.

    The result keeps its parity but is no longer equivariant, so it should
    fail the cocycle check.
    """
    vals = dict(c.values)
    for (m, e1, e2), v in sorted(c.values.items()):
        target = (m + 1, e1, e2)
        if v and target in vals:
            vals[target] = vals[target] + v.scale(2)
            break
    return Cochain1(c.basis, c.module, vals, c.parity, c.name + "+perturbation")


def cmd_verify_cocycles(cfg: RunConfig, keys: Sequence[CatalogKey], perturb: bool = False,
                        cocycle_window: Optional[int] = None) -> Report:
    rep = Report(cfg, "Catalog cocycles")
    for key in keys:
        if key.family == "theta" and key.N is None:
            key = CatalogKey("theta", key.index, N=cfg.N)
        Dc = cocycle_window or cfg.D
        c = build_cocycle(key, Dc, cfg.model)
        if perturb:
            c = _perturb(c)
        r = is_cocycle(c)
        rep.unchecked += len(r.unchecked)
        cs = c if Dc == cfg.D else build_cocycle(key, cfg.D, cfg.model)
        if perturb:
            cs = _perturb(cs)
        nontrivial = None
        if r.ok:
            nontrivial = not solve_coboundary(cs).feasible
        section = {"c": "K(1)_i on J_lambda", "C": "K(1)_i on F_lambda",
                   "upsilon": "K(2) on SP_n", "theta": "K(2) on SPsiDO"}[key.family]
        passed = r.ok and bool(nontrivial) and c.parity_consistent()
        extra = {}
        if key.family == "theta":
            extra["leading_term"] = theta_leading_term_check(key.index, min(cfg.D, 3),
                                                             cfg.model, key.N)
            passed = passed and extra["leading_term"]
        rep.add(key.label, passed, section, cocycle=r.ok, nontrivial=nontrivial,
                checked_pairs=r.checked, unchecked_pairs=len(r.unchecked),
                first_failure=(r.failures[0][:2] if r.failures else None), **extra)
    if not perturb and {k.family for k in keys} >= {"upsilon"}:
        for res in upsilon_independence(min(cfg.D, 4), cfg.model):
            rep.add(f"joint independence in SP_{res.n}", res.ok, "K(2) on SP_n",
                    classes=len(res.members), rank_increase=res.rank_increase)
    return rep


def cmd_correspondence(cfg: RunConfig, window: int = 3) -> Report:
    rep = Report(cfg, "Restriction correspondences")
    for t in upsilon_tilde_check(window, cfg.model):
        rep.add(f"{t.name} equals its defining sum", t.ok, "combined cocycles",
                difference_zero=t.difference_zero, cocycle=t.cocycle)
    for r in theorem_correspondence_check(window, cfg.model):
        rep.add(f"{r.upsilon} ~ {r.beta} (i={r.i})", r.ok, "restriction to K(1)_i",
                scalar=None if r.scalar is None else str(r.scalar),
                coordinates={k: str(v) for k, v in r.coordinates.items()})
    return rep


def cmd_h1(cfg: RunConfig, targets: Sequence[Target]) -> Report:
    rep = Report(cfg, "H^1 dimensions")
    for t in targets:
        res = h1_dimension(t.module(cfg.model), cfg.D, sub=t.i, model=cfg.model)
        exp = t.expected()
        agree = exp is None or res.as_tuple() == exp
        label = f"H^1({'K(2)' if t.i is None else f'K(1)_{t.i}'}, {t})"
        rep.add(label, agree and res.stable, "dimensions", even=res.even, odd=res.odd,
                stable=res.stable, expected=None if exp is None else list(exp))
    return rep


def cmd_report(cfg: RunConfig) -> Report:
    """Everything at once: one markdown section per verified statement."""
    rep = Report(cfg, "k2coh verification report")
    parts = [cmd_verify_algebra(cfg, window=min(cfg.D, 4)),
             cmd_verify_families(cfg, window=min(cfg.D, 3)),
             cmd_verify_cocycles(cfg, all_keys(cfg.N)),
             cmd_correspondence(cfg, window=min(cfg.D, 3)),
             cmd_h1(cfg, default_targets(cfg))]
    for part in parts:
        rep.checks += part.checks
        rep.unchecked += part.unchecked
    return rep


def default_targets(cfg: RunConfig) -> List[Target]:
    a, b = cfg.n_range
    out = [Target("SP", Fraction(n), None) for n in range(a, b + 1)]
    for lam in ("-1", "-1/2", "0", "1/2", "1", "3/2", "2"):
        out.append(Target("F", Fraction(lam), 1))
        out.append(Target("J", Fraction(lam), 1))
    return out


# -- eval -------------------------------------------------------------------------------

def _fn(x, model: str) -> SuperFunction:
    if isinstance(x, SuperFunction):
        return x
    if isinstance(x, Symbol):
        return symbol_to_function(x)
    if isinstance(x, (int, Fraction)):
        return SuperFunction.constant(x, model)
    raise ValueError(f"expected a function, got {x!r}")


def _sym(x, model) -> Symbol:
    if isinstance(x, Symbol):
        return x
    if isinstance(x, SuperFunction):
        return Symbol.from_function(x)
    return Symbol({(0, 0, 0): Fraction(x)}, model)


def eval_functions(model: str, N: int) -> Dict[str, Callable]:
    def comp(A, B, n=None):
        return compose(_sym(A, model), _sym(B, model), int(n) if n is not None else N)

    return {
        "pb": lambda A, B: poisson_bracket(_sym(A, model), _sym(B, model)),
        "cb": lambda F, G: contact_bracket(_fn(F, model), _fn(G, model)),
        "comp": comp,
        "sc": lambda A, B, n=None: supercommutator(_sym(A, model), _sym(B, model),
                                                   int(n) if n is not None else N),
        "pi": lambda F: pi_embed(_fn(F, model)),
        "act": lambda F, A: module_action_sp(_fn(F, model), _sym(A, model)),
        "actpsido": lambda F, A: module_action_psido(_fn(F, model), _sym(A, model), N),
        "lie": lambda lam, F, G: lie_derivative(Fraction(lam), _fn(F, model), _fn(G, model)),
        "eta": lambda i, F: eta(int(i), _fn(F, model)),
        "etabar": lambda i, F: eta_bar(int(i), _fn(F, model)),
    }


def cmd_eval(text: str, model: Optional[str] = None, N: int = 8) -> str:
    probe = Parser(text, model)
    parser = Parser(text, probe.model, eval_functions(probe.model, N))
    val = parser.parse()
    if isinstance(val, SuperFunction):
        return format_function(val)
    return format_symbol(val)


# -- argument parsing -----------------------------------------------------------------

def _n_range(text: str) -> Tuple[int, int]:
    mt = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not mt:
        raise argparse.ArgumentTypeError("expected a..b, e.g. -4..4")
    return int(mt.group(1)), int(mt.group(2))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", "-D", type=int, default=None, help="generator window |m| <= D")
    common.add_argument("--cutoff", "-N", type=int, default=8, help="xi cutoff for SPsiDO")
    common.add_argument("--n-range", type=_n_range, default=(-4, 4), help="slots a..b")
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--model", choices=MODELS, default=FOURIER,
                        help="derivative model (fourier: e^{imx} modes; laurent: x^m)")

    p = argparse.ArgumentParser(prog="k2coh", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-algebra", parents=[common], help="identity suites")
    sub.add_parser("verify-families", parents=[common], help="module families of SP_n")
    vc = sub.add_parser("verify-cocycles", parents=[common], help="catalog cocycles")
    vc.add_argument("keys", nargs="*", help="e.g. upsilon:7 theta:10 C:3@i=2 (default: all)")
    vc.add_argument("--perturb", action="store_true", help="test hook: break each cochain")
    sub.add_parser("correspondence", parents=[common], help="restriction correspondences")
    h = sub.add_parser("h1", parents=[common], help="H^1 dimensions")
    h.add_argument("targets", nargs="*", help="SP:n, SP:n@i=1, F:lam@i=1, J:lam@i=2")
    sub.add_parser("report", parents=[common], help="run every check")
    ev = sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("expr")
    ev.add_argument("--model", choices=MODELS, default=None)
    ev.add_argument("--cutoff", "-N", type=int, default=8)
    return p


_DEFAULT_WINDOW = {"verify-algebra": 4, "verify-families": 3, "correspondence": 3}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval":
        try:
            print(cmd_eval(args.expr, args.model, args.cutoff))
        except ParseError as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return 2
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        return 0
    D = args.window if args.window is not None else _DEFAULT_WINDOW.get(args.command, 5)
    try:
        cfg = RunConfig(D=max(D, 2), N=args.cutoff, n_range=args.n_range, fmt=args.format,
                        seed=args.seed, model=args.model)
        if args.window is not None and args.window < 2:
            raise ValueError("window D must be at least 2")
    except ValueError as exc:
        parser.error(str(exc))
    random.seed(cfg.seed)
    if args.command == "verify-algebra":
        rep = cmd_verify_algebra(cfg, window=D)
    elif args.command == "verify-families":
        rep = cmd_verify_families(cfg, window=D)
    elif args.command == "verify-cocycles":
        try:
            keys = [CatalogKey.parse(k) for k in args.keys] if args.keys else all_keys(cfg.N)
        except ValueError as exc:
            parser.error(str(exc))
        rep = cmd_verify_cocycles(cfg, keys, perturb=args.perturb)
    elif args.command == "report":
        rep = cmd_report(cfg)
    elif args.command == "correspondence":
        rep = cmd_correspondence(cfg, window=D)
    else:
        try:
            targets = [Target.parse(t) for t in args.targets] or default_targets(cfg)
        except ValueError as exc:
            parser.error(str(exc))
        rep = cmd_h1(cfg, targets)
    return rep.emit()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
