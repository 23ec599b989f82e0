"""Parser and printer for functions and symbols.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' signed_int)?
    atom   := INT | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Names: ``x`` (Laurent variable), ``e`` (Fourier mode ``e^(x)``), ``t1``, ``t2``,
``xi``, ``bt1``, ``bt2``.  Juxtaposed factors multiply in the supercommutative
symbol algebra, so ``bt1*t1`` reads back as ``-t1*bt1``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .grassmann import FOURIER, LAURENT, SuperFunction
from .symbols import Symbol, _deg

_ODD_NAMES = ("t1", "t2", "bt1", "bt2")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# -- printing -----------------------------------------------------------------

def _fmt_coeff(c: Fraction, rest: List[str], first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    parts = list(rest)
    if a != 1 or not parts:
        parts.insert(0, str(a))
    body = "*".join(parts)
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def _mode_factor(m: int, model: str) -> List[str]:
    if m == 0:
        return []
    var = "e" if model == FOURIER else "x"
    return [var if m == 1 else f"{var}^{m}"]


def _monomial_parts(m: int, k: int, mask: int, model: str) -> List[str]:
    parts = _mode_factor(m, model)
    if mask & 1:
        parts.append("t1")
    if mask & 2:
        parts.append("t2")
    if k:
        parts.append("xi" if k == 1 else f"xi^{k}")
    if mask & 4:
        parts.append("bt1")
    if mask & 8:
        parts.append("bt2")
    return parts


def _sort_key(key):
    m, k, mask = key
    return (-_deg(key), -k, -m, mask)


def format_symbol(A: Symbol) -> str:
    if not A.terms:
        out = "0"
    else:
        out = "".join(
            _fmt_coeff(A.terms[key], _monomial_parts(*key, A.model), i == 0)
            for i, key in enumerate(sorted(A.terms, key=_sort_key)))
    if A.cutoff is not None:
        out += f" + O(deg < -{A.cutoff})"
    return out


def format_function(F: SuperFunction) -> str:
    return format_symbol(Symbol.from_function(F))


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            break
        num, name, op = mt.groups()
        start = mt.start(mt.lastindex)
        if num is not None:
            toks.append(("num", int(num), start))
        elif name is not None:
            toks.append(("name", name, start))
        elif op is not None and not op.isspace():
            toks.append(("op", op, start))
        pos = mt.end()
    toks.append(("end", None, len(text)))
    return toks


class _Number:
    """Scalar literal that can still be promoted to a symbol."""

    def __init__(self, value):
        self.value = Fraction(value)


class Parser:
    """Recursive-descent parser producing :class:`Symbol` values.

    ``functions`` maps call names to callables taking parsed arguments.
    """

    def __init__(self, text: str, model: Optional[str] = None,
                 functions: Optional[Dict[str, Callable]] = None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.functions = functions or {}
        names = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))
        if "x" in names and "e" in names:
            raise ParseError("cannot mix 'x' and 'e' variables", text.find("e"))
        self.model = model or (FOURIER if "e" in names else LAURENT)
        if model == LAURENT and "e" in names:
            raise ParseError("'e' requires the fourier model", text.find("e"))
        if model == FOURIER and "x" in names:
            raise ParseError("'x' requires the laurent model", text.find("x"))

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind or value is not None and tok[1] != value:
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return self.promote(val)

    def promote(self, v):
        if isinstance(v, _Number):
            return Symbol({(0, 0, 0): v.value}, self.model)
        return v

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = self._arith(val, rhs, op)
        return val

    def _arith(self, a, b, op):
        if isinstance(a, _Number) and isinstance(b, _Number):
            return _Number(a.value + b.value if op == "+" else a.value - b.value)
        a, b = self.promote(a), self.promote(b)
        return a + b if op == "+" else a - b

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "/":
                if not isinstance(rhs, _Number) or rhs.value == 0:
                    raise ParseError("division only by nonzero numbers", pos)
                val = _Number(val.value / rhs.value) if isinstance(val, _Number) \
                    else val.scale(1 / rhs.value)
            elif isinstance(val, _Number) and isinstance(rhs, _Number):
                val = _Number(val.value * rhs.value)
            elif isinstance(val, _Number):
                val = rhs.scale(val.value)
            elif isinstance(rhs, _Number):
                val = val.scale(rhs.value)
            else:
                val = val * rhs
        return val

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            v = self.unary()
            return _Number(-v.value) if isinstance(v, _Number) else -v
        return self.power()

    def power(self):
        tok = self.peek()
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            paren = False
            if self.peek()[1] == "(":
                self.take()
                paren = True
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            n = sign * self.take("num")[1]
            if paren:
                self.take("op", ")")
            return self._pow(base, n, tok)
        return base

    def _pow(self, base, n, tok):
        if isinstance(base, _Number):
            if n < 0 and base.value == 0:
                raise ParseError("zero to a negative power", tok[2])
            return _Number(base.value ** n)
        if tok[0] == "name" and tok[1] in ("x", "e"):
            return Symbol.monomial(m=n, model=self.model)
        if tok[0] == "name" and tok[1] == "xi":
            return Symbol.monomial(k=n, model=self.model)
        if n < 0:
            raise ParseError("negative powers only for x, e and xi", tok[2])
        out = Symbol({(0, 0, 0): 1}, self.model)
        for _ in range(n):
            out = out * base
        return out

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return _Number(val)
        if kind == "op" and val == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if kind == "name":
            self.take()
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                return self.call(val, pos)
            return self.variable(val, pos)
        raise ParseError(f"unexpected {val!r}", pos)

    def variable(self, name, pos):
        mdl = self.model
        table = {
            "x": lambda: Symbol.monomial(m=1, model=mdl),
            "e": lambda: Symbol.monomial(m=1, model=mdl),
            "t1": lambda: Symbol.monomial(e1=1, model=mdl),
            "t2": lambda: Symbol.monomial(e2=1, model=mdl),
            "xi": lambda: Symbol.monomial(k=1, model=mdl),
            "bt1": lambda: Symbol.monomial(n1=1, model=mdl),
            "bt2": lambda: Symbol.monomial(n2=1, model=mdl),
        }
        if name not in table:
            raise ParseError(f"unknown name {name!r}", pos)
        return table[name]()

    def call(self, name, pos):
        if name not in self.functions:
            raise ParseError(f"unknown function {name!r}", pos)
        self.take("op", "(")
        args = [self.expr()]
        while self.peek()[1] == ",":
            self.take()
            args.append(self.expr())
        self.take("op", ")")
        args = [a.value if isinstance(a, _Number) else a for a in args]
        try:
            return self.functions[name](*args)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{name}: {exc}", pos) from exc


def parse_symbol(text: str, model: Optional[str] = None) -> Symbol:
    return Parser(text, model).parse()


def symbol_to_function(A: Symbol) -> SuperFunction:
    """View a symbol without xi/bt content as a function."""
    out = {}
    for (m, k, mask), c in A.terms.items():
        if k or mask & 12:
            raise ValueError("expression contains xi or bt; expected a function")
        out[(m, mask & 1, (mask >> 1) & 1)] = c
    return SuperFunction(out, A.model)


def parse_function(text: str, model: Optional[str] = None) -> SuperFunction:
    return symbol_to_function(parse_symbol(text, model))
