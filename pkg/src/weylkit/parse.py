"""Text grammar for polynomials and operators.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := NUMBER | SYMBOL ['^' ['-'] INT]
    NUMBER := INT | INT '/' INT

Symbols are ``x, y`` for polynomials, plus ``dx, dy`` for Weyl operators and
``t, dt`` for operators on k[t]. Factors inside a term are multiplied in the
order written, so ``dx*x`` means the Weyl product ``x*dx + 1``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<sym>dx|dy|dt|x|y|t)|(?P<op>[-+*^]))")

POLY_SYMBOLS = frozenset({"x", "y"})
WEYL_SYMBOLS = frozenset({"x", "y", "dx", "dy"})
T_SYMBOLS = frozenset({"t", "dt"})


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"unexpected character at position {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


def parse_terms(text: str, symbols: frozenset) -> list[tuple[Fraction, list[tuple[str, int]]]]:
    """Split ``text`` into ``(coefficient, [(symbol, exponent), ...])`` terms."""
    if not isinstance(text, str) or not text.strip():
        raise InputError("empty expression")
    tokens = _tokenize(text)
    terms = []
    i = 0
    n = len(tokens)
    sign = 1
    if tokens[0] == ("op", "-"):
        sign, i = -1, 1
    elif tokens[0] == ("op", "+"):
        i = 1
    while True:
        coeff = Fraction(sign)
        factors: list[tuple[str, int]] = []
        expect_factor = True
        while i < n:
            kind, val = tokens[i]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                if expect_factor:
                    raise InputError(f"dangling '*' in {text!r}")
                expect_factor = True
                i += 1
                continue
            if kind == "op" and val == "^":
                raise InputError(f"'^' without a base in {text!r}")
            if kind == "num":
                try:
                    coeff *= Fraction(val)
                except ZeroDivisionError:
                    raise InputError(f"zero denominator in {text!r}") from None
                i += 1
            else:
                if val not in symbols:
                    raise InputError(f"symbol {val!r} not allowed here (allowed: {sorted(symbols)})")
                i += 1
                exp = 1
                if i < n and tokens[i] == ("op", "^"):
                    i += 1
                    neg = False
                    if i < n and tokens[i] == ("op", "-"):
                        neg, i = True, i + 1
                    if i >= n or tokens[i][0] != "num" or "/" in tokens[i][1]:
                        raise InputError(f"bad exponent in {text!r}")
                    exp = int(tokens[i][1]) * (-1 if neg else 1)
                    i += 1
                if exp < 0 and val != "t":
                    raise InputError(f"negative exponent only allowed on t, got {val}^{exp}")
                factors.append((val, exp))
            expect_factor = False
        if expect_factor:
            raise InputError(f"missing term in {text!r}")
        terms.append((coeff, factors))
        if i >= n:
            break
        sign = -1 if tokens[i][1] == "-" else 1
        i += 1
        if i >= n:
            raise InputError(f"trailing operator in {text!r}")
    return terms


def parse_poly(text: str):
    from .poly import BiPoly

    out: dict = {}
    for coeff, factors in parse_terms(text, POLY_SYMBOLS):
        i = sum(e for s, e in factors if s == "x")
        j = sum(e for s, e in factors if s == "y")
        out[(i, j)] = out.get((i, j), 0) + coeff
    return BiPoly(out)


def parse_weyl(text: str):
    from .weyl import WeylOp

    total = WeylOp.zero()
    for coeff, factors in parse_terms(text, WEYL_SYMBOLS):
        term = WeylOp.scalar(coeff)
        for sym, e in factors:
            term = term * WeylOp.generator(sym) ** e
        total = total + term
    return total


def parse_toperator(text: str):
    from .curve import TOperator

    total = TOperator.zero()
    for coeff, factors in parse_terms(text, T_SYMBOLS):
        term = TOperator.scalar(coeff)
        for sym, e in factors:
            term = term * (TOperator.t_power(e) if sym == "t" else TOperator.dt() ** e)
        total = total + term
    return total
