"""Exact bivariate polynomials, univariate Laurent polynomials and the
combinatorics of exponent pairs (support sets, Delta sets, deg-lex order).

Monomial order: deg-lex on ``(i, j)`` = (x-exponent, y-exponent). Ties in
total degree are broken by the x-exponent, so ``x^2 y > x y^2``. The order is
translation compatible, which is all the leading-term arguments need.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping

from .errors import ZeroDivisor
from .linalg import format_rational, to_rational

Exponent2 = tuple  # (i, j), both >= 0


def deglex_key(e: Exponent2) -> tuple[int, int, int]:
    return (e[0] + e[1], e[0], e[1])


def deglex_cmp(a: Exponent2, b: Exponent2) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    ka, kb = deglex_key(a), deglex_key(b)
    return (ka > kb) - (ka < kb)


def delta_set(n: int) -> list[Exponent2]:
    """All ``(i, j)`` with ``i + j <= n`` in ascending deg-lex order."""
    if n < 0:
        return []
    return [(i, d - i) for d in range(n + 1) for i in range(d + 1)]


def delta_size(n: int) -> int:
    return (n + 1) * (n + 2) // 2 if n >= 0 else 0


def _clean(terms: Mapping) -> dict:
    out = {}
    for k, v in terms.items():
        v = to_rational(v)
        if v:
            out[k] = v
    return out


def _fmt_monomial(coeff: Fraction, factors: list[tuple[str, int]]) -> tuple[str, str]:
    """Render ``coeff * prod(var^exp)`` with an explicit sign prefix."""
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    parts = [f"{v}^{e}" if e != 1 else v for v, e in factors if e != 0]
    if not parts:
        return sign, format_rational(mag)
    if mag == 1:
        return sign, "*".join(parts)
    return sign, format_rational(mag) + "*" + "*".join(parts)


def join_terms(pieces: list[tuple[str, str]]) -> str:
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


class BiPoly:
    """Polynomial in ``x, y`` with rational coefficients. Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        self.terms = _clean(terms or {})
        self._hash = None

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff(0, 0)

    @property
    def total_degree(self) -> int:
        """Largest ``i + j`` in the support; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def support(self) -> set:
        return set(self.terms)

    def leading_exponent(self) -> Exponent2:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=deglex_key)

    def items(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda kv: deglex_key(kv[0]), reverse=True))

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == _clean({(0, 0): other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, a: int, b: int) -> "BiPoly":
        """Multiply by the monomial ``x^a y^b``."""
        return BiPoly({(i + a, j + b): v for (i, j), v in self.terms.items()})

    def diff(self, r: int = 0, s: int = 0) -> "BiPoly":
        """``d^r/dx^r d^s/dy^s`` applied to the polynomial."""
        out = {}
        for (i, j), v in self.terms.items():
            if i >= r and j >= s:
                out[(i - r, j - s)] = v * _falling(i, r) * _falling(j, s)
        return BiPoly(out)

    def __call__(self, gamma, delta) -> Fraction:
        return evaluate(self, gamma, delta)

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        pieces = [_fmt_monomial(v, [("x", i), ("y", j)]) for (i, j), v in self.items()]
        return join_terms(pieces)


def _falling(n: int, k: int) -> int:
    out = 1
    for m in range(k):
        out *= n - m
    return out


falling = _falling


def poly_arith(p: BiPoly, q: BiPoly, op: str) -> BiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def support(f: BiPoly) -> set:
    return f.support()


def evaluate(p: BiPoly, gamma, delta) -> Fraction:
    g, d = to_rational(gamma), to_rational(delta)
    return sum((v * g**i * d**j for (i, j), v in p.terms.items()), Fraction(0))


def translate(p: BiPoly, gamma, delta) -> BiPoly:
    """``p(x + gamma, y + delta)`` by binomial expansion."""
    g, d = to_rational(gamma), to_rational(delta)
    out: dict = {}
    for (i, j), v in p.terms.items():
        for a in range(i + 1):
            ca = comb(i, a) * g ** (i - a)
            if not ca:
                continue
            for b in range(j + 1):
                cb = comb(j, b) * d ** (j - b)
                if cb:
                    out[(a, b)] = out.get((a, b), 0) + v * ca * cb
    return BiPoly(out)


def divmod_poly(p: BiPoly, f: BiPoly) -> tuple[BiPoly, BiPoly]:
    """Division of ``p`` by the single divisor ``f`` under deg-lex.

    Returns ``(q, r)`` with ``p = q*f + r`` and no term of ``r`` divisible by
    the leading monomial of ``f``. For one divisor this is a Groebner basis,
    so ``r == 0`` exactly when ``p`` is in the principal ideal ``(f)``.
    """
    if f.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    la, lb = f.leading_exponent()
    lc = f.terms[(la, lb)]
    work = dict(p.terms)
    quot: dict = {}
    rem: dict = {}
    while work:
        e = max(work, key=deglex_key)
        c = work.pop(e)
        if e[0] >= la and e[1] >= lb:
            q = c / lc
            sa, sb = e[0] - la, e[1] - lb
            quot[(sa, sb)] = quot.get((sa, sb), 0) + q
            for (i, j), v in f.terms.items():
                k = (i + sa, j + sb)
                if k == e:
                    continue
                nv = work.get(k, 0) - q * v
                if nv:
                    work[k] = nv
                else:
                    work.pop(k, None)
        else:
            rem[e] = c
    return BiPoly(quot), BiPoly(rem)


def remainder(p: BiPoly, f: BiPoly) -> BiPoly:
    return divmod_poly(p, f)[1]


def divides(f: BiPoly, p: BiPoly) -> tuple[bool, BiPoly | None]:
    """Whether ``p`` lies in ``(f)``; the quotient is returned when it does."""
    q, r = divmod_poly(p, f)
    if r.is_zero():
        return True, q
    return False, None


class LaurentPoly:
    """Univariate Laurent polynomial in ``t`` over the rationals. Immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = _clean(terms or {})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def coeff(self, k: int) -> Fraction:
        return self.terms.get(k, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == _clean({0: other})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for a, u in self.terms.items():
            for b, v in other.terms.items():
                out[a + b] = out.get(a + b, 0) + u * v
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: v for e, v in self.terms.items()})

    def derivative(self, r: int = 1) -> "LaurentPoly":
        return LaurentPoly({e - r: v * _falling(e, r) for e, v in self.terms.items()})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        pieces = [_fmt_monomial(v, [("t", k)]) for k, v in sorted(self.terms.items(), reverse=True)]
        return join_terms(pieces)


def substitute_monomial_curve(p: BiPoly, a: int, b: int) -> LaurentPoly:
    """``p(t^a, t^b)``."""
    out: dict = {}
    for (i, j), v in p.terms.items():
        k = a * i + b * j
        out[k] = out.get(k, 0) + v
    return LaurentPoly(out)


def iter_monomials(max_degree: int) -> Iterable[Exponent2]:
    return delta_set(max_degree)
