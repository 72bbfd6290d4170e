"""Normal-form arithmetic in the second Weyl algebra A_2 = k[x,y]<dx,dy>.

An operator is stored as ``{(c, d): p_cd}`` meaning ``sum p_cd(x,y) dx^c dy^d``
with the polynomial coefficients written on the LEFT. With this convention
left multiplication by a polynomial acts coefficientwise, which is what makes
the divisibility tests in :mod:`weylkit.idealizer` linear.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping

from .errors import InputError, ZeroOperator
from .linalg import to_rational
from .poly import BiPoly, _fmt_monomial, join_terms

Monomial4 = tuple  # (i, j, k, l) for x^i y^j dx^k dy^l


class WeylOp:
    """Element of A_2 in normal form. Immutable."""

    __slots__ = ("terms", "_mono")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for key, p in (terms or {}).items():
            if not isinstance(p, BiPoly):
                p = BiPoly.const(p)
            if not p.is_zero():
                clean[key] = p
        self.terms = clean
        self._mono = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "WeylOp":
        return cls()

    @classmethod
    def scalar(cls, c) -> "WeylOp":
        return cls({(0, 0): BiPoly.const(c)})

    @classmethod
    def poly(cls, p: BiPoly) -> "WeylOp":
        return cls({(0, 0): p})

    @classmethod
    def monomial(cls, i: int, j: int, k: int, l: int, c=1) -> "WeylOp":
        return cls({(k, l): BiPoly.monomial(i, j, c)})

    @classmethod
    def generator(cls, name: str) -> "WeylOp":
        try:
            i, j, k, l = {"x": (1, 0, 0, 0), "y": (0, 1, 0, 0), "dx": (0, 0, 1, 0), "dy": (0, 0, 0, 1)}[name]
        except KeyError:
            raise InputError(f"unknown generator {name!r}") from None
        return cls.monomial(i, j, k, l)

    @classmethod
    def from_monomials(cls, coeffs: Mapping) -> "WeylOp":
        grouped: dict = {}
        for (i, j, k, l), c in coeffs.items():
            grouped.setdefault((k, l), {})[(i, j)] = c
        return cls({kl: BiPoly(t) for kl, t in grouped.items()})

    # inspection -----------------------------------------------------------
    def monomials(self) -> dict:
        """``{(i, j, k, l): coefficient}`` view of the normal form."""
        if self._mono is None:
            self._mono = {
                (i, j, k, l): v for (k, l), p in self.terms.items() for (i, j), v in p.terms.items()
            }
        return self._mono

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, c: int, d: int) -> BiPoly:
        return self.terms.get((c, d), BiPoly())

    @property
    def order(self) -> int:
        return max((c + d for c, d in self.terms), default=-1)

    def bernstein_degree(self) -> int:
        return bernstein_degree(self)

    def is_polynomial(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_part(self) -> "WeylOp":
        """Reduction modulo the right ideal (x, y)A_2.

        Every term ``x^i y^j dx^k dy^l`` with ``i + j > 0`` lies in (x, y)A_2,
        so the class is determined by the constant term of each coefficient.
        """
        return WeylOp({kl: BiPoly.const(p.constant_term()) for kl, p in self.terms.items()})

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, WeylOp):
            return other
        if isinstance(other, BiPoly):
            return WeylOp.poly(other)
        if isinstance(other, (int, Fraction)):
            return WeylOp.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return WeylOp(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp({k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WeylOp({k: p * other for k, p in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return weyl_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return weyl_mul(other, self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in A_2")
        out = WeylOp.scalar(1)
        for _ in range(k):
            out = weyl_mul(out, self)
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.monomials().items()))

    def __call__(self, p: BiPoly) -> BiPoly:
        return act(self, p)

    def __repr__(self):
        return f"WeylOp({self})"

    def __str__(self):
        items = sorted(
            self.monomials().items(),
            key=lambda kv: (sum(kv[0]),) + kv[0],
            reverse=True,
        )
        pieces = [_fmt_monomial(v, [("x", i), ("y", j), ("dx", k), ("dy", l)]) for (i, j, k, l), v in items]
        return join_terms(pieces)


def weyl_mul(theta: WeylOp, phi: WeylOp) -> WeylOp:
    """Normal-form product via the Leibniz rule.

    ``dx^c * q = sum_r C(c, r) (d^r q / dx^r) dx^(c - r)``, and likewise in y.
    """
    acc: dict = {}
    for (c1, c2), p in theta.terms.items():
        for (e1, e2), q in phi.terms.items():
            for r1 in range(c1 + 1):
                b1 = comb(c1, r1)
                for r2 in range(c2 + 1):
                    dq = q.diff(r1, r2)
                    if dq.is_zero():
                        continue
                    scale = b1 * comb(c2, r2)
                    key = (c1 - r1 + e1, c2 - r2 + e2)
                    slot = acc.setdefault(key, {})
                    for (a1, a2), u in p.terms.items():
                        for (d1, d2), v in dq.terms.items():
                            m = (a1 + d1, a2 + d2)
                            slot[m] = slot.get(m, 0) + scale * u * v
    return WeylOp({k: BiPoly(t) for k, t in acc.items()})


def act(theta: WeylOp, p: BiPoly) -> BiPoly:
    """Standard action on k[x, y]: dx, dy differentiate, polynomials multiply."""
    out = BiPoly()
    for (c, d), coeff in theta.terms.items():
        dp = p.diff(c, d)
        if not dp.is_zero():
            out = out + coeff * dp
    return out


def bernstein_degree(theta: WeylOp) -> int:
    """Least ``n`` with ``theta`` in the Bernstein filtration piece B_n."""
    if theta.is_zero():
        raise ZeroOperator("the zero operator has no Bernstein degree")
    return max(p.total_degree + c + d for (c, d), p in theta.terms.items())


def bernstein_dim(n: int) -> int:
    """``dim B_n = C(n + 4, 4)``; zero for negative ``n``."""
    return comb(n + 4, 4) if n >= 0 else 0


def _bernstein_sort_key(m: Monomial4) -> tuple:
    return (sum(m), -m[0], -m[1], -m[2], -m[3])


@dataclass(frozen=True)
class BernsteinLevel:
    n: int
    monomials: tuple

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.monomials)}

    def operators(self) -> list[WeylOp]:
        return [WeylOp.monomial(*m) for m in self.monomials]

    def __len__(self):
        return len(self.monomials)

    def __iter__(self) -> Iterator:
        return iter(self.monomials)


def bernstein_basis(n: int) -> BernsteinLevel:
    """All ``x^i y^j dx^k dy^l`` with ``i+j+k+l <= n``.

    Ordered by total degree, then with priority x > y > dx > dy, so level 1 is
    ``1, x, y, dx, dy``.
    """
    if n < 0:
        raise InputError("Bernstein level must be >= 0")
    monos = [
        (i, j, k, d - i - j - k)
        for d in range(n + 1)
        for i in range(d + 1)
        for j in range(d - i + 1)
        for k in range(d - i - j + 1)
    ]
    monos.sort(key=_bernstein_sort_key)
    return BernsteinLevel(n, tuple(monos))


def coefficient_vector(theta: WeylOp, index: Mapping) -> dict:
    """Sparse coordinates of ``theta`` on a monomial index (unknown monomials raise)."""
    vec = {}
    for m, v in theta.monomials().items():
        try:
            vec[index[m]] = v
        except KeyError:
            raise ValueError(f"monomial {m} outside the supplied basis") from None
    return vec


def combination(monomials, vector) -> WeylOp:
    return WeylOp.from_monomials({m: to_rational(v) for m, v in zip(monomials, vector) if v})


def euler_operator(a: int, b: int) -> WeylOp:
    """``a*x*dx + b*y*dy``."""
    return WeylOp.monomial(1, 0, 1, 0, a) + WeylOp.monomial(0, 1, 0, 1, b)


__all__ = [
    "WeylOp",
    "BernsteinLevel",
    "weyl_mul",
    "act",
    "bernstein_degree",
    "bernstein_basis",
    "bernstein_dim",
    "coefficient_vector",
    "combination",
    "euler_operator",
]
