"""Colon ideals (gA_2 : fA_2), the idealizer of fA_2, and their Bernstein-filtered pieces.

Membership is decided by conjugation: ``theta`` lies in ``(gA_2 : fA_2)``
exactly when ``theta * f`` lies in ``g A_2``, and because normal forms keep
polynomial coefficients on the left that means every coefficient of the
normal form of ``theta * f`` is divisible by ``g``. The action form
("theta maps (f) into (g)") is kept as an independent cross-check in
:func:`action_witness`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import InputError, ZeroDivisor
from .linalg import nullspace_rows, rank_rows, to_rational
from .poly import BiPoly, divides, evaluate, remainder
from .weyl import WeylOp, act, bernstein_basis, bernstein_dim, combination, weyl_mul


@dataclass(frozen=True)
class CurvePoly:
    """A nonconstant plane curve equation ``f`` with total degree ``N``.

    Irreducibility and injectivity of the normalization are the caller's
    responsibility; nothing here checks them.
    """

    f: BiPoly

    def __post_init__(self):
        if not isinstance(self.f, BiPoly):
            raise InputError("CurvePoly expects a BiPoly")
        if self.f.is_zero() or self.f.is_constant():
            raise InputError("curve polynomial must be nonconstant")

    @property
    def N(self) -> int:
        return self.f.total_degree

    def __str__(self):
        return str(self.f)


def as_curve(f) -> CurvePoly:
    if isinstance(f, CurvePoly):
        return f
    if isinstance(f, str):
        from .parse import parse_poly

        f = parse_poly(f)
    return CurvePoly(f)


@dataclass
class FilteredBasis:
    """Basis of a filtered piece, together with its coordinates on ``monomials``."""

    level: int
    elements: list
    monomials: tuple = ()
    vectors: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def verify_independent(self) -> bool:
        rows = [{i: v for i, v in enumerate(vec) if v} for vec in self.vectors]
        return rank_rows(rows, len(self.monomials)) == self.dim

    def as_strings(self) -> list[str]:
        return [str(e) for e in self.elements]


def _times_f(theta: WeylOp, f: BiPoly) -> WeylOp:
    return weyl_mul(theta, WeylOp.poly(f))


def colon_member(theta: WeylOp, f, g: BiPoly) -> bool:
    """Is ``theta`` in ``(g A_2 : f A_2)``?"""
    f = as_curve(f).f
    if g.is_zero():
        raise ZeroDivisor("colon ideal with g = 0")
    return all(divides(g, p)[0] for p in _times_f(theta, f).terms.values())


def idealizer_member(theta: WeylOp, f) -> bool:
    f = as_curve(f).f
    return colon_member(theta, f, f)


def action_witness(theta: WeylOp, f, max_degree: int | None = None):
    """Search for a monomial ``x^c y^d`` with ``theta * (f x^c y^d)`` outside ``(f)``.

    Scans ``c + d <= max_degree`` (default: the differential order of
    ``theta * f``). Returns the first witness ``(c, d)`` found, or ``None``.
    """
    f = as_curve(f).f
    if max_degree is None:
        max_degree = max(_times_f(theta, f).order, 0)
    for total in range(max_degree + 1):
        for c in range(total + 1):
            d = total - c
            image = act(theta, f.shift(c, d))
            if not divides(f, image)[0]:
                return (c, d)
    return None


def _linear_system(n: int, f: BiPoly, coefficient_rows):
    """Assemble rows over the B_n monomial unknowns.

    ``coefficient_rows(p)`` maps one normal-form coefficient of ``m * f`` to a
    sparse ``{key: value}`` of linear conditions; the conditions are linear in
    the coefficient, so the same keys across unknowns give one row each.
    """
    level = bernstein_basis(n)
    rows: dict = {}
    for col, (i, j, k, l) in enumerate(level.monomials):
        prod = _times_f(WeylOp.monomial(i, j, k, l), f)
        for kl, p in prod.terms.items():
            for key, v in coefficient_rows(p).items():
                rows.setdefault((kl, key), {})[col] = v
    return level, list(rows.values())


def _primitive(vec: list) -> list:
    """Scale a rational vector to coprime integers (first nonzero entry positive)."""
    den = lcm(*(v.denominator for v in vec)) if vec else 1
    ints = [int(v * den) for v in vec]
    g = gcd(*ints) or 1
    lead = next((v for v in ints if v), 1)
    if lead < 0:
        g = -g
    return [Fraction(v // g) for v in ints]


def _basis_from_kernel(level, rows, n: int) -> FilteredBasis:
    kernel = [_primitive(v) for v in nullspace_rows(rows, len(level.monomials))]
    elements = [combination(level.monomials, vec) for vec in kernel]
    return FilteredBasis(level=n, elements=elements, monomials=level.monomials, vectors=kernel)


def colon_filtered_basis(f, g: BiPoly, n: int) -> FilteredBasis:
    """Basis of ``(g A_2 : f A_2) ∩ B_n``.

    For each unknown monomial ``m`` of B_n the remainders modulo ``g`` of the
    coefficients of ``m * f`` are computed; remainder extraction is linear, so
    the conditions "all remainders vanish" form a linear system.
    """
    f = as_curve(f).f
    if n < 0:
        raise InputError("level must be >= 0")
    if g.is_zero():
        raise ZeroDivisor("colon ideal with g = 0")
    level, rows = _linear_system(n, f, lambda p: remainder(p, g).terms)
    return _basis_from_kernel(level, rows, n)


def idealizer_filtered_basis(f, n: int) -> FilteredBasis:
    """Basis of G_n = I(fA_2) ∩ B_n."""
    f = as_curve(f).f
    return colon_filtered_basis(f, f, n)


def idealizer_dim(f, n: int) -> int:
    return idealizer_filtered_basis(f, n).dim


def quotient_dim(f, n: int) -> int:
    """``dim F_n = dim G_n - dim B_{n-N}``.

    ``f A_2 ∩ B_n = f B_{n-N}`` because Bernstein degree is additive, and
    ``f B_{n-N}`` sits inside G_n, so the correction is exact.
    """
    curve = as_curve(f)
    return idealizer_dim(curve, n) - bernstein_dim(n - curve.N)


def point_colon_member(theta: WeylOp, f, gamma, delta) -> bool:
    """Is ``theta`` in ``((x - gamma, y - delta) A_2 : f A_2)``?"""
    f = as_curve(f).f
    g, d = to_rational(gamma), to_rational(delta)
    return all(evaluate(p, g, d) == 0 for p in _times_f(theta, f).terms.values())


def point_colon_basis(f, gamma, delta, n: int) -> FilteredBasis:
    """Basis of ``((x - gamma, y - delta) A_2 : f A_2) ∩ B_n``."""
    f = as_curve(f).f
    if n < 0:
        raise InputError("level must be >= 0")
    g, d = to_rational(gamma), to_rational(delta)
    level, rows = _linear_system(n, f, lambda p: {0: evaluate(p, g, d)})
    return _basis_from_kernel(level, rows, n)


def idealizer_dims(f, max_level: int) -> list[dict]:
    curve = as_curve(f)
    out = []
    for n in range(max_level + 1):
        g = idealizer_dim(curve, n)
        out.append({"n": n, "dim": g, "quotient_dim": g - bernstein_dim(n - curve.N)})
    return out


__all__ = [
    "CurvePoly",
    "FilteredBasis",
    "as_curve",
    "colon_member",
    "idealizer_member",
    "action_witness",
    "colon_filtered_basis",
    "idealizer_filtered_basis",
    "idealizer_dim",
    "quotient_dim",
    "point_colon_member",
    "point_colon_basis",
    "idealizer_dims",
]
