"""The normalization side for monomial cusps ``y^a = x^b``.

The curve is parametrized by ``x = t^a, y = t^b`` (``gcd(a, b) = 1``), so its
coordinate ring is ``k[t^a, t^b]`` = span of ``t^s`` for ``s`` in the numerical
semigroup <a, b>. Differential operators on the curve are realized as
operators ``sum a_i(t) dt^i`` on k[t] with Laurent coefficients that preserve
that span, and idealizer classes are pushed to such operators by
:func:`project_class`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Mapping

from .errors import (
    CorrespondenceViolation,
    InconsistentProjection,
    InputError,
    NotInIdealizer,
)
from .idealizer import idealizer_filtered_basis, idealizer_member, quotient_dim
from .linalg import nullspace_rows, rank_rows, rref_rows
from .poly import BiPoly, LaurentPoly, _fmt_monomial, falling, join_terms, substitute_monomial_curve
from .weyl import WeylOp, act, bernstein_degree


class NumericalSemigroup:
    """The semigroup ``{u*a + v*b : u, v >= 0}`` for coprime ``a, b``."""

    def __init__(self, a: int, b: int):
        if a < 1 or b < 1 or gcd(a, b) != 1:
            raise InputError("numerical semigroup needs coprime positive generators")
        self.generators = (a, b)

    @property
    def frobenius(self) -> int:
        a, b = self.generators
        return a * b - a - b

    @property
    def conductor(self) -> int:
        a, b = self.generators
        return (a - 1) * (b - 1)

    def member(self, s: int) -> tuple[bool, tuple[int, int] | None]:
        """Membership with a witness ``(u, v)``, ``u*a + v*b == s``; ``u`` is minimal."""
        if s < 0:
            return False, None
        a, b = self.generators
        for u in range(s // a + 1):
            rest = s - u * a
            if rest % b == 0:
                return True, (u, rest // b)
        return False, None

    def __contains__(self, s: int) -> bool:
        return self.member(s)[0]

    def elements(self, upto: int) -> list[int]:
        return [s for s in range(upto + 1) if s in self]

    def gaps(self) -> list[int]:
        return [s for s in range(self.conductor) if s not in self]

    def __repr__(self):
        return f"NumericalSemigroup{self.generators}"


def semigroup_member(S: NumericalSemigroup, s: int):
    return S.member(s)


@dataclass(frozen=True)
class MonomialCurve:
    """Curve ``y^a - x^b = 0`` with injective normalization ``t -> (t^a, t^b)``."""

    a: int
    b: int
    f: BiPoly = field(init=False, compare=False)

    def __post_init__(self):
        if self.a < 2 or self.b <= self.a or gcd(self.a, self.b) != 1:
            raise InputError("monomial curve needs 2 <= a < b with gcd(a, b) = 1")
        object.__setattr__(self, "f", BiPoly({(0, self.a): 1, (self.b, 0): -1}))

    @property
    def semigroup(self) -> NumericalSemigroup:
        return NumericalSemigroup(self.a, self.b)

    def parametrize(self, p: BiPoly) -> LaurentPoly:
        """``p(t^a, t^b)``: x carries weight a, y carries weight b."""
        return substitute_monomial_curve(p, self.a, self.b)


class TOperator:
    """``sum_i a_i(t) dt^i`` with Laurent polynomial coefficients. Immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping | None = None):
        clean = {}
        for i, a in (coeffs or {}).items():
            if not isinstance(a, LaurentPoly):
                a = LaurentPoly({0: a})
            if i < 0:
                raise InputError("negative differential order")
            if a:
                clean[i] = a
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "TOperator":
        return cls()

    @classmethod
    def scalar(cls, c) -> "TOperator":
        return cls({0: LaurentPoly({0: c})})

    @classmethod
    def t_power(cls, k: int, c=1) -> "TOperator":
        return cls({0: LaurentPoly({k: c})})

    @classmethod
    def dt(cls) -> "TOperator":
        return cls({1: LaurentPoly({0: 1})})

    @classmethod
    def term(cls, k: int, i: int, c=1) -> "TOperator":
        """``c * t^k * dt^i``."""
        return cls({i: LaurentPoly({k: c})})

    @classmethod
    def euler(cls) -> "TOperator":
        return cls.term(1, 1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def order(self) -> int:
        return max(self.coeffs, default=-1)

    @property
    def pole_order(self) -> int:
        return max((max(-a.min_exp(), 0) for a in self.coeffs.values()), default=0)

    def coordinates(self) -> dict:
        """``{(i, k): c}`` for the terms ``c t^k dt^i``."""
        return {(i, k): v for i, a in self.coeffs.items() for k, v in a.terms.items()}

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TOperator.scalar(other)
        if not isinstance(other, TOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coordinates().items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TOperator.scalar(other)
        out = dict(self.coeffs)
        for i, a in other.coeffs.items():
            out[i] = out[i] + a if i in out else a
        return TOperator(out)

    def __neg__(self):
        return TOperator({i: -a for i, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Composition ``self o other`` in D(k(t)); scalars scale."""
        if isinstance(other, (int, Fraction)):
            return TOperator({i: a * other for i, a in self.coeffs.items()})
        if not isinstance(other, TOperator):
            return NotImplemented
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                for r in range(i + 1):
                    db = b.derivative(r)
                    if db:
                        key = i - r + j
                        term = a * db * comb(i, r)
                        out[key] = out[key] + term if key in out else term
        return TOperator(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = TOperator.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        out = LaurentPoly()
        for i, a in self.coeffs.items():
            out = out + a * p.derivative(i)
        return out

    def __repr__(self):
        return f"TOperator({self})"

    def __str__(self):
        items = sorted(self.coordinates().items(), key=lambda kv: (kv[0][0], kv[0][1]), reverse=True)
        return join_terms([_fmt_monomial(v, [("t", k), ("dt", i)]) for (i, k), v in items])


def t_act(D: TOperator, s: int) -> LaurentPoly:
    """``D * t^s = sum_i a_i(t) s(s-1)...(s-i+1) t^(s-i)``."""
    if s < 0:
        raise InputError("t_act expects a nonnegative exponent")
    out: dict = {}
    for i, a in D.coeffs.items():
        ff = falling(s, i)
        if not ff:
            continue
        for k, v in a.terms.items():
            e = k + s - i
            out[e] = out.get(e, 0) + v * ff
    return LaurentPoly(out)


def preservation_bound(D: TOperator, S: NumericalSemigroup) -> int:
    """Largest input exponent that must be checked by :func:`preserves_ring`.

    Every output exponent of ``D * t^s`` is at least ``s - order - pole_order``,
    so once ``s >= conductor + order + pole_order`` all outputs are at or above
    the conductor and automatically lie in the semigroup.
    """
    return S.conductor + max(D.order, 0) + D.pole_order


def preservation_failure(D: TOperator, S: NumericalSemigroup):
    """First ``(s, m)`` with ``s`` in S and ``t^m`` in ``D * t^s`` but ``m`` not in S."""
    for s in S.elements(preservation_bound(D, S)):
        for m in t_act(D, s).exponents():
            if m not in S:
                return s, m
    return None


def preserves_ring(D: TOperator, S: NumericalSemigroup) -> bool:
    return preservation_failure(D, S) is None


def _box_unknowns(max_order: int, K: int, L: int) -> list[tuple[int, int]]:
    # term t^k dt^i shifts exponents by k - i; the window bounds that shift
    return [(i, w + i) for w in range(-K, L + 1) for i in range(max_order + 1)]


def dmod_box_basis(S: NumericalSemigroup, max_order: int, window: tuple[int, int]) -> list[TOperator]:
    """Basis of the operators of order <= ``max_order`` preserving ``k[S]``
    whose terms ``t^k dt^i`` have shift ``k - i`` in ``[-K, L]``.

    Conditions: for each ``s`` in S up to the preservation bound and each
    output exponent ``m`` outside S, the coefficient of ``t^m`` in ``D * t^s``
    vanishes.
    """
    K, L = window
    if max_order < 0 or K < 0 or L < 0:
        raise InputError("order and window bounds must be >= 0")
    unknowns = _box_unknowns(max_order, K, L)
    bound = S.conductor + max_order + K
    rows: dict = {}
    for col, (i, k) in enumerate(unknowns):
        for s in S.elements(bound):
            ff = falling(s, i)
            m = k + s - i
            if ff and m not in S:
                rows.setdefault((s, m), {})[col] = Fraction(ff)
    kernel = nullspace_rows(list(rows.values()), len(unknowns))
    return [_from_coordinates(unknowns, vec) for vec in kernel]


def _from_coordinates(unknowns, vec) -> TOperator:
    grouped: dict = {}
    for (i, k), v in zip(unknowns, vec):
        if v:
            grouped.setdefault(i, {})[k] = v
    return TOperator({i: LaurentPoly(t) for i, t in grouped.items()})


def operator_image(theta: WeylOp, C: MonomialCurve, s: int) -> LaurentPoly:
    """``theta * (x^u y^v)`` pushed to k[t], for a representative ``u*a + v*b = s``."""
    ok, uv = C.semigroup.member(s)
    if not ok:
        raise InputError(f"{s} is not in the semigroup {C.semigroup.generators}")
    return C.parametrize(act(theta, BiPoly.monomial(*uv)))


def project_class(theta: WeylOp, C: MonomialCurve, check_membership: bool = True) -> TOperator:
    """The operator on k[t] induced by an idealizer element.

    With ``d`` the Bernstein degree of ``theta`` the image has order at most
    ``d``. Writing ``D = sum_i a_i dt^i`` and ``a_i = sum_k c_ik t^k``,
    ``t^-s D(t^s) = sum_m (sum_i s^(i) c_{i,m+i}) t^m`` where ``s^(i)`` is the
    falling factorial; for each ``m`` this is a square system in the ``c``'s
    whose matrix ``[s_r^(i)]`` is invertible for distinct samples ``s_r``.
    """
    if check_membership and not idealizer_member(theta, C.f):
        raise NotInIdealizer(f"{theta} is not in the idealizer of ({C.f})")
    if theta.is_zero():
        return TOperator.zero()
    S = C.semigroup
    d = bernstein_degree(theta)
    samples = [S.conductor + r for r in range(d + 1)]
    checks = [S.conductor + d + 1 + r for r in range(3)] + S.elements(S.conductor - 1)

    shifted = {s: operator_image(theta, C, s).shift(-s) for s in samples}
    exps = sorted({m for g in shifted.values() for m in g.terms})
    ncols = d + 1
    coords: dict = {}
    for m in exps:
        rows = []
        for s in samples:
            row = {i: Fraction(falling(s, i)) for i in range(ncols) if falling(s, i)}
            row[ncols] = shifted[s].coeff(m)
            rows.append(row)
        reduced, pivots = rref_rows(rows, ncols + 1)
        if ncols in pivots:
            raise InconsistentProjection(f"no operator fits the samples at t^{m}")
        for prow, pc in zip(reduced, pivots):
            v = prow.get(ncols, 0)
            if v:
                coords[(pc, m + pc)] = v
    D = _from_coordinates(list(coords), list(coords.values()))
    for s in checks:
        if t_act(D, s) != operator_image(theta, C, s):
            raise InconsistentProjection(f"projection of {theta} disagrees at exponent {s}")
    return D


@dataclass
class CorrespondenceReport:
    curve: tuple
    level: int
    idealizer_dim: int
    quotient_dim: int
    image_dim: int
    images: list
    counterexample: object = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None and self.image_dim == self.quotient_dim

    def as_dict(self) -> dict:
        return {
            "curve": list(self.curve),
            "n": self.level,
            "idealizer_dim": self.idealizer_dim,
            "quotient_dim": self.quotient_dim,
            "image_dim": self.image_dim,
            "images": [str(D) for D in self.images],
            "ok": self.ok,
        }


def image_rank(ops) -> int:
    keys = sorted({k for D in ops for k in D.coordinates()})
    index = {k: i for i, k in enumerate(keys)}
    rows = [{index[k]: v for k, v in D.coordinates().items()} for D in ops]
    return rank_rows(rows, len(keys))


def correspondence_check(C: MonomialCurve, n: int, raise_on_failure: bool = False) -> CorrespondenceReport:
    """Push a basis of G_n to k[t]; check every image preserves k[S] and that the
    images span a space of dimension ``dim F_n`` (injectivity on F_n)."""
    if n < 0:
        raise InputError("level must be >= 0")
    basis = idealizer_filtered_basis(C.f, n)
    S = C.semigroup
    images = []
    bad = None
    for theta in basis.elements:
        D = project_class(theta, C, check_membership=False)
        images.append(D)
        fail = preservation_failure(D, S)
        if fail is not None and bad is None:
            bad = {"operator": str(theta), "image": str(D), "exponent": fail[0], "lands_on": fail[1]}
    q = quotient_dim(C.f, n)
    report = CorrespondenceReport((C.a, C.b), n, basis.dim, q, image_rank(images), images, bad)
    if report.image_dim != q and bad is None:
        report.counterexample = {"image_dim": report.image_dim, "quotient_dim": q}
    if raise_on_failure and not report.ok:
        raise CorrespondenceViolation("projection is not a filtered isomorphism", report.counterexample)
    return report


__all__ = [
    "NumericalSemigroup",
    "MonomialCurve",
    "TOperator",
    "semigroup_member",
    "t_act",
    "preserves_ring",
    "preservation_failure",
    "preservation_bound",
    "dmod_box_basis",
    "operator_image",
    "project_class",
    "image_rank",
    "correspondence_check",
    "CorrespondenceReport",
]
