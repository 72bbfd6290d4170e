"""The torsion-case module M = ((x,y)A_2 : fA_2) / (x,y)A_2 and its growth.

Modulo (x, y)A_2 every operator is represented by a polynomial in dx, dy, so

    M(n) = { theta in k[dx, dy], deg <= n : theta * (f x^i y^j) vanishes at 0 for all i, j }.

Writing ``theta = sum a_pq dx^p dy^q``, the functional
``Phi_ij = (theta * f x^i y^j)(0, 0)`` equals
``sum_{(al, be) in supp f} a_{al+i, be+j} (al+i)! (be+j)! f_{al,be}``; M(n) is
the common kernel of these rows restricted to unknowns with ``p + q <= n``.
Rows with ``i + j > n`` only reference unknowns outside that range and are
dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import (
    BoundViolation,
    FiltrationViolation,
    IndependenceViolation,
    InputError,
    LeadingTermViolation,
    TranslationViolation,
)
from .idealizer import FilteredBasis, _primitive, as_curve, idealizer_filtered_basis
from .linalg import nullspace_rows, rank_rows, to_rational
from .poly import BiPoly, deglex_key, delta_set, delta_size, evaluate, translate
from .weyl import WeylOp, act

# Test seam: when set, every assembled row passes through this callable as
# ``hook(i, j, n, row) -> row``. Used to inject a corrupted constraint.
_row_hook = None


def set_row_hook(hook) -> None:
    global _row_hook
    _row_hook = hook


def phi_row(f, i: int, j: int, n: int) -> dict:
    """The functional Phi_ij on unknowns ``a_pq`` with ``p + q <= n``, as ``{(p, q): coeff}``."""
    f = as_curve(f).f
    if i < 0 or j < 0:
        raise InputError("row indices must be >= 0")
    row: dict = {}
    for (al, be), c in f.terms.items():
        p, q = al + i, be + j
        if p + q <= n:
            row[(p, q)] = row.get((p, q), 0) + factorial(p) * factorial(q) * c
    row = {k: v for k, v in row.items() if v}
    if _row_hook is not None:
        row = _row_hook(i, j, n, row)
    return row


@dataclass
class ConstraintSystem:
    f: BiPoly
    n: int
    unknowns: list
    rows: dict

    def index(self) -> dict:
        return {u: k for k, u in enumerate(self.unknowns)}

    def sparse_rows(self, keys=None) -> list[dict]:
        idx = self.index()
        keys = self.rows if keys is None else keys
        return [{idx[u]: v for u, v in self.rows[k].items()} for k in keys]

    def satisfied_by(self, theta: WeylOp) -> bool:
        coords = dpoly_coordinates(theta)
        return all(sum((v * coords.get(u, 0) for u, v in row.items()), Fraction(0)) == 0 for row in self.rows.values())


def constraint_system(f, n: int) -> ConstraintSystem:
    curve = as_curve(f)
    rows = {}
    for i, j in delta_set(n):
        row = phi_row(curve, i, j, n)
        if row:
            rows[(i, j)] = row
    return ConstraintSystem(curve.f, n, delta_set(n), rows)


def dpoly(coords: dict) -> WeylOp:
    """``sum c_pq dx^p dy^q`` from ``{(p, q): c}``."""
    return WeylOp.from_monomials({(0, 0, p, q): c for (p, q), c in coords.items() if c})


def dpoly_coordinates(theta: WeylOp) -> dict:
    out = {}
    for (i, j, k, l), v in theta.monomials().items():
        if i or j:
            raise ValueError("expected a polynomial in dx, dy only")
        out[(k, l)] = v
    return out


def m_basis(f, n: int) -> FilteredBasis:
    """Basis of M(n) as pure dx/dy polynomials."""
    if n < 0:
        raise InputError("level must be >= 0")
    system = constraint_system(f, n)
    kernel = [_primitive(v) for v in nullspace_rows(system.sparse_rows(), len(system.unknowns))]
    elements = [dpoly(dict(zip(system.unknowns, vec))) for vec in kernel]
    return FilteredBasis(level=n, elements=elements, monomials=tuple(system.unknowns), vectors=kernel)


def m_dim(f, n: int) -> int:
    if n < 0:
        return 0
    system = constraint_system(f, n)
    return len(system.unknowns) - rank_rows(system.sparse_rows(), len(system.unknowns))


def bound_cardinality(n: int, N: int) -> int:
    """``|Delta_n| - |Delta_{n-N}|`` with the true set sizes."""
    return delta_size(n) - delta_size(n - N)


def bound_paper_expr(n: int, N: int) -> int | None:
    """The closed form ``n(n+1)/2 - (n-N)(n-N+1)/2`` as printed in the source argument.

    Reported next to :func:`bound_cardinality` for comparison only; it counts
    ``{i + j < n}`` rather than ``{i + j <= n}`` and is only stated for n >= N.
    """
    if n < N:
        return None
    return n * (n + 1) // 2 - (n - N) * (n - N + 1) // 2


@dataclass
class CheckReport:
    check: str
    f: str
    n: int
    ok: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"check": self.check, "f": self.f, "n": self.n, "ok": self.ok, **self.details}


def bound_check(f, n: int, raise_on_failure: bool = True) -> CheckReport:
    curve = as_curve(f)
    if n < 0:
        return CheckReport("bound", str(curve), n, True, {"vacuous": True})
    dim = m_dim(curve, n)
    bound = bound_cardinality(n, curve.N)
    rep = CheckReport(
        "bound",
        str(curve),
        n,
        dim <= bound,
        {"dim": dim, "bound_cardinality": bound, "bound_paper_expr": bound_paper_expr(n, curve.N)},
    )
    if raise_on_failure and not rep.ok:
        raise BoundViolation(f"dim M({n}) = {dim} exceeds {bound}", rep.as_dict())
    return rep


def independence_check(f, n: int, raise_on_failure: bool = True) -> CheckReport:
    """Rows indexed by Delta_{n-N} are linearly independent."""
    curve = as_curve(f)
    if n < curve.N:
        raise InputError(f"independence_check needs n >= N = {curve.N}")
    keys = delta_set(n - curve.N)
    rows = {k: phi_row(curve, k[0], k[1], n) for k in keys}
    unknowns = delta_set(n)
    idx = {u: c for c, u in enumerate(unknowns)}
    r = rank_rows([{idx[u]: v for u, v in row.items()} for row in rows.values()], len(unknowns))
    rep = CheckReport("independence", str(curve), n, r == len(keys), {"rank": r, "expected": len(keys)})
    if raise_on_failure and not rep.ok:
        raise IndependenceViolation(f"rank {r} < |Delta_{n - curve.N}| = {len(keys)}", rep.as_dict())
    return rep


def leading_unknown(row: dict):
    return max(row, key=deglex_key) if row else None


def leading_term_check(f, n: int, raise_on_failure: bool = True) -> CheckReport:
    """Leading unknown of Phi_ij equals ``(i, j)`` + leading unknown of Phi_00 on Delta_{n-N}."""
    curve = as_curve(f)
    if n < curve.N:
        raise InputError(f"leading_term_check needs n >= N = {curve.N}")
    base = leading_unknown(phi_row(curve, 0, 0, n))
    bad = None
    for i, j in delta_set(n - curve.N):
        lead = leading_unknown(phi_row(curve, i, j, n))
        expected = None if base is None else (base[0] + i, base[1] + j)
        if lead != expected:
            bad = {"row": [i, j], "leading": list(lead) if lead else None, "expected": list(expected) if expected else None}
            break
    rep = CheckReport(
        "leading_term", str(curve), n, bad is None, {"base_leading": list(base) if base else None}
    )
    if bad:
        rep.details["counterexample"] = bad
    if raise_on_failure and not rep.ok:
        raise LeadingTermViolation("leading-term shift identity fails", bad)
    return rep


def reduce_product(theta: WeylOp, g: WeylOp) -> WeylOp:
    """``(theta * g)`` modulo (x, y)A_2, for ``theta`` a polynomial in dx, dy.

    ``dx^p dy^q * c x^a y^b dx^k dy^l`` contributes to the constant part only
    through the Leibniz terms that differentiate ``x^a y^b`` down to 1, giving
    ``c C(p,a) C(q,b) a! b! dx^(p-a+k) dy^(q-b+l)``.
    """
    out: dict = {}
    for (p, q), c1 in dpoly_coordinates(theta).items():
        for (a, b, k, l), c2 in g.monomials().items():
            if a > p or b > q:
                continue
            key = (p - a + k, q - b + l)
            out[key] = out.get(key, 0) + c1 * c2 * comb(p, a) * comb(q, b) * factorial(a) * factorial(b)
    return dpoly(out)


def filtration_action_check(f, n: int, m: int, raise_on_failure: bool = True) -> CheckReport:
    """Every reduction of ``theta * g`` (theta in M(n), g in G_m) lies in M(n+m)."""
    curve = as_curve(f)
    if n < 0 or m < 0:
        raise InputError("levels must be >= 0")
    target = constraint_system(curve, n + m)
    mb = m_basis(curve, n)
    gb = idealizer_filtered_basis(curve, m)
    bad = None
    for theta in mb.elements:
        for g in gb.elements:
            red = reduce_product(theta, g)
            coords = dpoly_coordinates(red)
            if any(p + q > n + m for p, q in coords) or not target.satisfied_by(red):
                bad = {"theta": str(theta), "g": str(g), "reduction": str(red)}
                break
        if bad:
            break
    rep = CheckReport(
        "filtration_action", str(curve), n, bad is None, {"m": m, "pairs": mb.dim * gb.dim}
    )
    if bad:
        rep.details["counterexample"] = bad
    if raise_on_failure and not rep.ok:
        raise FiltrationViolation(f"M({n}) F_{m} not inside M({n + m})", bad)
    return rep


@dataclass
class GrowthTable:
    f: str
    N: int
    rows: list
    stable_from: int | None = None
    slope: int | None = None

    def dims(self) -> list[int]:
        return [r["dim"] for r in self.rows]

    def differences(self) -> list[int]:
        d = self.dims()
        return [b - a for a, b in zip(d, d[1:])]

    def as_dict(self) -> dict:
        return {"f": self.f, "N": self.N, "rows": self.rows, "stable_from": self.stable_from, "slope": self.slope}


def _stability(dims: list[int]) -> tuple[int | None, int | None]:
    """Least ``n1`` after which first differences are constant, and that constant."""
    if len(dims) < 2:
        return None, None
    diffs = [b - a for a, b in zip(dims, dims[1:])]
    last = diffs[-1]
    k = len(diffs) - 1
    while k > 0 and diffs[k - 1] == last:
        k -= 1
    # diffs[k] = dims[k+1] - dims[k]; constant from level k onwards
    return k, last


def table_from_dims(f_str: str, N: int, dims: list[int]) -> GrowthTable:
    rows = [
        {
            "n": n,
            "dim": d,
            "bound_cardinality": bound_cardinality(n, N),
            "bound_paper_expr": bound_paper_expr(n, N),
        }
        for n, d in enumerate(dims)
    ]
    n1, slope = _stability(dims)
    return GrowthTable(f_str, N, rows, n1, slope)


def growth_table(f, n_max: int) -> GrowthTable:
    curve = as_curve(f)
    if n_max < 0:
        raise InputError("n_max must be >= 0")
    return table_from_dims(str(curve), curve.N, [m_dim(curve, n) for n in range(n_max + 1)])


@dataclass
class ProbeReport:
    f: str
    n0: int
    m_max: int
    cap: int
    levels: list
    witness_n0: int | None
    shift: int | None

    @property
    def ok(self) -> bool:
        return self.witness_n0 is not None

    def as_dict(self) -> dict:
        return {
            "f": self.f,
            "n0": self.n0,
            "m_max": self.m_max,
            "cap": self.cap,
            "witness_n0": self.witness_n0,
            "shift": self.shift,
            "levels": self.levels,
            "heuristic": True,
        }


def step_generated(f, level: int, g_basis: FilteredBasis) -> dict:
    """Is M(level) contained in the span of the reductions of M(level-1)·G_s?

    Products can overshoot ``level``, so the span is taken in full coordinates
    and containment is tested by rank; ``1`` lies in G_s, so M(level-1) is
    part of the span automatically.
    """
    curve = as_curve(f)
    unknowns = delta_set(level - 1 + g_basis.level)
    idx = {u: c for c, u in enumerate(unknowns)}
    vecs = []
    for theta in m_basis(curve, level - 1).elements:
        for g in g_basis.elements:
            red = dpoly_coordinates(reduce_product(theta, g))
            vecs.append({idx[u]: v for u, v in red.items()})
    span_rank = rank_rows(vecs, len(unknowns))
    target = [{idx[u]: v for u, v in dpoly_coordinates(e).items()} for e in m_basis(curve, level).elements]
    joint = rank_rows(vecs + target, len(unknowns))
    return {"level": level, "span_rank": span_rank, "dim": len(target), "ok": joint == span_rank}


def generation_probe(f, n0: int, m_max: int, cap: int | None = None, shift: int | None = None) -> ProbeReport:
    """Empirical finite-generation witness. Heuristic: a failure proves nothing.

    M(n0) generates M up to level ``n0 + m_max`` if, for a fixed shift ``s``,
    each M(L) with ``n0 < L <= n0 + m_max`` is spanned by reductions of
    M(L-1)·G_s (induction then gives M(L) inside M(n0)·G_s^(L-n0)). Reductions
    of M(L-1)·G_m never reach level ``L-1+m``, so the shift ``s`` plays the role
    of the quasi-filtration constant. With ``shift=None`` the least ``s <= 2N``
    that works is searched for. Start levels ``n0..cap`` are tried in turn and
    the first passing one is reported.
    """
    curve = as_curve(f)
    if n0 < 0 or m_max < 0:
        raise InputError("n0 and m_max must be >= 0")
    cap = n0 if cap is None else cap
    shifts = [shift] if shift is not None else list(range(1, 2 * curve.N + 1))
    g_cache: dict = {}
    shown = None
    for start in range(n0, cap + 1):
        if m_max == 0:
            return ProbeReport(str(curve), n0, m_max, cap, [], start, shift)
        for s in shifts:
            if s not in g_cache:
                g_cache[s] = idealizer_filtered_basis(curve, s)
            levels = []
            for level in range(start + 1, start + m_max + 1):
                rec = step_generated(curve, level, g_cache[s])
                rec["shift"] = s
                levels.append(rec)
                if not rec["ok"]:
                    break
            if all(r["ok"] for r in levels):
                return ProbeReport(str(curve), n0, m_max, cap, levels, start, s)
            if shown is None or s == shifts[-1]:
                shown = levels
    return ProbeReport(str(curve), n0, m_max, cap, shown or [], None, None)


def point_constraint_dims(f, gamma, delta, n_max: int) -> list[int]:
    """dim M(n) at the point ``(gamma, delta)`` computed without translating ``f``.

    Row ``(i, j)`` is ``theta * (f (x-gamma)^i (y-delta)^j)`` evaluated at the
    point, applied directly to the monomials ``dx^p dy^q``.
    """
    curve = as_curve(f)
    g, d = to_rational(gamma), to_rational(delta)
    xs = BiPoly({(1, 0): 1, (0, 0): -g})
    ys = BiPoly({(0, 1): 1, (0, 0): -d})
    dims = []
    for n in range(n_max + 1):
        unknowns = delta_set(n)
        rows = []
        for i, j in delta_set(n):
            target = curve.f * xs**i * ys**j
            row = {}
            for col, (p, q) in enumerate(unknowns):
                v = evaluate(act(WeylOp.monomial(0, 0, p, q), target), g, d)
                if v:
                    row[col] = v
            if row:
                rows.append(row)
        dims.append(len(unknowns) - rank_rows(rows, len(unknowns)))
    return dims


def point_module_dims(f, gamma, delta, n_max: int) -> GrowthTable:
    """Growth table of M at ``(gamma, delta)``, via translation to the origin.

    The direct computation at the point is run as well; a mismatch raises.
    """
    curve = as_curve(f)
    shifted = as_curve(translate(curve.f, gamma, delta))
    table = growth_table(shifted, n_max)
    direct = point_constraint_dims(curve, gamma, delta, n_max)
    if direct != table.dims():
        raise TranslationViolation(
            "translated and direct point computations disagree",
            {"translated": table.dims(), "direct": direct},
        )
    return table


__all__ = [
    "phi_row",
    "ConstraintSystem",
    "constraint_system",
    "m_basis",
    "m_dim",
    "bound_cardinality",
    "bound_paper_expr",
    "bound_check",
    "independence_check",
    "leading_term_check",
    "leading_unknown",
    "reduce_product",
    "filtration_action_check",
    "GrowthTable",
    "growth_table",
    "generation_probe",
    "point_module_dims",
    "point_constraint_dims",
    "set_row_hook",
    "CheckReport",
    "ProbeReport",
]
