"""Exact dense linear algebra over the rationals.

Everything is done with :class:`fractions.Fraction`; there is no rounding
anywhere. :class:`QMatrix` is the immutable public carrier, while the engines
that assemble large constraint systems pass sparse rows (``{col: value}``)
straight to :func:`rref_rows` / :func:`nullspace_rows` to avoid densifying.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Rational = Fraction


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {value!r}") from None
    if isinstance(value, float):
        raise InputError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """Render as ``p`` or ``p/q``; never as a decimal."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class QMatrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Iterable[Sequence], cols: int | None = None):
        grid = tuple(tuple(to_rational(v) for v in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(grid)
        self.cols = cols
        self._entries = grid

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_sparse(cls, rows: Sequence[dict], cols: int) -> "QMatrix":
        return cls([[r.get(c, 0) for c in range(cols)] for r in rows], cols=cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._entries[i][j]

    def row(self, i: int) -> tuple:
        return self._entries[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._entries]

    def sparse_rows(self) -> list[dict]:
        return [{j: v for j, v in enumerate(r) if v} for r in self._entries]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols_t = list(zip(*other._entries)) if other.rows else [()] * other.cols
            return QMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols_t] for r in self._entries],
                cols=other.cols,
            )
        vec = [to_rational(v) for v in other]
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._entries]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.cols == other.cols and self._entries == other._entries

    def __hash__(self):
        return hash((self.cols, self._entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(v) for v in r) for r in self._entries)
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"


def rref_rows(rows: Iterable[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Sparse Gauss-Jordan elimination.

    Returns the nonzero rows of the reduced row echelon form (ordered by pivot)
    and the pivot columns. Pivot choice: first row with a nonzero entry in the
    current column.
    """
    pending = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    pending = [r for r in pending if r]
    reduced: list[dict] = []
    pivots: list[int] = []
    for col in range(ncols):
        k = next((i for i, r in enumerate(pending) if col in r), None)
        if k is None:
            continue
        prow = pending.pop(k)
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        for group in (pending, reduced):
            for i, r in enumerate(group):
                factor = r.get(col)
                if factor is None:
                    continue
                for c, v in prow.items():
                    nv = r.get(c, 0) - factor * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
            if group is pending:
                pending = [r for r in pending if r]
        reduced.append(prow)
        pivots.append(col)
        if not pending:
            break
    return reduced, pivots


def nullspace_rows(rows: Iterable[dict], ncols: int) -> list[list[Fraction]]:
    """Basis of the kernel, one vector per free column (free entry set to 1)."""
    reduced, pivots = rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for prow, pc in zip(reduced, pivots):
            v = prow.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def rank_rows(rows: Iterable[dict], ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    reduced, pivots = rref_rows(m.sparse_rows(), m.cols)
    full = [[r.get(c, 0) for c in range(m.cols)] for r in reduced]
    full += [[0] * m.cols for _ in range(m.rows - len(reduced))]
    return QMatrix(full, cols=m.cols), pivots


def rank(m: QMatrix) -> int:
    return rank_rows(m.sparse_rows(), m.cols)


def nullspace_basis(m: QMatrix) -> list[list[Fraction]]:
    return nullspace_rows(m.sparse_rows(), m.cols)


def in_span(vectors: Sequence[dict], target: dict, ncols: int) -> bool:
    """True when ``target`` lies in the span of ``vectors`` (sparse vectors)."""
    base = rank_rows(vectors, ncols)
    return rank_rows(list(vectors) + [target], ncols) == base
