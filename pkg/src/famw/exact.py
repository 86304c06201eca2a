"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are tuples of Fractions.  :class:`Matrix` is an
immutable row-major grid; :func:`rank`, :func:`nullspace` and :func:`solve`
run Gaussian elimination over the rationals on a sparse row representation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"[+-]?[0-9]+(/[0-9]+)?")

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(text: str) -> Fraction:
    """Parse ``"-3/2"``, ``"7"``, ``"+4/6"``; decimals and blanks are rejected."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_scalar(x) -> str:
    return str(Fraction(x))


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or rational string")
    return Fraction(x)


# -- vectors ---------------------------------------------------------------

def vector(values: Iterable) -> tuple:
    return tuple(as_scalar(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> tuple:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


# Zero coordinates dominate in practice; skipping them avoids most Fraction arithmetic.
def vec_add(u, v) -> tuple:
    if not any(v):
        return tuple(u)
    if not any(u):
        return tuple(v)
    return tuple((a + b if a else b) if b else a for a, b in zip(u, v))


def vec_sub(u, v) -> tuple:
    if not any(v):
        return tuple(u)
    return tuple((a - b if a else -b) if b else a for a, b in zip(u, v))


def vec_scale(c, u) -> tuple:
    return tuple(c * a for a in u)


def vec_neg(u) -> tuple:
    return tuple(-a if a else a for a in u)


def lincomb(terms: Iterable, n: int) -> tuple:
    """Sum of ``c * v`` over ``(c, v)`` pairs, as a length-``n`` vector."""
    acc = [ZERO] * n
    for c, v in terms:
        if c:
            for k, x in enumerate(v):
                if x:
                    acc[k] += c * x
    return tuple(acc)


def is_zero(u) -> bool:
    return not any(u)


def support(u) -> list:
    """Indices of nonzero coordinates."""
    return [i for i, x in enumerate(u) if x]


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        grid = tuple(tuple(as_scalar(x) for x in row) for row in data)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(grid)
        self.cols = cols
        self._data = grid

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([basis_vector(n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls([[col[r] for col in columns] for r in range(rows)], len(columns))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            r, c = key
            return self._data[r][c]
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def row(self, r: int) -> tuple:
        return self._data[r]

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self._data)

    def tolist(self) -> list:
        return [list(row) for row in self._data]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in row) for row in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def transpose(self) -> "Matrix":
        return Matrix([self.column(c) for c in range(self.cols)], self.rows)

    T = property(transpose)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([vec_add(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([vec_sub(a, b) for a, b in zip(self._data, other._data)], self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix([vec_neg(a) for a in self._data], self.cols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix([vec_scale(c, a) for a in self._data], self.cols)

    def apply(self, v) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} applied to {self.rows}x{self.cols} matrix")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((row[j] * x for j, x in nz), ZERO) for row in self._data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [self.apply(other.column(c)) for c in range(other.cols)]
            return Matrix.from_columns(cols, self.rows) if cols else Matrix.zeros(self.rows, 0)
        return self.apply(other)

    def is_zero(self) -> bool:
        return all(not any(row) for row in self._data)


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[ZERO] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for r in range(b.rows):
            for c in range(b.cols):
                out[r0 + r][c0 + c] = b[r, c]
        r0 += b.rows
        c0 += b.cols
    return Matrix(out, m)


# -- elimination -----------------------------------------------------------

def _echelon(rows: list, ncols: int) -> tuple:
    """Reduce sparse rows (dict col -> value) in place to RREF.

    Returns ``(pivot_rows, pivot_cols)``; each pivot row is normalised so the
    pivot entry is 1 and every other pivot row is zero in that column.
    """
    pivots: list = []
    pivot_cols: list = []
    pending = [r for r in rows if r]
    for col in range(ncols):
        idx = next((i for i, r in enumerate(pending) if col in r), None)
        if idx is None:
            continue
        prow = pending.pop(idx)
        inv = ONE / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        for r in pending:
            f = r.get(col)
            if f:
                _axpy(r, -f, prow)
        for r in pivots:
            f = r.get(col)
            if f:
                _axpy(r, -f, prow)
        pivots.append(prow)
        pivot_cols.append(col)
        pending = [r for r in pending if r]
    return pivots, pivot_cols


def _axpy(target: dict, c, source: dict) -> None:
    for k, v in source.items():
        nv = target.get(k, ZERO) + c * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def _sparse_rows(m: Matrix) -> list:
    return [{c: x for c, x in enumerate(row) if x} for row in m]


def rank(m: Matrix) -> int:
    pivots, _ = _echelon(_sparse_rows(m), m.cols)
    return len(pivots)


def _kernel_from(pivots: list, pivot_cols: list, ncols: int) -> list:
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for prow, pc in zip(pivots, pivot_cols):
            c = prow.get(free)
            if c:
                v[pc] = -c
        basis.append(tuple(v))
    return basis


def nullspace(m: Matrix) -> list:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    pivots, pcols = _echelon(_sparse_rows(m), m.cols)
    return _kernel_from(pivots, pcols, m.cols)


@dataclass(frozen=True)
class LinearSystemSolution:
    particular: tuple | None
    kernel_basis: tuple

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def solve(m: Matrix, b: Sequence) -> LinearSystemSolution:
    """Solve ``m x = b`` exactly.

    The particular solution sets every free variable to zero; ``kernel_basis``
    spans the full nullspace of ``m`` whether or not ``b`` is reachable.
    """
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    b = vector(b)
    aug = m.cols
    rows = _sparse_rows(m)
    for r, x in zip(rows, b):
        if x:
            r[aug] = x
    pivots, pcols = _echelon(rows, aug + 1)
    inconsistent = bool(pcols) and pcols[-1] == aug
    if inconsistent:
        pivots, pcols = pivots[:-1], pcols[:-1]
    coeff_rows = [{k: v for k, v in p.items() if k != aug} for p in pivots]
    kernel = _kernel_from(coeff_rows, pcols, m.cols)
    if len(pcols) + len(kernel) != m.cols:
        raise ArithmeticError("solver self-check failed: rank + nullity != cols")
    particular = None
    if not inconsistent:
        x = [ZERO] * m.cols
        for prow, pc in zip(pivots, pcols):
            x[pc] = prow.get(aug, ZERO)
        particular = tuple(x)
        if m.apply(particular) != b:
            raise ArithmeticError("solver self-check failed: particular solution does not satisfy the system")
    return LinearSystemSolution(particular, tuple(kernel))
