"""Structure constants of a bilinear product.

``StructureTensor(dim)`` stores ``c[i][j][k]`` with ``e_i o e_j = sum_k c[i][j][k] e_k``.
Only nonzero ``(i, j)`` rows are kept, so storage is sparse at every
dimension; lookups of missing pairs return the zero vector.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .exact import ZERO, as_scalar, vec_add, vec_neg, vec_scale, vec_sub, zero_vector


def _lower(x):
    return x.numerator if x.denominator == 1 else x


def _raise(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class StructureTensor:
    __slots__ = ("dim", "_rows", "_sparse", "_zero")

    def __init__(self, dim: int, rows: dict | None = None):
        if dim < 0:
            raise ValueError("negative dimension")
        self.dim = dim
        self._zero = zero_vector(dim)
        clean = {}
        for (i, j), vec in (rows or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"index pair ({i}, {j}) out of range for dim {dim}")
            vec = tuple(as_scalar(x) for x in vec)
            if len(vec) != dim:
                raise ValueError(f"row ({i}, {j}) has length {len(vec)}, expected {dim}")
            if any(vec):
                clean[(i, j)] = vec
        self._rows = clean
        self._sparse = {key: [(k, _lower(z)) for k, z in enumerate(vec) if z] for key, vec in clean.items()}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, dim: int) -> "StructureTensor":
        return cls(dim)

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable) -> "StructureTensor":
        """Build from ``(i, j, k, value)`` quadruples; repeated coordinates add up."""
        acc: dict = {}
        for i, j, k, v in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise IndexError(f"entry ({i}, {j}, {k}) out of range for dim {dim}")
            row = acc.setdefault((i, j), [ZERO] * dim)
            row[k] += as_scalar(v)
        return cls(dim, {key: tuple(row) for key, row in acc.items()})

    @classmethod
    def from_function(cls, dim: int, f: Callable[[int, int], tuple]) -> "StructureTensor":
        """Tabulate ``f(i, j)`` (the product of basis vectors ``e_i, e_j``)."""
        return cls(dim, {(i, j): f(i, j) for i in range(dim) for j in range(dim)})

    @classmethod
    def from_bilinear(cls, dim: int, f: Callable[[tuple, tuple], tuple]) -> "StructureTensor":
        """Tabulate a bilinear map given on coordinate vectors."""
        basis = [tuple(Fraction(int(a == b)) for b in range(dim)) for a in range(dim)]
        return cls.from_function(dim, lambda i, j: f(basis[i], basis[j]))

    # -- access ----------------------------------------------------------

    def __call__(self, i: int, j: int) -> tuple:
        return self._rows.get((i, j), self._zero)

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        return self._rows.get((i, j), self._zero)[k]

    def nonzero_pairs(self) -> list:
        return sorted(self._rows)

    def entries(self) -> Iterator:
        """Nonzero ``(i, j, k, value)`` in lexicographic order."""
        for key in sorted(self._rows):
            for k, v in enumerate(self._rows[key]):
                if v:
                    yield key[0], key[1], k, v

    def is_zero(self) -> bool:
        return not self._rows

    def product(self, u, v) -> tuple:
        """Evaluate the product on coordinate vectors."""
        n = self.dim
        if len(u) != n or len(v) != n:
            raise ValueError(f"vectors of length {len(u)}, {len(v)} for a dim-{n} product")
        rows = self._sparse
        if not rows:
            return self._zero
        # integral coordinates are multiplied as ints and converted back once
        uu = [(i, _lower(x)) for i, x in enumerate(u) if x]
        vv = [(j, _lower(y)) for j, y in enumerate(v) if y]
        acc: dict = {}
        for i, x in uu:
            for j, y in vv:
                row = rows.get((i, j))
                if row is None:
                    continue
                c = x * y
                for k, z in row:
                    t = c * z
                    acc[k] = acc[k] + t if k in acc else t
        if not acc:
            return self._zero
        return tuple(_raise(acc[k]) if k in acc else ZERO for k in range(n))

    # -- algebra of tensors ----------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, StructureTensor) and self.dim == other.dim and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted(self._rows.items()))))

    def __repr__(self) -> str:
        body = ", ".join(f"({i},{j},{k}):{v}" for i, j, k, v in self.entries())
        return f"StructureTensor(dim={self.dim}, {{{body}}})"

    def _check(self, other: "StructureTensor") -> None:
        if not isinstance(other, StructureTensor) or other.dim != self.dim:
            raise ValueError("tensor dimension mismatch")

    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        self._check(other)
        keys = set(self._rows) | set(other._rows)
        return StructureTensor(self.dim, {k: vec_add(self(*k), other(*k)) for k in keys})

    def __sub__(self, other: "StructureTensor") -> "StructureTensor":
        self._check(other)
        keys = set(self._rows) | set(other._rows)
        return StructureTensor(self.dim, {k: vec_sub(self(*k), other(*k)) for k in keys})

    def __neg__(self) -> "StructureTensor":
        return StructureTensor(self.dim, {k: vec_neg(v) for k, v in self._rows.items()})

    def scale(self, c) -> "StructureTensor":
        c = as_scalar(c)
        return StructureTensor(self.dim, {k: vec_scale(c, v) for k, v in self._rows.items()})

    def opposite(self) -> "StructureTensor":
        """The product with its arguments swapped."""
        return StructureTensor(self.dim, {(j, i): v for (i, j), v in self._rows.items()})


def tensor_contract(c: StructureTensor, u, v) -> tuple:
    """``result_k = sum_{i,j} u_i v_j c[i][j][k]``."""
    return c.product(u, v)
