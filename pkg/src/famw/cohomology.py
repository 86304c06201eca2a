"""Pre-Lie cohomology and pre-Lie deformations of commutative associative algebras.

An ``n``-cochain ``phi in Hom(L^{n-1} g (x) g, V)`` is stored on canonical
index tuples ``(i_1 < ... < i_{n-1}, j)``; its coordinate vector lists, for
each canonical tuple in :func:`itertools.combinations` order and each ``j``,
the ``module_dim`` components of ``phi(e_{i_1}, ..., e_{i_{n-1}}, e_j)``.
Evaluation at other tuples uses antisymmetry in the first ``n-1`` slots.

The coboundary is

    d phi(x_1..x_{n+1}) = sum_i (-1)^{i+1} rho(x_i) phi(.. ^x_i .., x_{n+1})
                        + sum_i (-1)^{i+1} mu(x_{n+1}) phi(.. ^x_i .., x_n, x_i)
                        - sum_i (-1)^{i+1} phi(.. ^x_i .., x_n, x_i * x_{n+1})
                        + sum_{i<j} (-1)^{i+j} phi([x_i, x_j], .. ^x_i .. ^x_j .., x_{n+1})

with ``i, j <= n`` and ``[x, y] = x*y - y*x``.  For a commutative associative
base with its regular representation ``(L, R)``, ``d mu_1 = 0`` is the
infinitesimal deformation condition and ``d mu_{n+1} = Theta_n`` is the
extension equation.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Sequence

from .axioms import check_class, scan
from .constructions import prelie_regular_representation
from .exact import Matrix, ZERO, as_scalar, basis_vector, rank, solve, vec_add, vec_sub
from .model import (
    Algebra,
    CheckReport,
    FamwError,
    FormatError,
    LinearOperator,
    PreconditionError,
    Representation,
    ShapeError,
    _read_json,
    algebra_from_json,
    algebra_to_json,
    dumps,
    tensor_from_json,
    tensor_to_json,
)
from .tensor import StructureTensor

DEFAULT_DEGREE_CAP = 4
MAX_COCHAIN_DIM = 5000


class DegreeCapError(FamwError, ValueError):
    pass


def degree_cap() -> int:
    raw = os.environ.get("FAMW_DEGREE_CAP")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        return int(raw)
    except ValueError:
        raise DegreeCapError(f"FAMW_DEGREE_CAP must be an integer, got {raw!r}") from None


def cochain_dim(n: int, algebra_dim: int, module_dim: int) -> int:
    if n < 1:
        return 0
    return comb(algebra_dim, n - 1) * algebra_dim * module_dim


class _Layout:
    """Canonical index tuples of C^n and their coordinate offsets."""

    _cache: dict = {}

    def __new__(cls, n: int, dim: int, m: int):
        key = (n, dim, m)
        if key not in cls._cache:
            self = super().__new__(cls)
            self.n, self.dim, self.m = n, dim, m
            self.combos = list(itertools.combinations(range(dim), n - 1))
            self.combo_pos = {c: p for p, c in enumerate(self.combos)}
            cls._cache[key] = self
        return cls._cache[key]

    @property
    def size(self) -> int:
        return len(self.combos) * self.dim * self.m

    def offset(self, combo: tuple, j: int) -> int:
        return (self.combo_pos[combo] * self.dim + j) * self.m

    def keys(self):
        for c in self.combos:
            for j in range(self.dim):
                yield c, j


def _sort_sign(idx: Sequence[int]) -> tuple:
    """Sorted tuple and permutation sign; sign 0 on a repeated index."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return tuple(sorted(idx)), 0
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return tuple(sorted(idx)), sign


@dataclass(frozen=True)
class Cochain:
    degree: int
    algebra_dim: int
    module_dim: int
    values: tuple

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("cochain degree must be at least 1")
        vals = tuple(as_scalar(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self._layout.size:
            raise ShapeError(f"C^{self.degree} has dimension {self._layout.size}, got {len(vals)} values")

    @property
    def _layout(self) -> _Layout:
        return _Layout(self.degree, self.algebra_dim, self.module_dim)

    @classmethod
    def zero(cls, degree: int, algebra_dim: int, module_dim: int) -> "Cochain":
        return cls(degree, algebra_dim, module_dim, (ZERO,) * cochain_dim(degree, algebra_dim, module_dim))

    @classmethod
    def from_function(cls, degree: int, algebra_dim: int, module_dim: int, f) -> "Cochain":
        """Sample ``f(idx)`` (a length-``degree`` basis index tuple) on canonical tuples."""
        lay = _Layout(degree, algebra_dim, module_dim)
        vals: list = []
        for c, j in lay.keys():
            v = tuple(f(c + (j,)))
            if len(v) != module_dim:
                raise ShapeError(f"value of length {len(v)}, module has dim {module_dim}")
            vals.extend(v)
        return cls(degree, algebra_dim, module_dim, tuple(vals))

    @classmethod
    def from_tensor(cls, t: StructureTensor) -> "Cochain":
        """A bilinear map ``g x g -> g`` as a 2-cochain."""
        return cls.from_function(2, t.dim, t.dim, lambda idx: t(*idx))

    @classmethod
    def from_operator(cls, op: LinearOperator) -> "Cochain":
        return cls.from_function(1, op.source_dim, op.target_dim, lambda idx: op.matrix.column(idx[0]))

    def to_tensor(self) -> StructureTensor:
        if self.degree != 2 or self.algebra_dim != self.module_dim:
            raise ShapeError("only 2-cochains with values in the algebra are bilinear products")
        return StructureTensor.from_function(self.algebra_dim, lambda i, j: self.at((i, j)))

    def to_operator(self) -> LinearOperator:
        if self.degree != 1:
            raise ShapeError("only 1-cochains are linear maps")
        cols = [self.at((j,)) for j in range(self.algebra_dim)]
        return LinearOperator.from_images(cols, self.module_dim) if cols else LinearOperator.zero(self.module_dim, 0)

    def at(self, idx: Sequence[int]) -> tuple:
        """Value on basis vectors, extended by antisymmetry in the first ``degree - 1`` slots."""
        if len(idx) != self.degree:
            raise ValueError(f"{self.degree}-cochain evaluated at {len(idx)} arguments")
        head, sign = _sort_sign(idx[:-1])
        m = self.module_dim
        if sign == 0:
            return (ZERO,) * m
        off = self._layout.offset(head, idx[-1])
        vals = self.values[off:off + m]
        return vals if sign > 0 else tuple(-x for x in vals)

    def __call__(self, *args) -> tuple:
        """Multilinear evaluation; each argument is a basis index or a coordinate vector."""
        if len(args) != self.degree:
            raise ValueError(f"{self.degree}-cochain evaluated at {len(args)} arguments")
        terms = []
        for a in args:
            if isinstance(a, int):
                terms.append([(a, 1)])
            else:
                terms.append([(i, x) for i, x in enumerate(a) if x])
        acc = [ZERO] * self.module_dim
        for combo in itertools.product(*terms):
            c = 1
            for _, x in combo:
                c *= x
            val = self.at(tuple(i for i, _ in combo))
            for k, v in enumerate(val):
                if v:
                    acc[k] += c * v
        return tuple(acc)

    def is_zero(self) -> bool:
        return not any(self.values)

    def _same(self, other: "Cochain") -> None:
        if (self.degree, self.algebra_dim, self.module_dim) != (other.degree, other.algebra_dim, other.module_dim):
            raise ShapeError("cochains live in different spaces")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.degree, self.algebra_dim, self.module_dim, vec_add(self.values, other.values))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.degree, self.algebra_dim, self.module_dim, vec_sub(self.values, other.values))

    def __neg__(self) -> "Cochain":
        return Cochain(self.degree, self.algebra_dim, self.module_dim, tuple(-x for x in self.values))

    def scale(self, c) -> "Cochain":
        c = as_scalar(c)
        return Cochain(self.degree, self.algebra_dim, self.module_dim, tuple(c * x for x in self.values))


# -- coboundary ------------------------------------------------------------------

def prelie_slot(a: Algebra, slot: str | None = None) -> str:
    """The product a cohomology computation reads: ``slot``, else the only product, else ``bracket``."""
    if slot is not None:
        a.product(slot)
        return slot
    if len(a.products) == 1:
        return next(iter(a.products))
    a.product("bracket")
    return "bracket"


def _check_setting(a: Algebra, r: Representation, slot: str, check: bool) -> StructureTensor:
    if r.algebra_dim != a.dim:
        raise ShapeError(f"representation is for a dim-{r.algebra_dim} algebra, got dim {a.dim}")
    t = a.product(slot)
    if check:
        rep = check_class(a, "pre-lie", {"bracket": slot})
        if not rep.passed:
            raise PreconditionError(f"product {slot!r} is not pre-Lie: fails at {rep.witness}", rep)
    return t


def coboundary(a: Algebra, r: Representation, phi: Cochain, slot: str | None = None,
               check: bool = True) -> Cochain:
    slot = prelie_slot(a, slot)
    t = _check_setting(a, r, slot, check)
    if (phi.algebra_dim, phi.module_dim) != (a.dim, r.module_dim):
        raise ShapeError("cochain dimensions do not match the algebra and module")
    n = phi.degree
    m = r.module_dim

    def value(idx):
        x = list(idx)
        last = x[n]
        acc = [ZERO] * m

        def add(vec, c=1):
            for k, v in enumerate(vec):
                if v:
                    acc[k] += c * v

        for i in range(n):
            sign = 1 if i % 2 == 0 else -1
            rest = x[:i] + x[i + 1:n]
            add(r.rho[x[i]].apply(phi.at(tuple(rest) + (last,))), sign)
            add(r.mu[last].apply(phi.at(tuple(rest) + (x[i],))), sign)
            add(phi(*rest, t(x[i], last)), -sign)
        for i in range(n):
            for j in range(i + 1, n):
                sign = 1 if (i + j) % 2 == 0 else -1
                br = vec_sub(t(x[i], x[j]), t(x[j], x[i]))
                if any(br):
                    rest = [x[k] for k in range(n) if k not in (i, j)]
                    add(phi(br, *rest, last), sign)
        return tuple(acc)

    return Cochain.from_function(n + 1, a.dim, m, value)


def _guard(*dims: int) -> None:
    if max(dims, default=0) > MAX_COCHAIN_DIM:
        raise DegreeCapError(f"cochain space of dimension {max(dims)} exceeds the limit {MAX_COCHAIN_DIM}")


def coboundary_matrix(a: Algebra, r: Representation, n: int, slot: str | None = None,
                      layout: str = "full", check: bool = True) -> Matrix:
    """Matrix of ``d: C^n -> C^{n+1}`` in canonical coordinates.

    ``full`` expands the formula row by row into coefficients of the input
    coordinates; ``column`` applies :func:`coboundary` to each basis
    cochain.  Both give the same matrix; ``full`` is much faster.
    """
    slot = prelie_slot(a, slot)
    t = _check_setting(a, r, slot, check)
    src = _Layout(n, a.dim, r.module_dim)
    dst = _Layout(n + 1, a.dim, r.module_dim)
    _guard(src.size, dst.size)
    if layout == "column":
        cols = []
        for c in range(src.size):
            e = Cochain(n, a.dim, r.module_dim, basis_vector(src.size, c))
            cols.append(coboundary(a, r, e, slot, check=False).values)
        return Matrix.from_columns(cols, dst.size) if cols else Matrix.zeros(dst.size, 0)
    if layout == "full":
        return _assemble_rows(t, r, n, src, dst)
    raise ValueError(f"unknown layout {layout!r}")


def _assemble_rows(t: StructureTensor, r: Representation, n: int, src: _Layout, dst: _Layout) -> Matrix:
    m = r.module_dim
    rows = [[ZERO] * src.size for _ in range(dst.size)]

    def symbol(args, coef, out_map, row_base):
        # add coef * out_map . phi(args) into rows; args are (index, weight) term lists
        for combo in itertools.product(*args):
            w = coef
            for _, x in combo:
                w *= x
            idx = [i for i, _ in combo]
            head, sign = _sort_sign(idx[:-1])
            if sign == 0:
                continue
            off = src.offset(head, idx[-1])
            for comp in range(m):
                for out in range(m):
                    c = out_map(out, comp)
                    if c:
                        rows[row_base + out][off + comp] += sign * w * c

    ident = lambda out, comp: 1 if out == comp else 0  # noqa: E731
    for combo, j in dst.keys():
        base = dst.offset(combo, j)
        x = list(combo) + [j]
        for i in range(n):
            sign = 1 if i % 2 == 0 else -1
            rest = [[(k, 1)] for k in x[:i] + x[i + 1:n]]
            rho = r.rho[x[i]]
            symbol(rest + [[(j, 1)]], sign, lambda out, comp, g=rho: g[out, comp], base)
            mu = r.mu[j]
            symbol(rest + [[(x[i], 1)]], sign, lambda out, comp, g=mu: g[out, comp], base)
            prod = [(k, v) for k, v in enumerate(t(x[i], j)) if v]
            if prod:
                symbol(rest + [prod], -sign, ident, base)
        for i in range(n):
            for k in range(i + 1, n):
                sign = 1 if (i + k) % 2 == 0 else -1
                br = [(p, v) for p, v in enumerate(vec_sub(t(x[i], x[k]), t(x[k], x[i]))) if v]
                if br:
                    rest = [[(q, 1)] for p, q in enumerate(x[:n]) if p not in (i, k)]
                    symbol([br] + rest + [[(j, 1)]], sign, ident, base)
    return Matrix(rows, src.size)


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    cochain_dims: tuple  # dim C^{n-1}, C^n, C^{n+1}
    rank_in: int  # rank of d_{n-1}
    rank_out: int  # rank of d_n
    dimension: int


def cohomology(a: Algebra, r: Representation, n: int, slot: str | None = None,
               layout: str = "full") -> CohomologyReport:
    """``dim H^n = dim ker d_n - rank d_{n-1}``; for ``n = 1`` only the kernel counts."""
    cap = degree_cap()
    if n < 1:
        raise DegreeCapError("cohomology degree must be at least 1")
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds the cap {cap} (set FAMW_DEGREE_CAP to raise it)")
    slot = prelie_slot(a, slot)
    _check_setting(a, r, slot, True)
    m = r.module_dim
    dims = (cochain_dim(n - 1, a.dim, m), cochain_dim(n, a.dim, m), cochain_dim(n + 1, a.dim, m))
    _guard(*dims)
    if dims[1] == 0:
        return CohomologyReport(n, dims, 0, 0, 0)
    out = rank(coboundary_matrix(a, r, n, slot, layout, check=False)) if dims[2] else 0
    inc = rank(coboundary_matrix(a, r, n - 1, slot, layout, check=False)) if n >= 2 and dims[0] else 0
    return CohomologyReport(n, dims, inc, out, dims[1] - out - inc)


def cohomology_dim(a: Algebra, r: Representation, n: int, slot: str | None = None,
                   layout: str = "full") -> int:
    return cohomology(a, r, n, slot, layout).dimension


# -- deformations ----------------------------------------------------------------

@dataclass(frozen=True)
class DeformationFamily:
    """``x._h y = mu_0(x, y) + h mu_1(x, y) + ... + h^n mu_n(x, y)`` with ``mu_0`` the base product."""

    base: Algebra
    mus: tuple
    comment: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mus", tuple(self.mus))
        for k, t in enumerate(self.mus, 1):
            if not isinstance(t, StructureTensor) or t.dim != self.base.dim:
                raise ShapeError(f"mu_{k} must be a dim-{self.base.dim} StructureTensor")

    @property
    def order(self) -> int:
        return len(self.mus)

    @property
    def mu0(self) -> StructureTensor:
        a = self.base
        if "mul" in a.products or len(a.products) != 1:
            return a.product("mul")
        return next(iter(a.products.values()))

    def mu(self, k: int) -> StructureTensor:
        if k == 0:
            return self.mu0
        if 1 <= k <= self.order:
            return self.mus[k - 1]
        return StructureTensor.zeros(self.base.dim)

    def extended(self, t: StructureTensor) -> "DeformationFamily":
        return DeformationFamily(self.base, self.mus + (t,), self.comment)

    def base_algebra(self) -> Algebra:
        """The base as a one-product algebra ``mul``."""
        return Algebra(self.base.dim, self.base.basis, {"mul": self.mu0})


def family_to_json(d: DeformationFamily) -> dict:
    out: dict = {}
    if d.comment is not None:
        out["comment"] = d.comment
    out["base"] = algebra_to_json(d.base)
    out["mus"] = [tensor_to_json(t) for t in d.mus]
    return out


def family_from_json(data, where: str = "family") -> DeformationFamily:
    if not isinstance(data, dict):
        raise FormatError("expected an object", where)
    extra = set(data) - {"base", "mus", "comment"}
    if extra:
        raise FormatError(f"unknown field(s) {sorted(extra)}", where)
    if "base" not in data:
        raise FormatError("missing field 'base'", where)
    base = algebra_from_json(data["base"], f"{where}.base")
    mus = data.get("mus", [])
    if not isinstance(mus, list):
        raise FormatError("mus must be a list", f"{where}.mus")
    tensors = [tensor_from_json(e, base.dim, f"{where}.mus[{k}]") for k, e in enumerate(mus)]
    comment = data.get("comment")
    if comment is not None and not isinstance(comment, str):
        raise FormatError("comment must be a string", f"{where}.comment")
    return DeformationFamily(base, tuple(tensors), comment)


def load_family(path) -> DeformationFamily:
    return family_from_json(_read_json(path), str(path))


def save_family(d: DeformationFamily, path) -> None:
    Path(path).write_text(dumps(family_to_json(d)), encoding="utf-8")


def _rule_defect(d: DeformationFamily, k: int, x, y, z) -> tuple:
    n = d.base.dim
    acc = (ZERO,) * n
    for i in range(k + 1):
        mi, mj = d.mu(i), d.mu(k - i)
        if mi.is_zero() or mj.is_zero():
            continue
        acc = vec_add(acc, mi.product(mj.product(x, y), z))
        acc = vec_sub(acc, mi.product(x, mj.product(y, z)))
        acc = vec_sub(acc, mi.product(mj.product(y, x), z))
        acc = vec_add(acc, mi.product(y, mj.product(x, z)))
    return acc


def verify_orders(d: DeformationFamily) -> list:
    """One report per order ``k = 0..n`` of the pre-Lie rule for ``._h``."""
    n = d.base.dim
    e = [basis_vector(n, i) for i in range(n)]
    return [scan(f"pre-lie-rule[{k}]", 3, n, lambda i, j, l, k=k: _rule_defect(d, k, e[i], e[j], e[l]))
            for k in range(d.order + 1)]


def verify_n_deformation(d: DeformationFamily) -> CheckReport:
    base = check_class(d.base_algebra(), "commutative-associative")
    if not base.passed:
        return base
    for rep in verify_orders(d):
        if not rep.passed:
            return rep
    return CheckReport.ok(f"{d.order}-deformation")


def _regular(d: DeformationFamily) -> tuple:
    a = d.base_algebra()
    return a, prelie_regular_representation(a, "mul")


def _require_verified(d: DeformationFamily) -> None:
    rep = verify_n_deformation(d)
    if not rep.passed:
        raise PreconditionError(f"not a pre-Lie {d.order}-deformation: {rep.identity_name} fails at {rep.witness}",
                                rep)


def infinitesimal_cocycle(d: DeformationFamily) -> Cochain:
    """``d^reg mu_1``: zero exactly when ``mu_1`` is an infinitesimal deformation."""
    if d.order < 1:
        raise ValueError("family has no mu_1")
    a, reg = _regular(d)
    return coboundary(a, reg, Cochain.from_tensor(d.mus[0]), "mul", check=False)


def deformation_equivalent(base: Algebra, mu1: StructureTensor, mu1p: StructureTensor,
                           check: bool = True) -> LinearOperator | None:
    """``phi`` with ``mu1 - mu1' = d^reg phi``, or ``None`` when the classes differ."""
    f, fp = DeformationFamily(base, (mu1,)), DeformationFamily(base, (mu1p,))
    if check:
        _require_verified(f)
        _require_verified(fp)
    a, reg = _regular(f)
    mat = coboundary_matrix(a, reg, 1, "mul", check=False)
    rhs = Cochain.from_tensor(mu1 - mu1p).values
    sol = solve(mat, rhs)
    if not sol.solvable:
        return None
    return Cochain(1, a.dim, a.dim, sol.particular).to_operator()


def obstruction_value(d: DeformationFamily, x, y, z) -> tuple:
    """``Theta_n(x, y, z)`` on coordinate vectors."""
    n = d.order
    acc = (ZERO,) * d.base.dim
    for i in range(1, n + 1):
        mi, mj = d.mu(i), d.mu(n + 1 - i)
        acc = vec_add(acc, mi.product(mj.product(x, y), z))
        acc = vec_sub(acc, mi.product(x, mj.product(y, z)))
        acc = vec_sub(acc, mi.product(mj.product(y, x), z))
        acc = vec_add(acc, mi.product(y, mj.product(x, z)))
    return acc


def obstruction(d: DeformationFamily, check: bool = True) -> Cochain:
    if check:
        _require_verified(d)
    n = d.base.dim
    e = [basis_vector(n, i) for i in range(n)]
    return Cochain.from_function(3, n, n, lambda idx: obstruction_value(d, *(e[i] for i in idx)))


def extension_space(d: DeformationFamily, check: bool = True):
    """All ``psi`` with ``d^reg psi = Theta_n``, as a :class:`LinearSystemSolution` in C^2 coordinates."""
    theta = obstruction(d, check)
    a, reg = _regular(d)
    return solve(coboundary_matrix(a, reg, 2, "mul", check=False), theta.values)


def extend_deformation(d: DeformationFamily, check: bool = True) -> StructureTensor | None:
    """``mu_{n+1}`` extending the family (free parameters set to zero), or ``None`` if obstructed."""
    sol = extension_space(d, check)
    if not sol.solvable:
        return None
    n = d.base.dim
    return Cochain(2, n, n, sol.particular).to_tensor()


def semi_classical_limit(d: DeformationFamily, check: bool = True) -> Algebra:
    """``(A, mu_0, mu_1(x, y) - mu_1(y, x))``."""
    if d.order < 1:
        raise PreconditionError("the semi-classical limit needs mu_1")
    if check:
        _require_verified(d)
    mu1 = d.mus[0]
    return Algebra(d.base.dim, d.base.basis, {"mul": d.mu0, "bracket": mu1 - mu1.opposite()})


__all__ = [
    "Cochain", "CohomologyReport", "DeformationFamily", "DegreeCapError", "coboundary", "coboundary_matrix",
    "cochain_dim", "cohomology", "cohomology_dim", "deformation_equivalent", "degree_cap", "extend_deformation",
    "extension_space", "family_from_json", "family_to_json", "infinitesimal_cocycle", "load_family", "obstruction",
    "obstruction_value", "prelie_slot", "save_family", "semi_classical_limit", "verify_n_deformation",
    "verify_orders",
]
