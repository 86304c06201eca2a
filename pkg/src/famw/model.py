"""Algebras, representations, operators and forms, plus the JSON file format.

Indices are 0-based everywhere.  An algebra file looks like::

    {"dim": 3, "basis": ["e1", "e2", "e3"],
     "products": {"mul": [{"i": 1, "j": 2, "k": 0, "v": "1"}, ...]}}

An optional ``"comment"`` string is allowed and preserved; any other key is an
error.  Matrices are row-major grids of rational strings, and a linear
operator's column ``l`` holds the coordinates of the image of ``e_l``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .exact import Matrix, format_scalar, parse_scalar, rank
from .tensor import StructureTensor


class FamwError(Exception):
    """Base class for errors raised by this package."""


class FormatError(FamwError, ValueError):
    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class ShapeError(FamwError, ValueError):
    pass


class MissingSlotError(FamwError, LookupError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing product slot"


class PreconditionError(FamwError):
    """A construction's hypotheses failed; ``report`` names the failing identity."""

    def __init__(self, message: str, report: "CheckReport | None" = None):
        self.report = report
        super().__init__(message)


# -- core types --------------------------------------------------------------

@dataclass(frozen=True)
class Algebra:
    dim: int
    basis: tuple
    products: Mapping[str, StructureTensor] = field(default_factory=dict)
    comment: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "products", dict(self.products))
        if len(self.basis) != self.dim:
            raise ShapeError(f"{len(self.basis)} basis labels for dim {self.dim}")
        if len(set(self.basis)) != self.dim:
            raise ShapeError("basis labels must be distinct")
        for name, t in self.products.items():
            if not isinstance(t, StructureTensor):
                raise TypeError(f"product {name!r} is not a StructureTensor")
            if t.dim != self.dim:
                raise ShapeError(f"product {name!r} has dim {t.dim}, algebra has dim {self.dim}")

    @classmethod
    def create(cls, dim: int, products: Mapping | None = None, basis=None, comment=None) -> "Algebra":
        if basis is None:
            basis = default_labels(dim)
        return cls(dim, tuple(basis), dict(products or {}), comment)

    def product(self, name: str) -> StructureTensor:
        try:
            return self.products[name]
        except KeyError:
            have = ", ".join(sorted(self.products)) or "none"
            raise MissingSlotError(f"algebra has no product slot {name!r} (has: {have})") from None

    def with_products(self, **products) -> "Algebra":
        merged = dict(self.products)
        merged.update(products)
        return Algebra(self.dim, self.basis, merged, self.comment)

    def only(self, *names: str) -> "Algebra":
        return Algebra(self.dim, self.basis, {n: self.product(n) for n in names}, self.comment)

    def renamed(self, mapping: Mapping[str, str]) -> "Algebra":
        """New algebra whose slot ``new`` holds the old slot ``mapping[new]``."""
        return Algebra(self.dim, self.basis, {new: self.product(old) for new, old in mapping.items()}, self.comment)


def default_labels(dim: int, stem: str = "e") -> tuple:
    return tuple(f"{stem}{i + 1}" for i in range(dim))


@dataclass(frozen=True)
class LinearOperator:
    matrix: Matrix
    comment: str | None = field(default=None, compare=False)

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows

    @classmethod
    def from_images(cls, images, target_dim: int | None = None) -> "LinearOperator":
        """Operator sending ``e_l`` to ``images[l]``."""
        images = [tuple(Fraction(x) for x in v) for v in images]
        rows = target_dim if target_dim is not None else (len(images[0]) if images else 0)
        return cls(Matrix.from_columns(images, rows) if images else Matrix.zeros(rows, 0))

    @classmethod
    def identity(cls, n: int) -> "LinearOperator":
        return cls(Matrix.identity(n))

    @classmethod
    def zero(cls, target_dim: int, source_dim: int | None = None) -> "LinearOperator":
        return cls(Matrix.zeros(target_dim, target_dim if source_dim is None else source_dim))

    def __call__(self, v) -> tuple:
        return self.matrix.apply(v)

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.matrix @ other.matrix)


@dataclass(frozen=True)
class BilinearForm:
    b: Matrix
    comment: str | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return self.b.rows

    def __post_init__(self):
        if self.b.rows != self.b.cols:
            raise ShapeError("bilinear form matrix must be square")

    def __call__(self, x, y) -> Fraction:
        bx = self.b.transpose().apply(x)
        return sum((p * q for p, q in zip(bx, y)), Fraction(0))

    def rank(self) -> int:
        return rank(self.b)


REP_FULL = "full"
REP_RHO_ONLY = "rho_only"
REP_MU_ONLY = "mu_only"


@dataclass(frozen=True)
class Representation:
    """Two families of ``module_dim x module_dim`` matrices indexed by the algebra basis.

    ``rho[i]`` and ``mu[i]`` act on the module for ``e_i``.  A single-map
    representation keeps the unused family as zero matrices and records
    which family is meaningful in ``kind``.
    """

    algebra_dim: int
    module_dim: int
    rho: tuple
    mu: tuple
    kind: str = REP_FULL
    comment: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        object.__setattr__(self, "mu", tuple(self.mu))
        if self.kind not in (REP_FULL, REP_RHO_ONLY, REP_MU_ONLY):
            raise ValueError(f"unknown representation kind {self.kind!r}")
        for fam_name, fam in (("rho", self.rho), ("mu", self.mu)):
            if len(fam) != self.algebra_dim:
                raise ShapeError(f"{fam_name} has {len(fam)} matrices, algebra dim is {self.algebra_dim}")
            for m in fam:
                if m.shape != (self.module_dim, self.module_dim):
                    raise ShapeError(f"{fam_name} matrix of shape {m.shape}, module dim is {self.module_dim}")

    @classmethod
    def zero(cls, algebra_dim: int, module_dim: int) -> "Representation":
        z = Matrix.zeros(module_dim, module_dim)
        return cls(algebra_dim, module_dim, (z,) * algebra_dim, (z,) * algebra_dim)

    @classmethod
    def from_rho(cls, rho) -> "Representation":
        rho = tuple(rho)
        m = rho[0].rows if rho else 0
        return cls(len(rho), m, rho, (Matrix.zeros(m, m),) * len(rho), REP_RHO_ONLY)

    @classmethod
    def from_mu(cls, mu) -> "Representation":
        mu = tuple(mu)
        m = mu[0].rows if mu else 0
        return cls(len(mu), m, (Matrix.zeros(m, m),) * len(mu), mu, REP_MU_ONLY)

    def rho_of(self, x) -> Matrix:
        return _combine(self.rho, x, self.module_dim)

    def mu_of(self, x) -> Matrix:
        return _combine(self.mu, x, self.module_dim)


def _combine(family, x, m: int) -> Matrix:
    if len(x) != len(family):
        raise ShapeError(f"element of length {len(x)} for a family of {len(family)} matrices")
    out = [[Fraction(0)] * m for _ in range(m)]
    for c, mat in zip(x, family):
        if c:
            for r in range(m):
                row = mat[r]
                orow = out[r]
                for s in range(m):
                    if row[s]:
                        orow[s] += c * row[s]
    return Matrix(out, m)


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    identity_name: str
    witness: tuple | None = None
    defect: tuple | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, name: str) -> "CheckReport":
        return cls(True, name)


def dual_representation(a: Algebra | None, r: Representation) -> Representation:
    """The dual module ``(V*; rho*, -mu*)``.

    ``rho*(x) = -rho(x)^T`` and ``-mu*(x) = mu(x)^T``.  Applying it twice
    returns ``r``.
    """
    if a is not None and a.dim != r.algebra_dim:
        raise ShapeError(f"representation of a dim-{r.algebra_dim} algebra paired with dim {a.dim}")
    rho = tuple(-m.transpose() for m in r.rho)
    mu = tuple(m.transpose() for m in r.mu)
    return Representation(r.algebra_dim, r.module_dim, rho, mu, r.kind)


# -- serialization -------------------------------------------------------------

_ALGEBRA_KEYS = {"dim", "basis", "products", "comment"}
_ENTRY_KEYS = {"i", "j", "k", "v"}


def tensor_to_json(t: StructureTensor) -> list:
    return [{"i": i, "j": j, "k": k, "v": format_scalar(v)} for i, j, k, v in t.entries()]


def tensor_from_json(data, dim: int, where: str = "tensor") -> StructureTensor:
    if not isinstance(data, list):
        raise FormatError("expected a list of entries", where)
    seen = set()
    entries = []
    for n, e in enumerate(data):
        at = f"{where}[{n}]"
        if not isinstance(e, dict):
            raise FormatError("entry must be an object", at)
        extra = set(e) - _ENTRY_KEYS
        if extra:
            raise FormatError(f"unknown field(s) {sorted(extra)}", at)
        missing = _ENTRY_KEYS - set(e)
        if missing:
            raise FormatError(f"missing field(s) {sorted(missing)}", at)
        idx = []
        for key in ("i", "j", "k"):
            val = e[key]
            if not isinstance(val, int) or isinstance(val, bool):
                raise FormatError(f"index {key} must be an integer", at)
            if not 0 <= val < dim:
                raise FormatError(f"index {key}={val} out of range for dim {dim}", at)
            idx.append(val)
        try:
            v = parse_scalar(e["v"])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(str(exc), f"{at}.v") from None
        if tuple(idx) in seen:
            raise FormatError(f"duplicate entry {tuple(idx)}", at)
        seen.add(tuple(idx))
        entries.append((*idx, v))
    return StructureTensor.from_entries(dim, entries)


def algebra_to_json(a: Algebra) -> dict:
    out: dict = {}
    if a.comment is not None:
        out["comment"] = a.comment
    out["dim"] = a.dim
    out["basis"] = list(a.basis)
    out["products"] = {name: tensor_to_json(a.products[name]) for name in sorted(a.products)}
    return out


def algebra_from_json(data, where: str = "algebra") -> Algebra:
    if not isinstance(data, dict):
        raise FormatError("expected an object", where)
    extra = set(data) - _ALGEBRA_KEYS
    if extra:
        raise FormatError(f"unknown field(s) {sorted(extra)}", where)
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise FormatError("dim must be a non-negative integer", f"{where}.dim")
    basis = data.get("basis")
    if basis is None:
        basis = list(default_labels(dim))
    if not isinstance(basis, list) or not all(isinstance(s, str) for s in basis):
        raise FormatError("basis must be a list of strings", f"{where}.basis")
    if len(basis) != dim or len(set(basis)) != dim:
        raise FormatError(f"basis must hold {dim} distinct labels", f"{where}.basis")
    products = data.get("products", {})
    if not isinstance(products, dict):
        raise FormatError("products must be an object", f"{where}.products")
    tensors = {name: tensor_from_json(entries, dim, f"{where}.products.{name}") for name, entries in products.items()}
    comment = data.get("comment")
    if comment is not None and not isinstance(comment, str):
        raise FormatError("comment must be a string", f"{where}.comment")
    return Algebra(dim, tuple(basis), tensors, comment)


def dumps(obj) -> str:
    """Canonical text: two-space indent, UTF-8, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _read_json(path) -> object:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


def load_algebra(path) -> Algebra:
    return algebra_from_json(_read_json(path), str(path))


def save_algebra(a: Algebra, path) -> None:
    Path(path).write_text(dumps(algebra_to_json(a)), encoding="utf-8")


def matrix_to_json(m: Matrix) -> list:
    return [[format_scalar(x) for x in row] for row in m]


def matrix_from_json(data, where: str = "matrix", rows: int | None = None, cols: int | None = None) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise FormatError("matrix must be a list of rows", where)
    width = len(data[0]) if data else (cols or 0)
    grid = []
    for r, row in enumerate(data):
        if len(row) != width:
            raise FormatError("ragged matrix", f"{where}[{r}]")
        out = []
        for c, x in enumerate(row):
            try:
                out.append(parse_scalar(x))
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(str(exc), f"{where}[{r}][{c}]") from None
        grid.append(out)
    m = Matrix(grid, width)
    if rows is not None and m.rows != rows or cols is not None and m.cols != cols:
        raise FormatError(f"expected a {rows}x{cols} matrix, got {m.rows}x{m.cols}", where)
    return m


def _unwrap_matrix(data, where: str) -> tuple:
    # bare grid, or {"comment": ..., "matrix": grid}
    if isinstance(data, dict):
        extra = set(data) - {"matrix", "comment"}
        if extra:
            raise FormatError(f"unknown field(s) {sorted(extra)}", where)
        if "matrix" not in data:
            raise FormatError("missing field 'matrix'", where)
        comment = data.get("comment")
        if comment is not None and not isinstance(comment, str):
            raise FormatError("comment must be a string", f"{where}.comment")
        return data["matrix"], comment
    return data, None


def _wrap_matrix(m: Matrix, comment: str | None):
    grid = matrix_to_json(m)
    return grid if comment is None else {"comment": comment, "matrix": grid}


def load_operator(path) -> LinearOperator:
    grid, comment = _unwrap_matrix(_read_json(path), str(path))
    return LinearOperator(matrix_from_json(grid, str(path)), comment)


def save_operator(op: LinearOperator, path) -> None:
    Path(path).write_text(dumps(_wrap_matrix(op.matrix, op.comment)), encoding="utf-8")


def load_form(path) -> BilinearForm:
    grid, comment = _unwrap_matrix(_read_json(path), str(path))
    m = matrix_from_json(grid, str(path))
    if m.rows != m.cols:
        raise FormatError("bilinear form must be square", str(path))
    return BilinearForm(m, comment)


def save_form(f: BilinearForm, path) -> None:
    Path(path).write_text(dumps(_wrap_matrix(f.b, f.comment)), encoding="utf-8")


_REP_KEYS = {"algebra_dim", "module_dim", "rho", "mu", "kind", "comment"}


def representation_to_json(r: Representation) -> dict:
    out: dict = {}
    if r.comment is not None:
        out["comment"] = r.comment
    out.update({"algebra_dim": r.algebra_dim, "module_dim": r.module_dim,
                "rho": [matrix_to_json(m) for m in r.rho], "mu": [matrix_to_json(m) for m in r.mu]})
    if r.kind != REP_FULL:
        out["kind"] = r.kind
    return out


def representation_from_json(data, where: str = "representation") -> Representation:
    if not isinstance(data, dict):
        raise FormatError("expected an object", where)
    extra = set(data) - _REP_KEYS
    if extra:
        raise FormatError(f"unknown field(s) {sorted(extra)}", where)
    for key in ("algebra_dim", "module_dim"):
        if not isinstance(data.get(key), int) or data[key] < 0:
            raise FormatError(f"{key} must be a non-negative integer", f"{where}.{key}")
    n, m = data["algebra_dim"], data["module_dim"]
    fams = {}
    for key in ("rho", "mu"):
        fam = data.get(key)
        if fam is None and data.get("kind") in (REP_RHO_ONLY, REP_MU_ONLY):
            fam = [[["0"] * m for _ in range(m)] for _ in range(n)]
        if not isinstance(fam, list) or len(fam) != n:
            raise FormatError(f"{key} must list {n} matrices", f"{where}.{key}")
        fams[key] = tuple(matrix_from_json(g, f"{where}.{key}[{i}]", m, m) for i, g in enumerate(fam))
    try:
        return Representation(n, m, fams["rho"], fams["mu"], data.get("kind", REP_FULL), data.get("comment"))
    except ValueError as exc:
        raise FormatError(str(exc), where) from None


def load_representation(path) -> Representation:
    return representation_from_json(_read_json(path), str(path))


def save_representation(r: Representation, path) -> None:
    Path(path).write_text(dumps(representation_to_json(r)), encoding="utf-8")
