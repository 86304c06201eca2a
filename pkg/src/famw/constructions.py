"""Structure-producing maps: sub-adjacent algebras, sums and products,
semi-direct products, and structures induced by derivations, O-operators,
average operators and bilinear forms.

Every construction whose conclusion depends on hypotheses checks them first
and raises :class:`PreconditionError` naming the failing identity; pass
``force=True`` to skip the checks.

Pre-F-manifold algebras store the Zinbiel product in ``mul`` and the pre-Lie
product in ``bracket``; dual pre-F-manifold algebras store the permutative
product in ``mul`` and the Leibniz bracket in ``bracket``.
"""
from __future__ import annotations

from typing import Mapping

from .axioms import check_class, check_form, check_operator, check_representation
from .exact import Matrix, ZERO, as_scalar, basis_vector, block_diagonal, solve, vec_add, vec_scale, vec_sub
from .model import (
    Algebra,
    BilinearForm,
    CheckReport,
    LinearOperator,
    PreconditionError,
    Representation,
    ShapeError,
    default_labels,
)
from .tensor import StructureTensor


def _require(report: CheckReport, what: str) -> None:
    if not report.passed:
        where = f" at {report.witness}" if report.witness is not None else ""
        raise PreconditionError(f"{what}: {report.identity_name} fails{where}", report)


def commutator_bracket(a: Algebra, slot: str = "bracket") -> StructureTensor:
    """``[x, y] = x*y - y*x``."""
    t = a.product(slot)
    return t - t.opposite()


def symmetrized_product(a: Algebra, slot: str = "mul") -> StructureTensor:
    """``x.y = x<>y + y<>x``."""
    t = a.product(slot)
    return t + t.opposite()


def sub_adjacent_f_manifold(a: Algebra, slots: Mapping[str, str] | None = None, force: bool = False) -> Algebra:
    slots = dict(slots or {})
    diamond, star = slots.get("mul", "mul"), slots.get("bracket", "bracket")
    if not force:
        _require(check_class(a, "pre-f-manifold", {"mul": diamond, "bracket": star}), "not a pre-F-manifold algebra")
    return Algebra(a.dim, a.basis, {"mul": symmetrized_product(a, diamond),
                                    "bracket": commutator_bracket(a, star)})


def _joint_labels(a: Algebra, b: Algebra) -> tuple:
    labels = a.basis + b.basis
    return labels if len(set(labels)) == len(labels) else default_labels(len(labels))


def direct_sum(a: Algebra, b: Algebra, slots=("mul", "bracket")) -> Algebra:
    n = a.dim
    products = {}
    for name in slots:
        s, t = a.product(name), b.product(name)
        rows = {(i, j): s(i, j) + (ZERO,) * b.dim for i, j in s.nonzero_pairs()}
        rows.update({(n + i, n + j): (ZERO,) * n + t(i, j) for i, j in t.nonzero_pairs()})
        products[name] = StructureTensor(n + b.dim, rows)
    return Algebra(n + b.dim, _joint_labels(a, b), products)


def _kron(u, v) -> tuple:
    return tuple(x * y for x in u for y in v)


def tensor_product(a: Algebra, b: Algebra) -> Algebra:
    """Basis ``e_i (x) f_j`` sits at index ``i * dim(b) + j``."""
    ma, mb = a.product("mul"), b.product("mul")
    ba, bb = a.product("bracket"), b.product("bracket")
    p, q = a.dim, b.dim
    n = p * q

    def mul(u, v):
        i, j = divmod(u, q)
        k, l = divmod(v, q)
        return _kron(ma(i, k), mb(j, l))

    def bracket(u, v):
        i, j = divmod(u, q)
        k, l = divmod(v, q)
        return vec_add(_kron(ba(i, k), mb(j, l)), _kron(ma(i, k), bb(j, l)))

    labels = tuple(f"{x}⊗{y}" for x in a.basis for y in b.basis)
    return Algebra(n, labels, {"mul": StructureTensor.from_function(n, mul),
                               "bracket": StructureTensor.from_function(n, bracket)})


def regular_representation(a: Algebra, slots: Mapping[str, str] | None = None) -> Representation:
    """``(A; ad, L)``: ``rho(e_i) = ad_{e_i}``, ``mu(e_i)`` is left multiplication."""
    slots = dict(slots or {})
    m, b = a.product(slots.get("mul", "mul")), a.product(slots.get("bracket", "bracket"))
    n = a.dim
    rho = [Matrix.from_columns([b(i, j) for j in range(n)], n) if n else Matrix.zeros(0, 0) for i in range(n)]
    mu = [Matrix.from_columns([m(i, j) for j in range(n)], n) if n else Matrix.zeros(0, 0) for i in range(n)]
    return Representation(n, n, rho, mu)


def pre_f_regular_representation(a: Algebra) -> Representation:
    """Left multiplications ``(L_*, L_<>)`` of a pre-F-manifold algebra, a
    representation of its sub-adjacent F-manifold algebra."""
    return regular_representation(a)


def prelie_regular_representation(a: Algebra, slot: str = "bracket") -> Representation:
    """``(L, R)`` for a pre-Lie product: ``rho(x)y = x*y`` and ``mu(y)x = x*y``."""
    t = a.product(slot)
    n = a.dim
    rho = [Matrix.from_columns([t(i, j) for j in range(n)], n) for i in range(n)]
    mu = [Matrix.from_columns([t(i, j) for i in range(n)], n) for j in range(n)]
    return Representation(n, n, rho, mu)


def prelie_coregular_representation(a: Algebra, slot: str = "bracket") -> Representation:
    """Dual of the regular pre-Lie module: ``rho = -L^T + R^T``, ``mu = R^T``."""
    reg = prelie_regular_representation(a, slot)
    rho = [r.transpose() - l.transpose() for l, r in zip(reg.rho, reg.mu)]
    mu = [r.transpose() for r in reg.mu]
    return Representation(a.dim, a.dim, rho, mu)


def representation_direct_sum(r1: Representation, r2: Representation) -> Representation:
    if r1.algebra_dim != r2.algebra_dim:
        raise ShapeError("representations of different algebras")
    rho = [block_diagonal([x, y]) for x, y in zip(r1.rho, r2.rho)]
    mu = [block_diagonal([x, y]) for x, y in zip(r1.mu, r2.mu)]
    return Representation(r1.algebra_dim, r1.module_dim + r2.module_dim, rho, mu)


def semidirect_product(a: Algebra, r: Representation, force: bool = False) -> Algebra:
    """``A + V`` with ``(x1+v1).(x2+v2) = x1.x2 + mu(x1)v2 + mu(x2)v1`` and
    ``[x1+v1, x2+v2] = [x1,x2] + rho(x1)v2 - rho(x2)v1``."""
    if not force:
        _require(check_representation(a, r), "not a representation")
    n, m = a.dim, r.module_dim
    ma, ba = a.product("mul"), a.product("bracket")
    size = n + m
    zero_v = (ZERO,) * m

    def table(base, family, sign):
        def f(u, v):
            if u < n and v < n:
                return base(u, v) + zero_v
            out = [ZERO] * size
            if u < n:
                col = family[u].column(v - n)
                out[n:] = col
            elif v < n:
                col = family[v].column(u - n)
                out[n:] = [sign * c for c in col]
            return tuple(out)
        return StructureTensor.from_function(size, f)

    labels = a.basis + tuple(f"v{i + 1}" for i in range(m))
    if len(set(labels)) != size:
        labels = default_labels(size)
    return Algebra(size, labels, {"mul": table(ma, r.mu, 1), "bracket": table(ba, r.rho, -1)})


def derivation_induced(a: Algebra, D: LinearOperator, weight=0, force: bool = False) -> Algebra:
    """Add ``star``: ``x*y = x.D(y) + w.(x.y)`` and ``bracket = x.D(y) - y.D(x)``.

    ``weight`` is a rational (scaling ``x.y``) or a coordinate vector ``w``
    multiplied in with ``mul``.
    """
    m = a.product("mul")
    n = a.dim
    if not force:
        _require(check_class(a, "commutative-associative"), "mul is not commutative associative")
        _require(check_operator(a, D, "derivation", slots={"mul": "mul"}), "not a derivation")
    elif D.matrix.shape != (n, n):
        raise ShapeError(f"derivation must be {n}x{n}")
    dcols = [D.matrix.column(j) for j in range(n)]
    if isinstance(weight, (tuple, list)):
        w = tuple(as_scalar(x) for x in weight)
        if len(w) != n:
            raise ShapeError(f"weight element has length {len(w)}, algebra has dim {n}")

        def weighted(i, j):
            return m.product(w, m(i, j))
    else:
        c = as_scalar(weight)

        def weighted(i, j):
            return vec_scale(c, m(i, j))

    def xdy(i, j):
        return m.product(basis_vector(n, i), dcols[j])

    star = StructureTensor.from_function(n, lambda i, j: vec_add(xdy(i, j), weighted(i, j)))
    bracket = StructureTensor.from_function(n, lambda i, j: vec_sub(xdy(i, j), xdy(j, i)))
    return Algebra(n, a.basis, {"mul": m, "star": star, "bracket": bracket})


def o_operator_induced_pre_f(a: Algebra, r: Representation, T: LinearOperator, force: bool = False) -> Algebra:
    """Pre-F-manifold structure on the module: ``u<>v = mu(Tu)v``, ``u*v = rho(Tu)v``."""
    if not force:
        _require(check_class(a, "f-manifold"), "not an F-manifold algebra")
        _require(check_representation(a, r), "not a representation")
        _require(check_operator(a, T, "o_operator", r, slots={"mul": "mul", "bracket": "bracket"}),
                 "not an O-operator")
    m = r.module_dim
    if T.matrix.shape != (a.dim, m):
        raise ShapeError(f"O-operator must be {a.dim}x{m}")
    mus = [r.mu_of(T.matrix.column(u)) for u in range(m)]
    rhos = [r.rho_of(T.matrix.column(u)) for u in range(m)]
    diamond = StructureTensor.from_function(m, lambda u, v: mus[u].column(v))
    star = StructureTensor.from_function(m, lambda u, v: rhos[u].column(v))
    labels = a.basis if m == a.dim else default_labels(m)
    return Algebra(m, labels, {"mul": diamond, "bracket": star})


def rota_baxter_induced_pre_f(a: Algebra, B: LinearOperator, force: bool = False) -> Algebra:
    """``x<>y = B(x).y`` and ``x*y = [B(x), y]``: the O-operator case of the regular representation."""
    if not force:
        _require(check_class(a, "f-manifold"), "not an F-manifold algebra")
        _require(check_operator(a, B, "rota_baxter", slots={"mul": "mul", "bracket": "bracket"}),
                 "not a Rota-Baxter operator")
    return o_operator_induced_pre_f(a, regular_representation(a), B, force=True)


def average_induced_dual_pre_f(a: Algebra, alpha: LinearOperator, force: bool = False) -> Algebra:
    """``x.y -> alpha(x).y`` and ``{x, y} = [alpha(x), y]``."""
    if not force:
        _require(check_class(a, "f-manifold"), "not an F-manifold algebra")
        _require(check_operator(a, alpha, "average", slots={"mul": "mul", "bracket": "bracket"}),
                 "not an average operator")
    n = a.dim
    if alpha.matrix.shape != (n, n):
        raise ShapeError(f"average operator must be {n}x{n}")
    m, b = a.product("mul"), a.product("bracket")
    cols = [alpha.matrix.column(i) for i in range(n)]
    dot = StructureTensor.from_function(n, lambda i, j: m.product(cols[i], basis_vector(n, j)))
    br = StructureTensor.from_function(n, lambda i, j: b.product(cols[i], basis_vector(n, j)))
    return Algebra(n, a.basis, {"mul": dot, "bracket": br})


def form_induced_pre_f(a: Algebra, omega: BilinearForm, force: bool = False) -> Algebra:
    """Pre-F-manifold structure determined by ``w(x<>y, z) = w(y, x.z)`` and
    ``w(x*y, z) = w(y, [z, x])``, solved exactly for each basis pair."""
    n = a.dim
    if omega.dim != n:
        raise ShapeError(f"form of size {omega.dim} on a dim-{n} algebra")
    if not force:
        _require(check_class(a, "coherence-f-manifold"), "not a coherence F-manifold algebra")
        for kind in ("nondegenerate", "connes_cyclic", "symplectic"):
            _require(check_form(a, omega, kind), f"form is not {kind.replace('_', ' ')}")
    m, b = a.product("mul"), a.product("bracket")
    g = omega.b
    gt = g.transpose()

    def w_row(y, vecs):
        # w(y, v) for each v
        return [sum((y[p] * g[p, q] * v[q] for p in range(n) if y[p] for q in range(n) if v[q]), ZERO)
                for v in vecs]

    def solved(rhs):
        # w(u, e_k) = rhs_k  <=>  g^T u = rhs
        sol = solve(gt, rhs)
        if not sol.solvable or sol.kernel_basis:
            raise PreconditionError("form is degenerate", CheckReport(False, "nondegeneracy"))
        return sol.particular

    e = [basis_vector(n, i) for i in range(n)]
    diamond = StructureTensor.from_function(n, lambda i, j: solved(w_row(e[j], [m(i, k) for k in range(n)])))
    star = StructureTensor.from_function(n, lambda i, j: solved(w_row(e[j], [b(k, i) for k in range(n)])))
    return Algebra(n, a.basis, {"mul": diamond, "bracket": star})


__all__ = [
    "commutator_bracket", "symmetrized_product", "sub_adjacent_f_manifold", "direct_sum", "tensor_product",
    "semidirect_product", "derivation_induced", "o_operator_induced_pre_f", "rota_baxter_induced_pre_f",
    "average_induced_dual_pre_f", "form_induced_pre_f", "regular_representation", "pre_f_regular_representation",
    "prelie_regular_representation", "prelie_coregular_representation", "representation_direct_sum",
]
