"""Decision procedures for algebra classes, operators, forms and representations.

Every defining condition is a multilinear identity, so it holds everywhere iff
it holds on all tuples of basis vectors.  Checks scan basis tuples in
lexicographic order and report the first failing tuple together with the
(nonzero) defect.  Composite classes scan their sub-identities in a fixed
order and name the one that failed.

Product slots are addressed through *roles*: ``"mul"`` for the
associative/Zinbiel/permutative-type operation and ``"bracket"`` for the
Lie/pre-Lie/Leibniz-type one.  ``slots`` maps a role to the name of a product
in the algebra; by default each role reads the product of the same name.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exact import (
    Matrix,
    ZERO,
    basis_vector,
    commutator,
    nullspace,
    vec_add,
    vec_neg,
    vec_sub,
)
from .model import (
    Algebra,
    BilinearForm,
    CheckReport,
    FamwError,
    LinearOperator,
    MissingSlotError,
    Representation,
    ShapeError,
)
from .tensor import StructureTensor


class UnknownClassError(FamwError, ValueError):
    pass


def _sum(*vs):
    acc = list(vs[0])
    for v in vs[1:]:
        for k, x in enumerate(v):
            if x:
                acc[k] = acc[k] + x if acc[k] else x
    return tuple(acc)


class Ops:
    """Products bound to roles, plus the derived operations the identities use."""

    def __init__(self, tensors: Mapping[str, StructureTensor]):
        self.tensors = dict(tensors)
        self.dim = next(iter(self.tensors.values())).dim if self.tensors else 0
        self._basis = [basis_vector(self.dim, i) for i in range(self.dim)]
        self._zero = (ZERO,) * self.dim
        self._tables: dict = {}

    def m(self, u, v):
        return self.tensors["mul"].product(u, v)

    def b(self, u, v):
        return self.tensors["bracket"].product(u, v)

    def sym(self, u, v):
        """``u.v = u<>v + v<>u`` for a Zinbiel-type ``mul``."""
        return vec_add(self.m(u, v), self.m(v, u))

    def comm(self, u, v):
        """``[u, v] = u*v - v*u`` for a pre-Lie-type ``bracket``."""
        return vec_sub(self.b(u, v), self.b(v, u))

    def assoc_b(self, x, y, z):
        b = self.b
        return vec_sub(b(b(x, y), z), b(x, b(y, z)))

    # The ternary functionals below are trilinear, so each is tabulated on basis
    # triples once and expanded over the supports of its arguments.
    def _tri(self, name, fn, x, y, z):
        table = self._tables.setdefault(name, {})
        sx, sy, sz = _terms(x), _terms(y), _terms(z)
        acc = None
        for i, a in sx:
            for j, b in sy:
                ab = a * b
                for k, c in sz:
                    key = (i, j, k)
                    val = table.get(key)
                    if val is None:
                        e = self._basis
                        val = table[key] = _terms(fn(e[i], e[j], e[k]))
                    if not val:
                        continue
                    if acc is None:
                        acc = [ZERO] * self.dim
                    w = ab * c
                    for p, v in val:
                        acc[p] += v if w == 1 else w * v
        return tuple(acc) if acc is not None else self._zero

    # Hertling-Manin defect of the Leibniz rule.
    def P(self, x, y, z):
        return self._tri("P", self._P, x, y, z)

    def _P(self, x, y, z):
        m, b = self.m, self.b
        return _sum(b(x, m(y, z)), vec_neg(m(b(x, y), z)), vec_neg(m(y, b(x, z))))

    def Q(self, x, y, z):
        return self._tri("Q", self._Q, x, y, z)

    def _Q(self, x, y, z):
        m, b = self.m, self.b
        return _sum(b(m(x, y), z), b(m(y, z), x), b(m(z, x), y))

    # pre-F-manifold functionals: mul is <>, bracket is *.
    def F1(self, x, y, z):
        return self._tri("F1", self._F1, x, y, z)

    def _F1(self, x, y, z):
        d, s = self.m, self.b
        return _sum(s(x, d(y, z)), vec_neg(d(y, s(x, z))), vec_neg(d(self.comm(x, y), z)))

    def F2(self, x, y, z):
        return self._tri("F2", self._F2, x, y, z)

    def _F2(self, x, y, z):
        d, s = self.m, self.b
        return _sum(d(x, s(y, z)), d(y, s(x, z)), vec_neg(s(self.sym(x, y), z)))

    # dual pre-F-manifold functionals: mul is the permutative product, bracket is Leibniz.
    def G1(self, x, y, z):
        return self._tri("G1", self._G1, x, y, z)

    def _G1(self, x, y, z):
        p, l = self.m, self.b
        return _sum(l(x, p(y, z)), vec_neg(p(l(x, y), z)), vec_neg(p(y, l(x, z))))

    def G2(self, x, y, z):
        return self._tri("G2", self._G2, x, y, z)

    def _G2(self, x, y, z):
        p, l = self.m, self.b
        return _sum(l(p(y, z), x), vec_neg(p(z, l(y, x))), vec_neg(p(y, l(z, x))))


def _terms(v):
    return [(i, x) for i, x in enumerate(v) if x]


@dataclass(frozen=True)
class IdentityCatalogEntry:
    name: str
    arity: int
    required_products: tuple
    evaluator: Callable


def _hertling_manin(o, x, y, z, w):
    m = o.m
    return _sum(o.P(m(x, y), z, w), vec_neg(m(x, o.P(y, z, w))), vec_neg(m(y, o.P(x, z, w))))


def _fman_admissible(o, x, y, z):
    m, s = o.m, o.b
    left = _sum(s(x, m(y, z)), vec_neg(m(s(x, y), z)), vec_neg(m(y, s(x, z))))
    right = _sum(s(y, m(x, z)), vec_neg(m(s(y, x), z)), vec_neg(m(x, s(y, z))))
    return vec_sub(left, right)


def _prelie_com(o, x, y, z):
    m, s = o.m, o.b
    return _sum(s(x, m(y, z)), vec_neg(m(s(x, y), z)), vec_neg(m(y, s(x, z))))


def _pre_f1(o, x, y, z, w):
    d = o.m
    return _sum(o.F1(o.sym(x, y), z, w), vec_neg(d(x, o.F1(y, z, w))), vec_neg(d(y, o.F1(x, z, w))))


def _pre_f2(o, x, y, z, w):
    d = o.m
    lhs = d(_sum(o.F1(x, y, z), o.F1(x, z, y), o.F2(y, z, x)), w)
    rhs = vec_sub(o.F2(y, z, d(x, w)), d(x, o.F2(y, z, w)))
    return vec_sub(lhs, rhs)


def _dual1(o, x, y, z, w):
    p = o.m
    return _sum(o.G1(p(x, y), z, w), vec_neg(p(x, o.G1(y, z, w))), vec_neg(p(y, o.G1(x, z, w))))


def _dual2(o, x, y, z, w):
    p = o.m
    return _sum(o.G2(p(y, x), z, w), vec_neg(p(y, o.G2(x, z, w))), p(o.G1(y, z, w), x))


def _dual3(o, x, y, z):
    p, l = o.m, o.b
    return vec_add(p(l(x, y), z), p(l(y, x), z))


def _coh1(o, x, y, z, w):
    m = o.m
    return _sum(o.P(m(x, y), z, w), vec_neg(o.P(y, z, m(x, w))), vec_neg(o.P(x, z, m(y, w))))


def _coh2(o, x, y, z, w):
    m = o.m
    return _sum(m(o.P(x, y, z), w), vec_neg(m(x, o.Q(y, z, w))), o.Q(y, z, m(x, w)))


def _entry(name, arity, roles, fn):
    return name, IdentityCatalogEntry(name, arity, tuple(roles), fn)


M, B, MB = ("mul",), ("bracket",), ("mul", "bracket")

IDENTITIES: dict = dict([
    _entry("commutativity", 2, M, lambda o, x, y: vec_sub(o.m(x, y), o.m(y, x))),
    _entry("associativity", 3, M, lambda o, x, y, z: vec_sub(o.m(o.m(x, y), z), o.m(x, o.m(y, z)))),
    _entry("antisymmetry", 2, B, lambda o, x, y: vec_add(o.b(x, y), o.b(y, x))),
    _entry("jacobi", 3, B, lambda o, x, y, z: _sum(o.b(x, o.b(y, z)), o.b(y, o.b(z, x)), o.b(z, o.b(x, y)))),
    _entry("pre-lie", 3, B, lambda o, x, y, z: vec_sub(o.assoc_b(x, y, z), o.assoc_b(y, x, z))),
    _entry("lie-admissibility", 3, B, lambda o, x, y, z: _sum(
        o.assoc_b(x, y, z), vec_neg(o.assoc_b(y, x, z)), o.assoc_b(y, z, x),
        vec_neg(o.assoc_b(z, y, x)), o.assoc_b(z, x, y), vec_neg(o.assoc_b(x, z, y)))),
    _entry("zinbiel", 3, M, lambda o, x, y, z: _sum(
        o.m(x, o.m(y, z)), vec_neg(o.m(o.m(y, x), z)), vec_neg(o.m(o.m(x, y), z)))),
    _entry("permutative-associativity", 3, M, lambda o, x, y, z: vec_sub(o.m(x, o.m(y, z)), o.m(o.m(x, y), z))),
    _entry("left-commutativity", 3, M, lambda o, x, y, z: vec_sub(o.m(o.m(x, y), z), o.m(o.m(y, x), z))),
    _entry("leibniz-identity", 3, B, lambda o, x, y, z: _sum(
        o.b(x, o.b(y, z)), vec_neg(o.b(o.b(x, y), z)), vec_neg(o.b(y, o.b(x, z))))),
    _entry("leibniz-rule", 3, MB, lambda o, x, y, z: o.P(x, y, z)),
    _entry("hertling-manin", 4, MB, _hertling_manin),
    _entry("f-manifold-admissibility", 3, MB, _fman_admissible),
    _entry("prelie-com-compatibility", 3, MB, _prelie_com),
    _entry("pre-f-manifold-1", 4, MB, _pre_f1),
    _entry("pre-f-manifold-2", 4, MB, _pre_f2),
    _entry("dual-pre-f-manifold-1", 4, MB, _dual1),
    _entry("dual-pre-f-manifold-2", 4, MB, _dual2),
    _entry("dual-pre-f-manifold-3", 3, MB, _dual3),
    _entry("coherence-1", 4, MB, _coh1),
    _entry("coherence-2", 4, MB, _coh2),
])

_COMM_ASSOC = ["commutativity", "associativity"]
_LIE = ["antisymmetry", "jacobi"]

CLASSES: dict = {
    "commutative": ["commutativity"],
    "associative": ["associativity"],
    "commutative-associative": _COMM_ASSOC,
    "lie": _LIE,
    "pre-lie": ["pre-lie"],
    "lie-admissible": ["lie-admissibility"],
    "zinbiel": ["zinbiel"],
    "permutative": ["permutative-associativity", "left-commutativity"],
    "leibniz": ["leibniz-identity"],
    "poisson": _COMM_ASSOC + _LIE + ["leibniz-rule"],
    "f-manifold": _COMM_ASSOC + _LIE + ["hertling-manin"],
    "f-manifold-admissible": _COMM_ASSOC + ["lie-admissibility", "f-manifold-admissibility"],
    "prelie-com": _COMM_ASSOC + ["pre-lie", "prelie-com-compatibility"],
    "pre-f-manifold": ["zinbiel", "pre-lie", "pre-f-manifold-1", "pre-f-manifold-2"],
    "dual-pre-f-manifold": ["permutative-associativity", "left-commutativity", "leibniz-identity",
                            "dual-pre-f-manifold-1", "dual-pre-f-manifold-2", "dual-pre-f-manifold-3"],
    "coherence-f-manifold": _COMM_ASSOC + _LIE + ["hertling-manin", "coherence-1", "coherence-2"],
}


def normalize_class(name: str) -> str:
    key = name.strip().lower().replace("_", "-").replace(" ", "-")
    key = {"prelie": "pre-lie", "comm-assoc": "commutative-associative", "coherence": "coherence-f-manifold",
           "pre-f": "pre-f-manifold", "dual-pre-f": "dual-pre-f-manifold", "prelie-commutative": "prelie-com",
           "fmanifold": "f-manifold"}.get(key, key)
    if key not in CLASSES:
        raise UnknownClassError(f"unknown algebra class {name!r}; known: {', '.join(sorted(CLASSES))}")
    return key


def class_roles(class_name: str) -> tuple:
    roles: list = []
    for ident in CLASSES[normalize_class(class_name)]:
        for r in IDENTITIES[ident].required_products:
            if r not in roles:
                roles.append(r)
    return tuple(roles)


def bind(a: Algebra, roles: Sequence[str], slots: Mapping[str, str] | None = None) -> Ops:
    """Resolve roles to tensors.

    With a single role and no explicit slot, an algebra carrying exactly one
    product uses it regardless of its name.
    """
    slots = dict(slots or {})
    for r in slots:
        if r not in roles:
            raise MissingSlotError(f"role {r!r} is not used here (roles: {', '.join(roles)})")
    tensors = {}
    for role in roles:
        name = slots.get(role, role)
        if name not in a.products and role not in slots and len(roles) == 1 and len(a.products) == 1:
            name = next(iter(a.products))
        tensors[role] = a.product(name)
    return Ops(tensors)


def _basis(n: int) -> list:
    return [basis_vector(n, i) for i in range(n)]


def _flat(m: Matrix) -> tuple:
    return tuple(x for row in m for x in row)


def scan(name: str, arity: int, dim: int, defect: Callable) -> CheckReport:
    """Evaluate ``defect`` on all basis index tuples; first nonzero result fails."""
    for idx in itertools.product(range(dim), repeat=arity):
        d = defect(*idx)
        if any(d):
            return CheckReport(False, name, tuple(idx), tuple(d))
    return CheckReport.ok(name)


def _first_failure(reports) -> CheckReport:
    last = None
    for rep in reports:
        if not rep.passed:
            return rep
        last = rep
    return last if last is not None else CheckReport.ok("none")


def check_identity(a: Algebra, identity: str, slots: Mapping[str, str] | None = None) -> CheckReport:
    entry = IDENTITIES[identity]
    o = bind(a, entry.required_products, slots)
    e = _basis(a.dim)
    return scan(identity, entry.arity, a.dim, lambda *idx: entry.evaluator(o, *(e[i] for i in idx)))


def evaluate_identity(a: Algebra, identity: str, args: Sequence, slots: Mapping[str, str] | None = None) -> tuple:
    """Defect of one identity at given arguments (basis indices or coordinate vectors)."""
    entry = IDENTITIES[identity]
    if len(args) != entry.arity:
        raise ValueError(f"{identity} takes {entry.arity} arguments")
    o = bind(a, entry.required_products, slots)
    vecs = [basis_vector(a.dim, x) if isinstance(x, int) else tuple(Fraction(c) for c in x) for x in args]
    return entry.evaluator(o, *vecs)


def check_class(a: Algebra, class_name: str, slots: Mapping[str, str] | None = None) -> CheckReport:
    """Verdict for ``a`` being in the named class; the failing sub-identity is named."""
    key = normalize_class(class_name)
    roles = class_roles(key)
    o = bind(a, roles, slots)
    e = _basis(a.dim)

    def run():
        for ident in CLASSES[key]:
            entry = IDENTITIES[ident]
            yield scan(ident, entry.arity, a.dim, lambda *idx: entry.evaluator(o, *(e[i] for i in idx)))

    rep = _first_failure(run())
    return rep if not rep.passed else CheckReport.ok(key)


_FUNCTIONALS = {"P": "P", "Q": "Q", "F1": "F1", "F2": "F2", "G1": "G1", "G2": "G2"}


def structure_functionals(a: Algebra, which: str, x, y, z, slots: Mapping[str, str] | None = None) -> tuple:
    """P, Q (F-manifold), F1, F2 (pre-F: mul is <>, bracket is *), G1, G2 (dual pre-F)."""
    if which not in _FUNCTIONALS:
        raise ValueError(f"unknown functional {which!r}")
    o = bind(a, MB, slots)
    return getattr(o, which)(x, y, z)


# -- representations -------------------------------------------------------------

def _rep_shapes(a: Algebra, r: Representation) -> None:
    if r.algebra_dim != a.dim:
        raise ShapeError(f"representation is for a dim-{r.algebra_dim} algebra, got dim {a.dim}")


class _RepOps:
    def __init__(self, o: Ops, r: Representation):
        self.o = o
        self.r = r

    def R(self, x, y):
        rho, mu = self.r.rho_of, self.r.mu_of
        return rho(x) @ mu(y) - mu(y) @ rho(x) - mu(self.o.b(x, y))

    def S(self, x, y):
        rho, mu = self.r.rho_of, self.r.mu_of
        return mu(x) @ rho(y) + mu(y) @ rho(x) - rho(self.o.m(x, y))

    def T(self, x, y):
        rho, mu = self.r.rho_of, self.r.mu_of
        return rho(y) @ mu(x) + rho(x) @ mu(y) - rho(self.o.m(x, y))


def check_rep_functionals(a: Algebra, r: Representation, which: str, x, y,
                          slots: Mapping[str, str] | None = None) -> Matrix:
    """R, S or T of a representation, evaluated at ``(x, y)`` as a matrix."""
    _rep_shapes(a, r)
    if which not in ("R", "S", "T"):
        raise ValueError(f"unknown representation functional {which!r}")
    return getattr(_RepOps(bind(a, MB, slots), r), which)(x, y)


def _rep_scan(a, r, slots, conditions) -> CheckReport:
    _rep_shapes(a, r)
    o = bind(a, MB, slots)
    ro = _RepOps(o, r)
    e = _basis(a.dim)

    def run():
        for name, arity, fn in conditions:
            yield scan(name, arity, a.dim, lambda *idx: _flat(fn(o, ro, *(e[i] for i in idx))))

    return _first_failure(run())


def _lie_rep(o, ro, x, y):
    rho = ro.r.rho_of
    return rho(o.b(x, y)) - commutator(rho(x), rho(y))


def _comm_rep(o, ro, x, y):
    mu = ro.r.mu_of
    return mu(o.m(x, y)) - mu(x) @ mu(y)


def _rep1(o, ro, x, y, z):
    mu = ro.r.mu_of
    return ro.R(o.m(x, y), z) - mu(x) @ ro.R(y, z) - mu(y) @ ro.R(x, z)


def _rep2(o, ro, x, y, z):
    mu = ro.r.mu_of
    s = ro.S(y, z)
    return mu(o.P(x, y, z)) - (s @ mu(x) - mu(x) @ s)


def _corep1(o, ro, x, y, z):
    mu = ro.r.mu_of
    return ro.R(o.m(x, y), z) - ro.R(y, z) @ mu(x) - ro.R(x, z) @ mu(y)


def _corep2(o, ro, x, y, z):
    mu = ro.r.mu_of
    t = ro.T(y, z)
    return mu(o.P(x, y, z)) - (t @ mu(x) - mu(x) @ t)


def check_representation(a: Algebra, r: Representation, slots: Mapping[str, str] | None = None) -> CheckReport:
    """Representation of an F-manifold algebra: Lie and commutative module axioms plus both compatibilities."""
    rep = _rep_scan(a, r, slots, [
        ("lie-representation", 2, _lie_rep),
        ("commutative-representation", 2, _comm_rep),
        ("representation-1", 3, _rep1),
        ("representation-2", 3, _rep2),
    ])
    return rep if not rep.passed else CheckReport.ok("representation")


def check_dual_rep_condition(a: Algebra, r: Representation, slots: Mapping[str, str] | None = None) -> CheckReport:
    """The two conditions under which the dual module is again a representation."""
    rep = _rep_scan(a, r, slots, [("dual-condition-1", 3, _corep1), ("dual-condition-2", 3, _corep2)])
    return rep if not rep.passed else CheckReport.ok("dual-condition")


def check_prelie_representation(a: Algebra, r: Representation, slot: str = "bracket") -> CheckReport:
    """``(rho, mu)`` is a representation of the pre-Lie product in ``slot``."""
    _rep_shapes(a, r)
    t = a.product(slot)
    rho, mu = r.rho_of, r.mu_of

    def lie(i, j):
        br = vec_sub(t(i, j), t(j, i))
        return _flat(rho(br) - commutator(r.rho[i], r.rho[j]))

    def compat(i, j):
        return _flat(r.rho[i] @ r.mu[j] - r.mu[j] @ r.rho[i] - mu(t(i, j)) + r.mu[j] @ r.mu[i])

    rep = _first_failure(iter([scan("prelie-lie-representation", 2, a.dim, lie),
                               scan("prelie-representation", 2, a.dim, compat)]))
    return rep if not rep.passed else CheckReport.ok("prelie-representation")


# -- operators -------------------------------------------------------------------

OPERATOR_KINDS = ("derivation", "rota_baxter", "o_operator", "average")


def _operator_roles(a: Algebra, kind: str, slots: Mapping[str, str] | None) -> dict:
    if slots:
        return dict(slots)
    wanted = ("mul",) if kind == "derivation" else ("mul", "bracket")
    present = {r: r for r in wanted if r in a.products}
    if not present:
        raise MissingSlotError(f"algebra has none of the product slots {wanted} needed for {kind}")
    return present


def check_operator(a: Algebra, op: LinearOperator, kind: str, r: Representation | None = None,
                   slots: Mapping[str, str] | None = None) -> CheckReport:
    """Derivation, weight-zero Rota-Baxter, O-operator (needs ``r``) or average operator.

    ``slots`` maps roles to product names; every listed role is checked.  By
    default derivations use ``mul`` and the other kinds use whichever of
    ``mul``/``bracket`` the algebra carries.  For O-operators the ``mul`` role
    pairs with ``r.mu`` and the ``bracket`` role with ``r.rho``.
    """
    kind = kind.replace("-", "_")
    if kind not in OPERATOR_KINDS:
        raise ValueError(f"unknown operator kind {kind!r}; known: {', '.join(OPERATOR_KINDS)}")
    roles = _operator_roles(a, kind, slots)
    n = a.dim
    if kind == "o_operator":
        if r is None:
            raise ValueError("an O-operator check needs a representation")
        _rep_shapes(a, r)
        if op.matrix.shape != (n, r.module_dim):
            raise ShapeError(f"O-operator must be {n}x{r.module_dim}, got {op.matrix.shape}")
    elif op.matrix.shape != (n, n):
        raise ShapeError(f"operator must be {n}x{n}, got {op.matrix.shape}")

    T = op
    reports = []
    for role, name in roles.items():
        t = a.product(name)
        label = f"{kind}[{name}]"
        if kind == "derivation":
            cols = [T.matrix.column(i) for i in range(n)]

            def fn(i, j, t=t, cols=cols):
                lhs = T(t(i, j))
                rhs = vec_add(t.product(cols[i], basis_vector(n, j)), t.product(basis_vector(n, i), cols[j]))
                return vec_sub(lhs, rhs)
            reports.append(scan(label, 2, n, fn))
        elif kind == "rota_baxter":
            cols = [T.matrix.column(i) for i in range(n)]

            def fn(i, j, t=t, cols=cols):
                inner = vec_add(t.product(cols[i], basis_vector(n, j)), t.product(basis_vector(n, i), cols[j]))
                return vec_sub(t.product(cols[i], cols[j]), T(inner))
            reports.append(scan(label, 2, n, fn))
        elif kind == "average":
            cols = [T.matrix.column(i) for i in range(n)]

            def fn(i, j, t=t, cols=cols):
                return vec_sub(t.product(cols[i], cols[j]), T(t.product(cols[i], basis_vector(n, j))))
            reports.append(scan(label, 2, n, fn))
        else:
            m = r.module_dim
            cols = [T.matrix.column(u) for u in range(m)]
            if role == "mul":
                act, sign = r.mu_of, 1
            elif role == "bracket":
                act, sign = r.rho_of, -1
            else:
                raise MissingSlotError(f"O-operator roles are 'mul' and 'bracket', got {role!r}")

            def fn(u, v, t=t, cols=cols, act=act, sign=sign):
                inner = act(cols[u]).column(v)
                other = act(cols[v]).column(u)
                inner = vec_add(inner, other) if sign > 0 else vec_sub(inner, other)
                return vec_sub(t.product(cols[u], cols[v]), T(inner))
            reports.append(scan(label, 2, m, fn))
    rep = _first_failure(iter(reports))
    return rep if not rep.passed else CheckReport.ok(kind)


def check_homomorphism(src: Algebra, dst: Algebra, f: LinearOperator,
                       slots: Sequence[str] = ("mul", "bracket")) -> CheckReport:
    if f.matrix.shape != (dst.dim, src.dim):
        raise ShapeError(f"map must be {dst.dim}x{src.dim}, got {f.matrix.shape}")
    cols = [f.matrix.column(i) for i in range(src.dim)]
    reports = []
    for name in slots:
        s, t = src.product(name), dst.product(name)
        reports.append(scan(f"homomorphism[{name}]", 2, src.dim,
                            lambda i, j, s=s, t=t: vec_sub(f(s(i, j)), t.product(cols[i], cols[j]))))
    rep = _first_failure(iter(reports))
    return rep if not rep.passed else CheckReport.ok("homomorphism")


# -- bilinear forms --------------------------------------------------------------

FORM_KINDS = ("invariant_symmetric", "connes_cyclic", "symplectic", "nondegenerate")


def check_form(a: Algebra, f: BilinearForm, kind: str, slots: Mapping[str, str] | None = None) -> CheckReport:
    """Properties of a bilinear form on ``a``.

    ``invariant_symmetric``: symmetric and invariant for every product role
    present (``mul``, ``bracket``).  ``connes_cyclic``: antisymmetric and
    cyclic for ``mul``.  ``symplectic``: antisymmetric and closed for
    ``bracket``.  Nondegeneracy is its own kind.
    """
    kind = kind.replace("-", "_")
    if kind not in FORM_KINDS:
        raise ValueError(f"unknown form kind {kind!r}; known: {', '.join(FORM_KINDS)}")
    if f.dim != a.dim:
        raise ShapeError(f"form of size {f.dim} on a dim-{a.dim} algebra")
    n = a.dim
    g = f.b
    if kind == "nondegenerate":
        rk = f.rank()
        return CheckReport.ok(kind) if rk == n else CheckReport(False, "nondegeneracy")

    def form(u, v):
        return sum((u[i] * g[i, j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j]), ZERO)

    e = _basis(n)
    reports = []
    if kind == "invariant_symmetric":
        reports.append(scan("symmetry", 2, n, lambda i, j: (g[i, j] - g[j, i],)))
        roles = dict(slots) if slots else {r: r for r in ("mul", "bracket") if r in a.products}
        for role, name in roles.items():
            t = a.product(name)
            reports.append(scan(f"invariance[{name}]", 3, n,
                                lambda i, j, k, t=t: (form(t(i, j), e[k]) - form(e[i], t(j, k)),)))
    else:
        role = "mul" if kind == "connes_cyclic" else "bracket"
        name = (slots or {}).get(role, role)
        t = a.product(name)
        reports.append(scan("antisymmetry-form", 2, n, lambda i, j: (g[i, j] + g[j, i],)))
        label = "connes-cocycle" if kind == "connes_cyclic" else "symplectic-cocycle"
        reports.append(scan(label, 3, n, lambda i, j, k, t=t: (
            form(t(i, j), e[k]) + form(t(j, k), e[i]) + form(t(k, i), e[j]),)))
    rep = _first_failure(iter(reports))
    return rep if not rep.passed else CheckReport.ok(kind)


# -- derivations -------------------------------------------------------------------

def derivation_system(t: StructureTensor) -> Matrix:
    """Equations ``D(e_i e_j) = D(e_i) e_j + e_i D(e_j)`` in the entries of ``D``.

    Unknown ``D[p][q]`` (coefficient of ``e_p`` in ``D(e_q)``) sits in column
    ``p * n + q``; one row per ``(i, j, k)``.
    """
    n = t.dim
    rows = []
    for i in range(n):
        for j in range(n):
            prod = t(i, j)
            for k in range(n):
                row = [ZERO] * (n * n)
                # D(e_i e_j)_k = sum_q prod_q D[k][q]
                for q, c in enumerate(prod):
                    if c:
                        row[k * n + q] += c
                # (D(e_i) e_j)_k = sum_p D[p][i] c_{pj}^k
                for p in range(n):
                    c = t(p, j)[k]
                    if c:
                        row[p * n + i] -= c
                    c = t(i, p)[k]
                    if c:
                        row[p * n + j] -= c
                rows.append(row)
    return Matrix(rows, n * n)


def solve_derivations(a: Algebra, slot: str = "mul") -> list:
    """Basis of the derivation space of one product (kernel of a linear system)."""
    t = a.product(slot)
    n = a.dim
    if n == 0:
        return []
    basis = nullspace(derivation_system(t))
    return [LinearOperator(Matrix([[v[p * n + q] for q in range(n)] for p in range(n)], n)) for v in basis]


__all__ = [
    "CLASSES", "IDENTITIES", "IdentityCatalogEntry", "OPERATOR_KINDS", "FORM_KINDS", "Ops", "UnknownClassError",
    "bind", "check_class", "check_identity", "evaluate_identity", "structure_functionals", "check_rep_functionals",
    "check_representation", "check_dual_rep_condition", "check_prelie_representation", "check_operator",
    "check_homomorphism", "check_form", "solve_derivations", "derivation_system", "class_roles", "normalize_class",
    "scan",
]
