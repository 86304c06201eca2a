"""Seeded random instances for the property suites.

Seeds are structured examples (truncated and monomial commutative algebras,
graded Rota-Baxter operators, derivation-induced brackets, associative matrix
algebras, sl2 with its Killing form); variety comes from random rational
coefficients and random changes of basis ``c'(x, y) = g^-1 c(gx, gy)``.
"""
import random
from fractions import Fraction

from famw import axioms
from famw import constructions as cons
from famw.exact import Matrix, basis_vector, nullspace, solve, vec_scale
from famw.model import Algebra, BilinearForm, LinearOperator, Representation
from famw.tensor import StructureTensor


# -- changes of basis ----------------------------------------------------------------

def random_gl(rng, n):
    """``(g, g^-1)`` with small integer entries: a permuted product of unitriangular matrices."""
    def tri(upper):
        return Matrix([[Fraction(1) if i == j else
                        (Fraction(rng.choice((-1, 0, 0, 1))) if (j > i) == upper else Fraction(0))
                        for j in range(n)] for i in range(n)], n)

    perm = list(range(n))
    rng.shuffle(perm)
    p = Matrix([basis_vector(n, perm[i]) for i in range(n)], n)
    g = p @ tri(False) @ tri(True)
    return g, _inverse(g)


def _inverse(g):
    n = g.rows
    cols = [solve(g, basis_vector(n, i)).particular for i in range(n)]
    return Matrix.from_columns(cols, n)


def transform_tensor(t, g, ginv):
    n = t.dim
    cols = [g.column(i) for i in range(n)]
    return StructureTensor.from_function(n, lambda i, j: ginv.apply(t.product(cols[i], cols[j])))


def transform_algebra(a, g, ginv):
    return Algebra(a.dim, a.basis, {k: transform_tensor(t, g, ginv) for k, t in a.products.items()})


def transform_operator(op, g, ginv):
    return LinearOperator(ginv @ op.matrix @ g)


def transform_form(f, g):
    return BilinearForm(g.transpose() @ f.b @ g)


def transform_representation(r, g):
    # new basis element e'_i = g e_i acts as rho(g e_i)
    return Representation(r.algebra_dim, r.module_dim,
                          [r.rho_of(g.column(i)) for i in range(r.algebra_dim)],
                          [r.mu_of(g.column(i)) for i in range(r.algebra_dim)], r.kind)


def rebase(rng, a, *ops):
    g, ginv = random_gl(rng, a.dim)
    return (transform_algebra(a, g, ginv),) + tuple(transform_operator(o, g, ginv) for o in ops)


# -- commutative associative seeds ---------------------------------------------------------

def truncated_unital(rng, d):
    """``K[x]/(p)`` for a random monic ``p`` of degree ``d``; basis ``1, x, ..., x^{d-1}``."""
    p = [Fraction(rng.randint(-2, 2)) for _ in range(d)]  # x^d = sum p_k x^k

    def reduce(coeffs):
        coeffs = list(coeffs)
        for top in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[top]
            if c:
                coeffs[top] = Fraction(0)
                for k in range(d):
                    coeffs[top - d + k] += c * p[k]
        return tuple(coeffs[:d])

    def mul(i, j):
        v = [Fraction(0)] * (2 * d)
        v[i + j] = Fraction(1)
        return reduce(v)

    return Algebra.create(d, {"mul": StructureTensor.from_function(d, mul)})


def monomial_ideal(rng, d):
    """Positive part of ``K[x, y]`` modulo a monomial ideal, with ``d`` surviving monomials."""
    # grow an order ideal of exponents (a, b) != (0, 0)
    chosen = [(1, 0)]
    while len(chosen) < d:
        cands = {(0, 1)} - set(chosen)
        for a, b in chosen:
            for m in ((a + 1, b), (a, b + 1)):
                below = [(m[0] - 1, m[1]), (m[0], m[1] - 1)]
                if m not in chosen and all(q in chosen or q == (0, 0) for q in below if min(q) >= 0):
                    cands.add(m)
        chosen.append(rng.choice(sorted(cands)))
    pos = {m: i for i, m in enumerate(chosen)}

    def mul(i, j):
        a, b = chosen[i]
        c, e = chosen[j]
        k = pos.get((a + c, b + e))
        return basis_vector(d, k) if k is not None else (Fraction(0),) * d

    a = Algebra.create(d, {"mul": StructureTensor.from_function(d, mul)})
    return a, chosen


def split(d):
    return Algebra.create(d, {"mul": StructureTensor.from_function(d, lambda i, j: basis_vector(d, i) if i == j else (Fraction(0),) * d)})


def commutative_seed(rng, d):
    kind = rng.choice(("unital", "monomial", "monomial", "split", "sum"))
    if kind == "unital":
        return truncated_unital(rng, d)
    if kind == "monomial":
        return monomial_ideal(rng, d)[0]
    if kind == "split" or d < 2:
        return split(d)
    k = rng.randint(1, d - 1)
    s = cons.direct_sum(commutative_seed(rng, k).with_products(bracket=StructureTensor.zeros(k)),
                        commutative_seed(rng, d - k).with_products(bracket=StructureTensor.zeros(d - k)))
    return s.only("mul")


def random_commutative(rng, d):
    return rebase(rng, commutative_seed(rng, d))[0]


def random_derivation(rng, a):
    basis = axioms.solve_derivations(a)
    n = a.dim
    m = Matrix.zeros(n, n)
    for D in basis:
        m = m + D.matrix.scale(rng.randint(-2, 2))
    return LinearOperator(m)


# -- F-manifold and pre-F seeds -----------------------------------------------------------------

def graded_rb_instance(rng, d):
    """Monomial algebra with an Euler-derivation bracket and the graded Rota-Baxter
    operator ``B(f) = c f / deg f``; both products are preserved by ``B``."""
    a, monos = monomial_ideal(rng, d)
    w1, w2 = rng.randint(1, 3), rng.randint(1, 3)
    l1, l2 = rng.randint(-2, 2), rng.randint(-2, 2)
    D = LinearOperator(Matrix([[Fraction(l1 * x + l2 * y) if i == j else 0 for j, _ in enumerate(monos)]
                               for i, (x, y) in enumerate(monos)], d))
    c = Fraction(rng.choice((1, 2, 3, -1)), rng.choice((1, 2)))
    B = LinearOperator(Matrix([[c / (w1 * x + w2 * y) if i == j else 0 for j in range(d)]
                               for i, (x, y) in enumerate(monos)], d))
    f = cons.derivation_induced(a, D).only("mul", "bracket")
    return f, B


def random_f_manifold(rng, d):
    kind = rng.choice(("derivation", "graded", "zero"))
    if kind == "graded":
        f = graded_rb_instance(rng, d)[0]
    else:
        a = commutative_seed(rng, d)
        D = random_derivation(rng, a) if kind == "derivation" else LinearOperator.zero(d)
        f = cons.derivation_induced(a, D).only("mul", "bracket")
    return rebase(rng, f)[0]


def random_pre_f(rng, d):
    f, B = graded_rb_instance(rng, d)
    return rebase(rng, cons.rota_baxter_induced_pre_f(f, B, force=True))[0]


def random_fman_admissible(rng, d):
    a = commutative_seed(rng, d)
    D = random_derivation(rng, a)
    if rng.random() < 0.5:
        weight = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    else:
        weight = tuple(Fraction(rng.randint(-2, 2)) for _ in range(d))
    out = cons.derivation_induced(a, D, weight).only("mul", "star")
    return rebase(rng, out)[0]


# -- pre-Lie and Zinbiel seeds ---------------------------------------------------------------

def _matrix_units(n):
    # M_n with basis E_ij at index i*n+j
    d = n * n

    def mul(p, q):
        i, j = divmod(p, n)
        k, l = divmod(q, n)
        return basis_vector(d, i * n + l) if j == k else (Fraction(0),) * d

    return StructureTensor.from_function(d, mul)


def _upper_triangular():
    # basis E11, E12, E22
    idx = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
    keys = list(idx)

    def mul(p, q):
        i, j = keys[p]
        k, l = keys[q]
        return basis_vector(3, idx[(i, l)]) if j == k else (Fraction(0),) * 3

    return StructureTensor.from_function(3, mul)


def random_prelie(rng, d):
    """A pre-Lie product in slot ``bracket``."""
    kinds = ["assoc", "novikov", "rb-lie", "pre-f"]
    if d == 3:
        kinds.append("triangular")
    if d == 4:
        kinds.append("matrix")
    kind = rng.choice(kinds)
    if kind == "assoc":
        t = commutative_seed(rng, d).product("mul")
    elif kind == "triangular":
        t = _upper_triangular()
    elif kind == "matrix":
        t = _matrix_units(2)
    elif kind == "novikov":
        a = commutative_seed(rng, d)
        D = random_derivation(rng, a)
        t = cons.derivation_induced(a, D, Fraction(rng.randint(-2, 2))).product("star")
    elif kind == "rb-lie":
        f, B = graded_rb_instance(rng, d)
        br = f.product("bracket")
        cols = [B.matrix.column(i) for i in range(d)]
        t = StructureTensor.from_function(d, lambda i, j: br.product(cols[i], basis_vector(d, j)))
    else:
        t = random_pre_f(rng, d).product("bracket")
    a = Algebra.create(d, {"bracket": t})
    return rebase(rng, a)[0]


def random_zinbiel(rng, d):
    """Zinbiel product in slot ``mul``: ``x <> y = B(x) y`` for graded Rota-Baxter ``B``."""
    if rng.random() < 0.5:
        return random_pre_f(rng, d).only("mul")
    a, monos = monomial_ideal(rng, d)
    w1, w2 = rng.randint(1, 3), rng.randint(1, 3)
    c = Fraction(rng.choice((1, 2, -1)), rng.choice((1, 3)))
    m = a.product("mul")
    scale = [c / (w1 * x + w2 * y) for x, y in monos]
    t = StructureTensor.from_function(d, lambda i, j: vec_scale(scale[i], m(i, j)))
    return rebase(rng, Algebra.create(d, {"mul": t}))[0]


def random_prelie_rep(rng, a):
    kind = rng.choice(("regular", "coregular", "zero", "sum"))
    if kind == "regular":
        return cons.prelie_regular_representation(a)
    if kind == "coregular":
        return cons.prelie_coregular_representation(a)
    if kind == "zero":
        return Representation.zero(a.dim, rng.randint(1, 3))
    return cons.representation_direct_sum(cons.prelie_regular_representation(a), Representation.zero(a.dim, 1))


# -- operators --------------------------------------------------------------------------------

def o_operator_instances(rng, d):
    """``(F-manifold algebra, representation, O-operator)`` candidates."""
    kind = rng.choice(("rb", "identity", "square-zero"))
    if kind == "rb":
        f, B = graded_rb_instance(rng, d)
        f, B = rebase(rng, f, B)
        return f, cons.regular_representation(f), B
    if kind == "identity":
        p = random_pre_f(rng, d)
        f = cons.sub_adjacent_f_manifold(p, force=True)
        return f, cons.pre_f_regular_representation(p), LinearOperator.identity(d)
    # image inside products-annihilated part of a nilpotent monomial algebra, zero module action
    a, monos = monomial_ideal(rng, d)
    f = a.with_products(bracket=StructureTensor.zeros(d))
    socle = [i for i in range(d) if not any(f.product("mul")(i, j) for j in range(d))]
    m = rng.randint(1, 3)
    cols = []
    for _ in range(m):
        v = [Fraction(0)] * d
        for i in socle:
            v[i] = Fraction(rng.randint(-2, 2))
        cols.append(tuple(v))
    T = LinearOperator.from_images(cols, d)
    g, ginv = random_gl(rng, d)
    f2 = transform_algebra(f, g, ginv)
    T2 = LinearOperator(ginv @ T.matrix)
    return f2, Representation.zero(d, m), T2


def average_instances(rng, d):
    """``(F-manifold algebra, average-operator candidate)``."""
    f = random_f_manifold(rng, d)
    kind = rng.choice(("scalar", "mult", "scalar"))
    if kind == "scalar":
        return f, LinearOperator(Matrix.identity(d).scale(Fraction(rng.randint(-3, 3), rng.randint(1, 2))))
    e = tuple(Fraction(rng.randint(-1, 1)) for _ in range(d))
    m = f.product("mul")
    return f, LinearOperator.from_images([m.product(e, basis_vector(d, j)) for j in range(d)], d)


# -- invariant forms -----------------------------------------------------------------------------

def invariant_forms(a):
    """Basis of symmetric bilinear forms invariant for both products (linear system)."""
    n = a.dim
    m, b = a.product("mul"), a.product("bracket")
    rows = []

    def var(p, q):
        return p * n + q

    for p in range(n):
        for q in range(n):
            row = [Fraction(0)] * (n * n)
            row[var(p, q)] += 1
            row[var(q, p)] -= 1
            rows.append(row)
    for t in (m, b):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    row = [Fraction(0)] * (n * n)
                    for p, c in enumerate(t(i, j)):
                        if c:
                            row[var(p, k)] += c
                    for q, c in enumerate(t(j, k)):
                        if c:
                            row[var(i, q)] -= c
                    rows.append(row)
    return [BilinearForm(Matrix([[v[var(p, q)] for q in range(n)] for p in range(n)], n))
            for v in nullspace(Matrix(rows, n * n))]


def _sl2():
    t = StructureTensor.from_entries(3, [(0, 1, 1, 2), (1, 0, 1, -2), (0, 2, 2, -2), (2, 0, 2, 2),
                                         (1, 2, 0, 1), (2, 1, 0, -1)])
    kill = Matrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]])
    return Algebra.create(3, {"mul": StructureTensor.zeros(3), "bracket": t}), BilinearForm(kill)


def _frobenius(rng, d):
    # every K[x]/(p) is Frobenius; the invariant forms are found by the linear solve
    return truncated_unital(rng, d).with_products(bracket=StructureTensor.zeros(d))


def invariant_form_instance(rng, d):
    """``(F-manifold algebra, nondegenerate invariant symmetric form)`` or ``None``."""
    if d == 4 and rng.random() < 0.3:
        k = truncated_unital(rng, 1).with_products(bracket=StructureTensor.zeros(1))
        s, kill = _sl2()
        a = cons.direct_sum(k, s)
        form = BilinearForm(Matrix([[1, 0, 0, 0]] + [[0] + list(r) for r in kill.b], 4))
    else:
        a = _frobenius(rng, d) if rng.random() < 0.6 else random_f_manifold(rng, d)
        forms = invariant_forms(a)
        if not forms:
            return None
        m = Matrix.zeros(d, d)
        for f in forms:
            m = m + f.b.scale(rng.randint(-2, 2))
        form = BilinearForm(m)
        if form.rank() != d:
            return None
    g, ginv = random_gl(rng, d)
    return transform_algebra(a, g, ginv), transform_form(form, g)


def random_vector(rng, n, lo=-3, hi=3):
    return tuple(Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3))) for _ in range(n))

