"""Right modules, bimodules, Hom spaces and tensor products.

A right A-module of dimension m is given by matrices ``rho_i`` (m x m), one
per basis element of A, acting on row vectors: ``v . b_i = v @ rho_i``.
Acting by ``b_i`` and then ``b_j`` gives ``rho_i @ rho_j``, so the rule is

    rho_i @ rho_j = sum_k c_ijk rho_k,    rho(1) = identity.

Left modules are right modules over the opposite algebra, and an
(B, A)-bimodule is a right module over ``B^op (x) A``.  The conversions
live on :class:`Bimodule`.
"""
from dataclasses import dataclass
from functools import cached_property
import random

from .algebra import Algebra, opposite, tensor, flatten_matrix, coordinate_solver
from .errors import AlgebraError, DimensionError
from .linalg import (Field, Matrix, Span, Subspace, kernel_vectors, dense, sparse,
                     _axpy)

ACTION_CONVENTION = ("right action on row vectors: v.b_i = v @ rho_i, "
                     "rho_i @ rho_j = sum_k c_ijk rho_k")

# seed for the deterministic choice of module generators
GENERATOR_SEED = 20240611


def _mat_combination(field: Field, mats, coeffs: dict, n: int, m: int) -> Matrix:
    out = Matrix(field, n, m)
    p = field.p
    for i, c in coeffs.items():
        if not c:
            continue
        for r, row in enumerate(mats[i].rows):
            if row:
                _axpy(out.rows[r], -c if p is None else (-c) % p, row, p)
    return out


class RightModule:
    """Finite-dimensional right module over an :class:`Algebra`."""

    def __init__(self, algebra: Algebra, dim: int, action, name=None):
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        self.name = name
        if len(self.action) != algebra.dim:
            raise DimensionError("one action matrix per algebra basis element is required")
        for r in self.action:
            if r.shape != (dim, dim):
                raise DimensionError(f"action matrix of shape {r.shape}, expected {dim}x{dim}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<RightModule{tag} dim={self.dim} over {self.algebra!r}>"

    def action_matrix(self, x: dict) -> Matrix:
        """Matrix of ``v -> v . x`` for a sparse algebra element ``x``."""
        return _mat_combination(self.field, self.action, x, self.dim, self.dim)

    def act(self, v: dict, x: dict) -> dict:
        out = {}
        p = self.field.p
        for i, c in x.items():
            w = self.action[i].apply_sparse(v)
            _axpy(out, -c if p is None else (-c) % p, w, p)
        return out

    def act_basis(self, v: dict, i: int) -> dict:
        return self.action[i].apply_sparse(v)

    def check(self) -> list:
        """List of violated module axioms (empty when valid)."""
        A = self.algebra
        F = self.field
        bad = []
        if self.action_matrix(A.unit_sparse) != Matrix.identity(F, self.dim):
            bad.append("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = self.action_matrix(A.table[i][j])
                if lhs != rhs:
                    bad.append(f"rho_{i} rho_{j} != rho(b_{i} b_{j})")
        return bad

    def submodule_generated(self, vectors) -> Subspace:
        """Submodule generated by sparse vectors: span of all ``v . b_i``."""
        sub = Subspace(self.field)
        for v in vectors:
            sub.add(v)
            for r in self.action:
                sub.add(r.apply_sparse(v))
        return sub

    def is_submodule(self, vectors) -> bool:
        sub = Subspace(self.field, vectors)
        return all(r.apply_sparse(v) in sub for v in vectors for r in self.action)


class Bimodule:
    """(B, A)-bimodule: left action of ``left_algebra``, right of ``right_algebra``.

    ``left[i]`` is the matrix of ``v -> b_i v`` and ``right[j]`` that of
    ``v -> v a_j``, both on row vectors.
    """

    def __init__(self, left_algebra: Algebra, right_algebra: Algebra, dim: int,
                 left, right, name=None):
        if left_algebra.field != right_algebra.field:
            raise DimensionError("bimodule over algebras with different fields")
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dim = dim
        self.left = list(left)
        self.right = list(right)
        self.name = name
        if len(self.left) != left_algebra.dim or len(self.right) != right_algebra.dim:
            raise DimensionError("bimodule action lists have the wrong length")

    @property
    def field(self) -> Field:
        return self.right_algebra.field

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Bimodule{tag} dim={self.dim}>"

    def right_module(self) -> RightModule:
        return RightModule(self.right_algebra, self.dim, self.right, self.name)

    def left_module(self) -> RightModule:
        """The left structure as a right module over the opposite algebra."""
        return RightModule(op_algebra(self.left_algebra), self.dim, self.left, self.name)

    def left_matrix(self, x: dict) -> Matrix:
        return _mat_combination(self.field, self.left, x, self.dim, self.dim)

    def right_matrix(self, x: dict) -> Matrix:
        return _mat_combination(self.field, self.right, x, self.dim, self.dim)

    def as_right_module(self) -> RightModule:
        """Right module over ``B^op (x) A``; basis ``i * dim(A) + j``."""
        env = op_tensor(self.left_algebra, self.right_algebra)
        acts = [l @ r for l in self.left for r in self.right]
        return RightModule(env, self.dim, acts, self.name)

    def check(self) -> list:
        bad = ["left: " + s for s in self.left_module().check()]
        bad += ["right: " + s for s in self.right_module().check()]
        for i, l in enumerate(self.left):
            for j, r in enumerate(self.right):
                if l @ r != r @ l:
                    bad.append(f"left {i} and right {j} do not commute")
        return bad


# opposite and B^op (x) A are cached per algebra object so that modules
# built at different times share the same algebra instance.
_OP_CACHE = {}
_OPT_CACHE = {}


def op_algebra(a: Algebra) -> Algebra:
    key = id(a)
    hit = _OP_CACHE.get(key)
    if hit is None or hit[0] is not a:
        hit = (a, opposite(a))
        _OP_CACHE[key] = hit
    return hit[1]


def op_tensor(b: Algebra, a: Algebra) -> Algebra:
    key = (id(b), id(a))
    hit = _OPT_CACHE.get(key)
    if hit is None or hit[0] is not b or hit[1] is not a:
        hit = (b, a, tensor(op_algebra(b), a))
        _OPT_CACHE[key] = hit
    return hit[2]


def ground_algebra(field: Field) -> Algebra:
    """The one-dimensional algebra K."""
    key = ("ground", field)
    hit = _OP_CACHE.get(key)
    if hit is None:
        hit = (None, Algebra(field, 1, [[{0: field.one}]], [field.one], ["1"], "K"))
        _OP_CACHE[key] = hit
    return hit[1]


# ----------------------------------------------------------------------
# constructors


def regular_module(a: Algebra) -> RightModule:
    return RightModule(a, a.dim, a.right_mats, f"{a.name or 'A'}_A")


def left_regular_module(a: Algebra) -> RightModule:
    """A as a left module over itself, i.e. a right module over A^op."""
    return RightModule(op_algebra(a), a.dim, a.left_mats, f"_A{a.name or 'A'}")


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a, a, a.dim, a.left_mats, a.right_mats, a.name)


def zero_module(a: Algebra) -> RightModule:
    return RightModule(a, 0, [Matrix(a.field, 0, 0) for _ in range(a.dim)], "0")


def _block_diag(field, mats):
    n = sum(m.nrows for m in mats)
    out = Matrix(field, n, n)
    off = 0
    for m in mats:
        for r, row in enumerate(m.rows):
            out.rows[off + r] = {off + c: x for c, x in row.items()}
        off += m.nrows
    return out


def direct_sum(*mods: RightModule) -> RightModule:
    a = mods[0].algebra
    if any(m.algebra is not a for m in mods):
        raise DimensionError("direct sum of modules over different algebras")
    F = a.field
    acts = [_block_diag(F, [m.action[i] for m in mods]) for i in range(a.dim)]
    return RightModule(a, sum(m.dim for m in mods), acts,
                       " + ".join(m.name or "M" for m in mods))


def free_module(a: Algebra, rank: int) -> RightModule:
    if rank == 0:
        return zero_module(a)
    return direct_sum(*([regular_module(a)] * rank))


def submodule(m: RightModule, vectors, name=None):
    """Submodule spanned by sparse ``vectors``.

    Returns ``(N, span)``; ``span`` is the canonical basis of the subspace,
    which is also the basis of N.
    """
    span = Span(m.field, m.dim, vectors)
    acts = []
    for r in m.action:
        acts.append(Matrix(m.field, span.dim, span.dim,
                           [span.sparse_coords(r.apply_sparse(v)) for v in span.rows]))
    return RightModule(m.algebra, span.dim, acts, name), span


@dataclass
class QuotientModuleData:
    module: RightModule
    complement: list
    _sub: Subspace

    def project(self, v: dict) -> dict:
        pos = {c: t for t, c in enumerate(self.complement)}
        return {pos[k]: x for k, x in self._sub.reduce(v).items()}

    def lift(self, coords: dict) -> dict:
        return {self.complement[t]: x for t, x in coords.items() if x}


def quotient_module(m: RightModule, vectors, name=None) -> QuotientModuleData:
    """M / N for the submodule N spanned by sparse ``vectors``."""
    if not m.is_submodule(vectors):
        raise AlgebraError("vectors do not span a submodule")
    sub = Subspace(m.field, vectors)
    comp = sub.complement_indices(m.dim)
    pos = {c: t for t, c in enumerate(comp)}
    one = m.field.one
    acts = []
    for r in m.action:
        rows = []
        for c in comp:
            img = sub.reduce(r.rows[c])
            rows.append({pos[k]: x for k, x in img.items()})
        acts.append(Matrix(m.field, len(comp), len(comp), rows))
    return QuotientModuleData(RightModule(m.algebra, len(comp), acts, name), comp, sub)


def quotient_bimodule(m: Bimodule, vectors, name=None):
    """Bimodule quotient; returns ``(Bimodule, QuotientModuleData-like data)``."""
    sub = Subspace(m.field, vectors)
    for v in vectors:
        for r in m.left + m.right:
            if r.apply_sparse(v) not in sub:
                raise AlgebraError("vectors do not span a sub-bimodule")
    comp = sub.complement_indices(m.dim)
    pos = {c: t for t, c in enumerate(comp)}

    def induced(r):
        rows = [{pos[k]: x for k, x in sub.reduce(r.rows[c]).items()} for c in comp]
        return Matrix(m.field, len(comp), len(comp), rows)

    q = Bimodule(m.left_algebra, m.right_algebra, len(comp),
                 [induced(r) for r in m.left], [induced(r) for r in m.right], name)
    return q, QuotientModuleData(q.right_module(), comp, sub)


def restrict(m: RightModule, algebra: Algebra, images) -> RightModule:
    """Restriction of scalars along an algebra map.

    ``images[i]`` is the sparse image in ``m.algebra`` of basis element i
    of ``algebra``.
    """
    return RightModule(algebra, m.dim, [m.action_matrix(x) for x in images], m.name)


def restrict_bimodule(m: Bimodule, left_alg: Algebra, left_images,
                      right_alg: Algebra, right_images) -> Bimodule:
    return Bimodule(left_alg, right_alg, m.dim,
                    [m.left_matrix(x) for x in left_images],
                    [m.right_matrix(x) for x in right_images], m.name)


def as_bimodule(m: RightModule) -> Bimodule:
    """A right A-module as a (K, A)-bimodule."""
    K = ground_algebra(m.field)
    return Bimodule(K, m.algebra, m.dim, [Matrix.identity(m.field, m.dim)], m.action, m.name)


def left_as_bimodule(m: RightModule, algebra: Algebra) -> Bimodule:
    """A left ``algebra``-module (given over its opposite) as an (A, K)-bimodule."""
    K = ground_algebra(m.field)
    return Bimodule(algebra, K, m.dim, m.action, [Matrix.identity(m.field, m.dim)], m.name)


# ----------------------------------------------------------------------
# morphisms and Hom


@dataclass
class ModuleMap:
    source: RightModule
    target: RightModule
    matrix: Matrix

    def is_homomorphism(self) -> bool:
        return all(rs @ self.matrix == self.matrix @ rt
                   for rs, rt in zip(self.source.action, self.target.action))


def _intertwiner_equations(field, src_mats, tgt_mats, m, n):
    """Rows of the system ``S_g F - F T_g = 0`` in the unknowns F[s][c]."""
    rows = []
    p = field.p
    for S, T in zip(src_mats, tgt_mats):
        eq = [{} for _ in range(m * n)]
        for r, row in enumerate(S.rows):
            for s, x in row.items():
                for c in range(n):
                    e = eq[r * n + c]
                    e[s * n + c] = e.get(s * n + c, 0) + x
        for s, row in enumerate(T.rows):
            for c, y in row.items():
                for r in range(m):
                    e = eq[r * n + c]
                    e[r * n + s] = e.get(r * n + s, 0) - y
        for e in eq:
            e = {k: (v if p is None else v % p) for k, v in e.items()}
            e = {k: v for k, v in e.items() if v}
            if e:
                rows.append(e)
    return rows


def _unflatten(field, vec, m, n) -> Matrix:
    out = Matrix(field, m, n)
    for k, x in vec.items():
        out.rows[k // n][k % n] = x
    return out


def hom_space(src: RightModule, tgt: RightModule) -> list:
    """Basis of Hom_A(src, tgt) as m x n matrices (row convention).

    Only the algebra generators contribute equations, since a map that
    commutes with them commutes with every product.
    """
    if src.algebra is not tgt.algebra:
        raise DimensionError("Hom between modules over different algebras")
    F = src.field
    m, n = src.dim, tgt.dim
    gens = src.algebra.generators
    rows = _intertwiner_equations(F, [src.action[g] for g in gens],
                                  [tgt.action[g] for g in gens], m, n)
    eqs = Matrix(F, len(rows), m * n, rows)
    return [_unflatten(F, v, m, n) for v in kernel_vectors(eqs)]


def bimodule_hom_space(src: Bimodule, tgt: Bimodule) -> list:
    """Basis of bimodule maps (commuting with both actions)."""
    F = src.field
    m, n = src.dim, tgt.dim
    lg = src.left_algebra.generators
    rg = src.right_algebra.generators
    rows = _intertwiner_equations(F, [src.left[g] for g in lg], [tgt.left[g] for g in lg], m, n)
    rows += _intertwiner_equations(F, [src.right[g] for g in rg],
                                   [tgt.right[g] for g in rg], m, n)
    eqs = Matrix(F, len(rows), m * n, rows)
    return [_unflatten(F, v, m, n) for v in kernel_vectors(eqs)]


def end_algebra(m: RightModule, basis=None):
    """End_A(M) under composition, with the Hom basis.

    Returns ``(E, basis, coords)`` where ``coords`` takes a flattened
    endomorphism matrix to E-coordinates.
    """
    from .algebra import algebra_from_maps
    if basis is None:
        basis = hom_space(m, m)
    E, coords = algebra_from_maps(m.field, basis, name="End")
    return E, basis, coords


# ----------------------------------------------------------------------
# generators of submodules


def choose_generators(module_dim_target: int, candidates, act_all, field: Field,
                      seed=GENERATOR_SEED):
    """Pick generators for the submodule spanned by ``candidates``.

    ``candidates`` is a basis (sparse vectors) of a submodule K of dimension
    ``module_dim_target``; ``act_all(v)`` lists ``v . b_i`` over the algebra
    basis.  First the candidates themselves are taken greedily (sparse
    generators keep later kernels sparse with small entries).  Then seeded
    pseudo-random combinations of all candidates are tried; a generic
    combination generates as large a cyclic submodule as possible, and that
    set is kept when it is strictly smaller.  Returns ``(generators, subspace)``.
    """
    gens, sub = _greedy_generators(module_dim_target, candidates, act_all, field)
    if len(gens) > 1:
        merged, msub = _generic_generators(module_dim_target, candidates, act_all, field, seed)
        if len(merged) < len(gens):
            return merged, msub
    return gens, sub


def _greedy_generators(target, candidates, act_all, field):
    sub = Subspace(field)
    gens = []
    for c in candidates:
        if sub.dim >= target:
            break
        if c in sub:
            continue
        gens.append(c)
        sub.add(c)
        for w in act_all(c):
            sub.add(w)
    return gens, sub


def _generic_generators(target, candidates, act_all, field, seed):
    rng = random.Random(seed)
    sub = Subspace(field)
    gens = []
    p = field.p
    misses = 0
    while sub.dim < target:
        if misses < 3:
            v = {}
            for c in candidates:
                coef = rng.randint(1, 7) if p is None else rng.randrange(p)
                if coef:
                    _axpy(v, -coef if p is None else (-coef) % p, c, p)
        else:
            v = next(c for c in candidates if c not in sub)
        if not v or v in sub:
            misses += 1
            continue
        misses = 0
        gens.append(v)
        sub.add(v)
        for w in act_all(v):
            sub.add(w)
    return gens, sub


def module_generators(m: RightModule, seed=GENERATOR_SEED) -> list:
    one = m.field.one
    cands = [{i: one} for i in range(m.dim)]
    gens, _ = choose_generators(m.dim, cands,
                                lambda v: [r.apply_sparse(v) for r in m.action], m.field, seed)
    return gens


# ----------------------------------------------------------------------
# tensor products


class TensorProduct:
    """X (x)_A Y for an (B, A)-bimodule X and an (A, C)-bimodule Y.

    The quotient of the vector space tensor product (index ``s * dim Y + t``)
    by the balancing relations; its basis is the standard complement.  The
    outer actions make it a (B, C)-bimodule, available as ``bimodule``.
    """

    def __init__(self, X: Bimodule, Y: Bimodule):
        if X.right_algebra is not Y.left_algebra:
            raise DimensionError("tensor product needs a common middle algebra")
        F = X.field
        self.X, self.Y = X, Y
        self.field = F
        m, n = X.dim, Y.dim
        self.m, self.n = m, n
        A = X.right_algebra
        rel = Subspace(F)
        p = F.p
        for g in A.generators:
            rx = X.right[g]
            ly = Y.left[g]
            for s in range(m):
                xs = rx.rows[s]
                for t in range(n):
                    v = {u * n + t: x for u, x in xs.items()}
                    _axpy(v, F.one, {s * n + u: y for u, y in ly.rows[t].items()}, p)
                    if v:
                        rel.add(v)
        self.relations = rel
        self.complement = rel.complement_indices(m * n)
        self._pos = {c: t for t, c in enumerate(self.complement)}
        self.dim = len(self.complement)

    def project(self, v: dict) -> dict:
        """Class of a vector of X (x)_K Y, in quotient coordinates."""
        pos = self._pos
        return {pos[k]: x for k, x in self.relations.reduce(v).items()}

    def pure(self, x: dict, y: dict) -> dict:
        """Class of ``x (x) y`` for sparse x in X and y in Y."""
        n = self.n
        p = self.field.p
        v = {}
        for s, a in x.items():
            for t, b in y.items():
                c = a * b if p is None else a * b % p
                if c:
                    v[s * n + t] = c
        return self.project(v)

    def lift(self, q: int) -> tuple:
        """``(s, t)`` with the quotient basis vector q the class of x_s (x) y_t."""
        c = self.complement[q]
        return divmod(c, self.n)

    def is_balanced(self, images) -> bool:
        """Whether a map given on pure tensors kills every relation."""
        F = self.field
        p = F.p
        n = self.n
        for v in self.relations.basis():
            acc = {}
            for k, c in v.items():
                _axpy(acc, -c if p is None else (-c) % p, images(*divmod(k, n)), p)
            if acc:
                return False
        return True

    @cached_property
    def bimodule(self) -> Bimodule:
        F = self.field
        n = self.n
        X, Y = self.X, self.Y

        def outer_left(L):
            rows = []
            for q in range(self.dim):
                s, t = self.lift(q)
                rows.append(self.project({u * n + t: x for u, x in L.rows[s].items()}))
            return Matrix(F, self.dim, self.dim, rows)

        def outer_right(R):
            rows = []
            for q in range(self.dim):
                s, t = self.lift(q)
                rows.append(self.project({s * n + u: y for u, y in R.rows[t].items()}))
            return Matrix(F, self.dim, self.dim, rows)

        return Bimodule(X.left_algebra, Y.right_algebra, self.dim,
                        [outer_left(L) for L in X.left], [outer_right(R) for R in Y.right])


def tensor_over(X, Y) -> TensorProduct:
    """X (x)_A Y.  Plain modules are promoted to bimodules over the ground field.

    ``X`` is a Bimodule or a right A-module; ``Y`` is a Bimodule or a left
    A-module given as a RightModule over A^op (its algebra must be
    ``op_algebra(A)``).
    """
    if isinstance(X, RightModule):
        X = as_bimodule(X)
    if isinstance(Y, RightModule):
        A = X.right_algebra
        if Y.algebra is not op_algebra(A):
            raise DimensionError("left module must be over the opposite of the middle algebra")
        Y = left_as_bimodule(Y, A)
    return TensorProduct(X, Y)


# ----------------------------------------------------------------------
# trace ideals, generators, projectivity


def trace_ideal(a: Algebra, m: RightModule) -> Span:
    """Sum of images of all maps M -> A_A, as a subspace of A."""
    homs = hom_space(m, regular_module(a))
    sub = Subspace(a.field)
    for h in homs:
        for row in h.rows:
            sub.add(row)
    return Span(a.field, a.dim, sub.basis())


def is_generator(a: Algebra, m: RightModule) -> bool:
    return trace_ideal(a, m).dim == a.dim


def free_cover(m: RightModule, seed=GENERATOR_SEED):
    """``(generators, matrix)`` of a surjection from a free module onto M.

    The free module has basis ``g * dim(A) + k`` for generator g and
    algebra basis element k; that basis vector maps to ``gen_g . b_k``.
    """
    gens = module_generators(m, seed)
    rows = []
    for g in gens:
        for r in m.action:
            rows.append(r.apply_sparse(g))
    a = m.algebra
    return gens, Matrix(m.field, len(gens) * a.dim, m.dim, rows)


def is_projective(a: Algebra, m: RightModule):
    """Decide projectivity by looking for a splitting of a free cover.

    Returns ``(True, s)`` with ``s`` a module map M -> A^r whose composite
    with the cover is the identity, or ``(False, None)``.
    """
    F = a.field
    if m.dim == 0:
        return True, Matrix(F, 0, 0)
    gens, pi = free_cover(m)
    free = free_module(a, len(gens))
    homs = hom_space(m, free)
    # solve sum_k c_k (H_k @ pi) = I for c
    comps = [flatten_matrix(h @ pi) for h in homs]
    target = flatten_matrix(Matrix.identity(F, m.dim))
    nn = m.dim * m.dim
    eqs = Matrix.from_columns(F, nn, comps) if comps else Matrix(F, nn, 0)
    from .linalg import solve_linear
    sol = solve_linear(eqs, dense(target, nn, F)) if comps else None
    if sol is None:
        return False, None
    s = Matrix(F, m.dim, free.dim)
    p = F.p
    for c, h in zip(sol, homs):
        if c:
            s = s + h.scale(c)
    return True, s


def dual_module(a: Algebra, m: RightModule):
    """M* = Hom_A(M, A) as a left A-module (right module over A^op).

    Returns ``(Mstar, basis)`` with ``basis`` the Hom matrices (m x d);
    ``(x . lam)(v) = x lam(v)``.
    """
    F = a.field
    basis = hom_space(m, regular_module(a))
    if not basis:
        return RightModule(op_algebra(a), 0, [Matrix(F, 0, 0)] * a.dim, "M*"), basis
    coords = coordinate_solver(F, [flatten_matrix(h) for h in basis], m.dim * a.dim)
    acts = []
    for i in range(a.dim):
        L = a.left_mats[i]
        rows = [coords(flatten_matrix(h @ L)) for h in basis]
        acts.append(Matrix(F, len(basis), len(basis), rows))
    return RightModule(op_algebra(a), len(basis), acts, "M*"), basis


@dataclass
class StableEndData:
    """End_A(M), the image of the norm map, and the stable quotient."""
    end: Algebra
    end_basis: list
    norm_image: Span
    stable: object          # QuotientData of End by the norm image
    tensor_dim: int         # dim M (x)_A M*
    norm_rank: int          # rank of M (x)_A M* -> End computed on the tensor
    kernel_dim: int
    consistent: bool        # both routes to the image agree and dims add up

    @property
    def stable_dim(self):
        return self.stable.algebra.dim


def norm_and_stable_end(a: Algebra, m: RightModule) -> StableEndData:
    """Norm map M (x)_A M* -> End_A(M) and the stable endomorphism ring.

    ``f(v (x) lam)`` is ``w -> v . lam(w)``.  The image is computed twice:
    as the span of the images of pure basis tensors, and as the rank of the
    induced map on the balanced tensor product.
    """
    from .algebra import quotient_algebra
    F = a.field
    E, basis, coords = end_algebra(m)
    Mstar, dual = dual_module(a, m)
    d = m.dim

    def norm(s, t):
        lam = dual[t]
        vs = {s: F.one}
        rows = []
        for u in range(d):
            rows.append(m.act(vs, lam.rows[u]))
        return coords(flatten_matrix(Matrix(F, d, d, rows)))

    direct = Subspace(F)
    for s in range(d):
        for t in range(len(dual)):
            direct.add(norm(s, t))
    image = Span(F, E.dim, direct.basis())
    T = tensor_over(m, Mstar)
    induced = Subspace(F)
    for q in range(T.dim):
        induced.add(norm(*T.lift(q)))
    balanced = T.is_balanced(norm)
    stable = quotient_algebra(E, image)
    rank = induced.dim
    consistent = (balanced and rank == image.dim
                  and (T.dim - rank) - T.dim + E.dim - stable.algebra.dim == 0)
    return StableEndData(E, basis, image, stable, T.dim, rank, T.dim - rank, consistent)
