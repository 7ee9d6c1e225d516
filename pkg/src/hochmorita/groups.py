"""Finite group actions on algebras, skew group algebras and invariants.

A :class:`GroupAction` stores for every group element g the images
``g(b_j)`` of the basis of S as sparse vectors; in matrix terms these are
the columns of A_g (so A_g A_h = A_{gh}).  The skew group algebra SG has
basis ``s_i g`` at index ``g * dim S + i`` and product
``(s_i g)(s_j h) = s_i g(s_j) gh``.
"""
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import (Algebra, centre, is_two_sided_ideal, quotient_algebra, subalgebra,
                      two_sided_ideal, validate_algebra)
from .errors import AlgebraError, DimensionError
from .hochschild import BarComplex, hh_via_bar, hh_via_ext
from .homology import GradeBound, depth_on_ideal, ext_dims, grade_of, quotient_by_ideal
from .linalg import Field, Matrix, Span, Subspace, _axpy, left_kernel_vectors, solve_linear
from .modules import (Bimodule, RightModule, TensorProduct, bimodule_hom_space, hom_space,
                      regular_bimodule, regular_module, restrict, restrict_bimodule,
                      submodule)


class FiniteGroup:
    """Group given by its multiplication table on 0..n-1."""

    def __init__(self, table, identity=0, labels=None, name=None):
        self.table = [list(r) for r in table]
        self.order = len(table)
        self.identity = identity
        self.labels = labels or [f"g{i}" for i in range(self.order)]
        self.name = name
        self.inverse = []
        for g in range(self.order):
            inv = [h for h in range(self.order) if self.table[g][h] == identity]
            if len(inv) != 1:
                raise AlgebraError(f"element {g} has no unique inverse")
            self.inverse.append(inv[0])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], 0,
                   ["e"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)], f"Z/{n}")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], 0, ["e"], "1")

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def check(self) -> list:
        n = self.order
        errs = []
        for g in range(n):
            if self.table[self.identity][g] != g or self.table[g][self.identity] != g:
                errs.append(f"identity fails at {g}")
        for g in range(n):
            if sorted(self.table[g]) != list(range(n)):
                errs.append(f"row {g} is not a permutation")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        errs.append(f"associativity fails at {(a, b, c)}")
                        return errs
        return errs


class GroupAction:
    """Action of a finite group on an algebra by automorphisms."""

    def __init__(self, group: FiniteGroup, algebra: Algebra, images, name=None):
        if len(images) != group.order or any(len(im) != algebra.dim for im in images):
            raise DimensionError("need one image per basis element for every group element")
        F = algebra.field
        self.group = group
        self.algebra = algebra
        self.images = [[{k: F(x) for k, x in v.items() if x} for v in im] for im in images]
        self.name = name

    @classmethod
    def from_generator(cls, group: FiniteGroup, algebra: Algebra, generator_images, name=None):
        """Action of a cyclic group from the images of its generator (element 1)."""
        d = algebra.dim
        F = algebra.field
        ident = [{j: F.one} for j in range(d)]
        gen = [{k: F(x) for k, x in v.items() if x} for v in generator_images]
        images = [ident]
        for _ in range(1, group.order):
            prev = images[-1]
            images.append([_apply_images(gen, v, F) for v in prev])
        return cls(group, algebra, images, name)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def apply(self, g: int, v: dict) -> dict:
        return _apply_images(self.images[g], v, self.field)

    def matrix(self, g: int) -> Matrix:
        """Row-convention matrix: v @ matrix(g) = g(v)."""
        d = self.algebra.dim
        return Matrix(self.field, d, d, [dict(r) for r in self.images[g]])

    def check(self) -> list:
        """Automorphism, unit and composition axioms; messages for failures."""
        S, G, F = self.algebra, self.group, self.field
        errs = list(G.check())
        one = F.one
        for g in range(G.order):
            if self.apply(g, S.unit_sparse) != S.unit_sparse:
                errs.append(f"{G.labels[g]} does not fix the unit")
            for i in range(S.dim):
                for j in range(S.dim):
                    lhs = self.apply(g, S.mul_sparse({i: one}, {j: one}))
                    rhs = S.mul_sparse(self.images[g][i], self.images[g][j])
                    if lhs != rhs:
                        errs.append(f"{G.labels[g]} is not multiplicative on ({i}, {j})")
                        break
        for j in range(S.dim):
            if self.images[G.identity][j] != {j: one}:
                errs.append("identity element acts nontrivially")
                break
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                for j in range(S.dim):
                    if self.apply(g, self.images[h][j]) != self.images[gh][j]:
                        errs.append(f"composition fails for ({g}, {h})")
                        break
        return errs

    def fixed_space(self) -> list:
        """Basis of S^G (sparse vectors)."""
        G, S = self.group, self.algebra
        F = self.field
        blocks = None
        for g in range(G.order):
            if g == G.identity:
                continue
            m = self.matrix(g) - Matrix.identity(F, S.dim)
            blocks = m if blocks is None else blocks.hstack(m)
        if blocks is None:
            return [{j: F.one} for j in range(S.dim)]
        return left_kernel_vectors(blocks)

    def trace(self, v: dict) -> dict:
        out = {}
        F = self.field
        for g in range(self.group.order):
            _axpy(out, -F.one, self.apply(g, v), F.p)
        return out


def _apply_images(images, v: dict, F: Field) -> dict:
    out = {}
    for j, x in v.items():
        _axpy(out, -x if F.p is None else (-x) % F.p, images[j], F.p)
    return out


# ----------------------------------------------------------------------
# skew group algebra


@dataclass
class SkewGroupData:
    action: GroupAction
    SG: Algebra
    f: dict                  # sum of the group elements
    R: Algebra               # invariant ring with basis R_basis
    R_basis: list            # sparse vectors of S
    R_coords: object
    checks: dict = dc_field(default_factory=dict)

    @property
    def S(self) -> Algebra:
        return self.action.algebra

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    def embed_S(self, v: dict) -> dict:
        base = self.group.identity * self.S.dim
        return {base + i: x for i, x in v.items()}

    def element_of_group(self, g: int) -> dict:
        d = self.S.dim
        return {g * d + i: x for i, x in self.S.unit_sparse.items()}

    @cached_property
    def S_images(self) -> list:
        one = self.S.field.one
        return [self.embed_S({i: one}) for i in range(self.S.dim)]

    @cached_property
    def R_images_in_S(self) -> list:
        return [dict(v) for v in self.R_basis]

    @cached_property
    def order_invertible(self) -> bool:
        p = self.S.field.p
        return p is None or self.group.order % p != 0

    @cached_property
    def fS(self) -> RightModule:
        """fS as a right SG-module on the space of S via s -> f s.

        (f s)(t h) = f h^{-1}(s t), so basis element ``s_j h`` acts by
        s -> h^{-1}(s s_j).
        """
        S, G = self.S, self.group
        F = S.field
        one = F.one
        mats = []
        for h in range(G.order):
            hinv = G.inverse[h]
            for j in range(S.dim):
                rows = [self.action.apply(hinv, S.mul_sparse({i: one}, {j: one}))
                        for i in range(S.dim)]
                mats.append(Matrix(F, S.dim, S.dim, rows))
        return RightModule(self.SG, S.dim, mats, "fS")

    @cached_property
    def trace_rank(self) -> int:
        one = self.S.field.one
        return Subspace(self.S.field, [self.action.trace({i: one})
                                       for i in range(self.S.dim)]).dim

    @property
    def trace_surjective(self) -> bool:
        """tr_G maps S onto R (its image always lies in R)."""
        return self.trace_rank == self.R.dim

    @cached_property
    def defect_ideal(self) -> Span:
        """The two-sided ideal SfS of SG."""
        return two_sided_ideal(self.SG, [self.f])

    @cached_property
    def defect(self):
        """SG/SfS as QuotientData."""
        return quotient_algebra(self.SG, self.defect_ideal)

    @cached_property
    def defect_module(self) -> RightModule:
        return quotient_by_ideal(self.SG, self.defect_ideal.rows)


def build_skew_group(action: GroupAction, name=None) -> SkewGroupData:
    errs = action.check()
    if errs:
        raise AlgebraError("invalid group action: " + "; ".join(errs))
    S, G = action.algebra, action.group
    F = S.field
    d, n = S.dim, G.order
    one = F.one
    table = [[None] * (d * n) for _ in range(d * n)]
    for g in range(n):
        for h in range(n):
            base = G.mul(g, h) * d
            for j in range(d):
                gs = action.images[g][j]
                for i in range(d):
                    prod = S.mul_sparse({i: one}, gs)
                    table[g * d + i][h * d + j] = {base + k: x for k, x in prod.items()}
    unit = [F.zero] * (d * n)
    for i, x in S.unit_sparse.items():
        unit[G.identity * d + i] = x
    labels = [f"{S.labels[i]}*{G.labels[g]}" for g in range(n) for i in range(d)]
    SG = Algebra(F, d * n, table, unit, labels,
                 name or f"{S.name or 'S'}#{G.name or 'G'}")
    f = {}
    for g in range(n):
        for i, x in S.unit_sparse.items():
            f[g * d + i] = x
    R_basis = action.fixed_space()
    R, R_coords = subalgebra(S, R_basis, name=f"{S.name or 'S'}^G")
    data = SkewGroupData(action, SG, f, R, R_basis, R_coords)
    data.checks = skew_group_checks(data)
    return data


def skew_group_checks(data: SkewGroupData) -> dict:
    SG, f, G = data.SG, data.f, data.group
    F = SG.field
    ok_fg = all(SG.mul_sparse(f, data.element_of_group(g)) == f
                and SG.mul_sparse(data.element_of_group(g), f) == f for g in range(G.order))
    f2 = SG.mul_sparse(f, f)
    scaled = {k: F.normalize(x * G.order) for k, x in f.items()}
    scaled = {k: x for k, x in scaled.items() if x}
    S = data.S
    one = F.one
    embeds = all(SG.mul_sparse(data.embed_S({i: one}), data.embed_S({j: one}))
                 == data.embed_S(S.mul_sparse({i: one}, {j: one}))
                 for i in range(S.dim) for j in range(S.dim))
    closed = True
    for x in data.R_basis:
        for y in data.R_basis:
            prod = S.mul_sparse(x, y)
            if any(data.action.apply(g, prod) != prod for g in range(G.order)):
                closed = False
    return {
        "valid_algebra": validate_algebra(SG, strict=False).valid,
        "f_absorbs_group": ok_fg,
        "f_squared": f2 == scaled,
        "S_embeds": embeds,
        "invariants_closed": closed,
        "trace_lands_in_R": all(data.R_coords is not None and _in_span(data.R_basis,
                                                                       data.action.trace({i: one}), F)
                                for i in range(S.dim)),
        "fS_module": not data.fS.check(),
    }


def _in_span(vectors, v, F) -> bool:
    return v in Subspace(F, vectors)


def trace_and_invariants(data: SkewGroupData) -> dict:
    S = data.S
    one = S.field.one
    tr = Matrix(S.field, S.dim, S.dim, [data.action.trace({i: one}) for i in range(S.dim)])
    return {"trace": tr, "R": data.R, "R_basis": data.R_basis,
            "surjective": data.trace_surjective, "order_invertible": data.order_invertible}


# ----------------------------------------------------------------------
# outer actions and centres


def _twisted_commutant(action: GroupAction, g: int) -> list:
    """{s' in S : s s' = s' g(s) for every s}."""
    S = action.algebra
    F = S.field
    one = F.one
    d = S.dim
    rows = []
    for k in range(d):
        row = {}
        for i in range(d):
            v = S.mul_sparse({i: one}, {k: one})
            _axpy(v, one, S.mul_sparse({k: one}, action.images[g][i]), F.p)
            for c, x in v.items():
                row[i * d + c] = x
        rows.append(row)
    return left_kernel_vectors(Matrix(F, d, d * d, rows))


@dataclass
class OuterReport:
    outer: bool
    witness: tuple            # (g, s') when not outer
    per_element: dict         # g -> dim of the twisted commutant
    centralizer_dim: int      # dim (SG)^S
    routes_agree: bool


def infinitesimally_outer(data_or_action) -> OuterReport:
    """Whether every g != e has zero twisted commutant.

    Cross-checked against the centralizer of S in SG, which splits as the
    sum over g of (twisted commutant of g) * g.
    """
    data = (data_or_action if isinstance(data_or_action, SkewGroupData)
            else build_skew_group(data_or_action))
    action = data.action
    G = action.group
    per = {}
    witness = None
    for g in range(G.order):
        ker = _twisted_commutant(action, g)
        per[g] = len(ker)
        if g != G.identity and ker and witness is None:
            witness = (g, ker[0])
    outer = witness is None
    cdim = len(centralizer(data.SG, data.S_images))
    agree = cdim == sum(per.values())
    if data.S.is_commutative:
        agree = agree and (outer == (cdim == data.S.dim))
    return OuterReport(outer, witness, per, cdim, agree)


def centralizer(a: Algebra, elements) -> list:
    """Basis of {z in a : x z = z x for all given x}."""
    F = a.field
    one = F.one
    rows = []
    n = len(elements)
    for k in range(a.dim):
        row = {}
        for t, x in enumerate(elements):
            v = a.mul_sparse(x, {k: one})
            _axpy(v, one, a.mul_sparse({k: one}, x), F.p)
            for c, y in v.items():
                row[t * a.dim + c] = y
        rows.append(row)
    return left_kernel_vectors(Matrix(F, a.dim, max(1, n * a.dim), rows))


def centre_of_SG_check(data: SkewGroupData) -> dict:
    """Compare Z(SG) with the G-fixed part of Z(S) for outer actions."""
    rep = infinitesimally_outer(data)
    if not rep.outer:
        return {"applicable": False}
    S = data.S
    F = S.field
    zS = centre(S)
    fixed = Subspace(F, data.R_basis)
    zS_G = Subspace(F, zS)
    # Z(S)^G = Z(S) cap S^G
    inter = _intersection_dim(zS, data.R_basis, F)
    zSG = centre(data.SG)
    out = {"applicable": True, "dim_centre_SG": len(zSG), "dim_centre_S_fixed": inter,
           "agree": len(zSG) == inter}
    if S.is_commutative:
        embedded = Subspace(F, [data.embed_S(v) for v in data.R_basis])
        out["centre_is_R"] = embedded == Subspace(F, zSG)
    return out


def _intersection_dim(u, v, F) -> int:
    return len(u) + len(v) - Subspace(F, list(u) + list(v)).dim


# ----------------------------------------------------------------------
# separability and the Noether different


@dataclass
class RelativeTensor:
    """S (x)_R S as an S-bimodule, with its multiplication map."""
    S: Algebra
    R_images: list
    tensor: TensorProduct
    bimodule: Bimodule
    mu: Matrix


def relative_tensor(S: Algebra, R: Algebra, R_images) -> RelativeTensor:
    reg = regular_bimodule(S)
    X = restrict_bimodule(reg, S, _basis_images(S), R, R_images)
    Y = restrict_bimodule(reg, R, R_images, S, _basis_images(S))
    T = TensorProduct(X, Y)
    F = S.field
    one = F.one
    rows = []
    for q in range(T.dim):
        s, t = T.lift(q)
        rows.append(S.mul_sparse({s: one}, {t: one}))
    mu = Matrix(F, T.dim, S.dim, rows)
    return RelativeTensor(S, R_images, T, T.bimodule, mu)


def _basis_images(S):
    one = S.field.one
    return [{i: one} for i in range(S.dim)]


def noether_different(S: Algebra, R: Algebra, R_images) -> Span:
    """theta(S/R): image under multiplication of the S-invariants of S (x)_R S."""
    if not S.is_commutative:
        raise AlgebraError("the Noether different is defined here for commutative S")
    rt = relative_tensor(S, R, R_images)
    B = rt.bimodule
    F = S.field
    blocks = None
    for i in range(S.dim):
        m = B.left[i] - B.right[i]
        blocks = m if blocks is None else blocks.hstack(m)
    inv = left_kernel_vectors(blocks) if blocks is not None else []
    images = [rt.mu.apply_sparse(v) for v in inv]
    theta = Span(F, S.dim, [v for v in images if v])
    if theta.dim and not is_two_sided_ideal(S, theta.rows):
        raise AlgebraError("computed different is not an ideal")
    return theta


@dataclass
class SeparabilityResult:
    separable: bool
    section: Matrix           # S -> S (x)_R S, bimodule map with mu o section = id
    different_criterion_agrees: bool = None   # theta = Z(S) exactly when separable


def separability_check(S: Algebra, R: Algebra, R_images) -> SeparabilityResult:
    """Look for an S-bimodule section of S (x)_R S -> S by a linear solve."""
    rt = relative_tensor(S, R, R_images)
    F = S.field
    homs = bimodule_hom_space(regular_bimodule(S), rt.bimodule)
    d = S.dim
    # unknowns c_k with sum c_k H_k mu = I
    prods = [h @ rt.mu for h in homs]
    rows = []
    for r in range(d):
        for c in range(d):
            rows.append({k: P.rows[r].get(c) for k, P in enumerate(prods) if P.rows[r].get(c)})
    eq = Matrix(F, d * d, len(homs), rows)
    rhs = [F.one if r == c else F.zero for r in range(d) for c in range(d)]
    sol = solve_linear(eq, rhs) if homs else None
    if sol is None:
        res = SeparabilityResult(False, None)
    else:
        section = Matrix(F, d, rt.tensor.dim)
        for k, x in enumerate(sol):
            if x:
                section = section + homs[k].scale(x)
        res = SeparabilityResult(True, section)
    if S.is_commutative:
        theta = noether_different(S, R, R_images)
        res.different_criterion_agrees = (theta.dim == len(centre(S))) == res.separable
    return res


# ----------------------------------------------------------------------
# the (SG, R) context


@dataclass
class SGContextReport:
    context: object           # MoritaContext with e onto the End(fS) = R corner
    corner_is_R: bool
    defect_dim: int           # dim SG/SfS
    defect_dims_agree: bool
    defect_prime_dim: int
    defect_prime_expected: int
    grade: GradeBound         # grade_SG(SG/SfS)
    grade_in_C: GradeBound
    fS_checks: dict
    morita_equivalence: bool

    @property
    def ok(self) -> bool:
        return (self.corner_is_R and self.defect_dims_agree
                and self.defect_prime_dim == self.defect_prime_expected
                and all(self.fS_checks.values()))


def sg_context_and_defect(data: SkewGroupData, cutoff: int = 4) -> SGContextReport:
    """The context End_SG(SG + fS) with e the projection onto fS."""
    from .morita import auslander_context
    SG, S = data.SG, data.S
    F = S.field
    fS = data.fS
    one = F.one
    # fS agrees with the right ideal f.SG
    gen_mod, span = submodule(regular_module(SG),
                              [SG.mul_sparse(data.f, {k: one}) for k in range(SG.dim)])
    # left multiplication by r in R is an SG-endomorphism of fS
    ends = hom_space(fS, fS)
    r_maps = [Matrix(F, S.dim, S.dim, [S.mul_sparse(r, {i: one}) for i in range(S.dim)])
              for r in data.R_basis]
    commute = all((L @ A) == (A @ L) for L in r_maps for A in fS.action)
    r_span = Subspace(F, [_flat(L) for L in r_maps]).dim
    fS_checks = {"same_dim_as_f_SG": gen_mod.dim == fS.dim,
                 "R_acts_by_endomorphisms": commute,
                 "End_fS_is_R": len(ends) == data.R.dim == r_span}
    aus = auslander_context(SG, fS, name="End(fS+SG)")
    ctx = aus.swapped()
    corner_is_R = ctx.A.dim == data.R.dim and ctx.A.is_commutative == data.R.is_commutative
    sgbar = data.defect.algebra.dim
    cbar = ctx.defect.algebra.dim
    cbar_prime = ctx.defect_prime.algebra.dim
    grade = grade_of(SG, data.defect_module, cutoff)
    grade_C = grade_of(ctx.C, ctx.defect_right, cutoff)
    return SGContextReport(ctx, corner_is_R, sgbar, sgbar == cbar, cbar_prime,
                           data.R.dim - data.trace_rank, grade, grade_C, fS_checks,
                           sgbar == 0)


def _flat(m: Matrix) -> dict:
    out = {}
    for r, row in enumerate(m.rows):
        for c, x in row.items():
            out[r * m.ncols + c] = x
    return out


# ----------------------------------------------------------------------
# group actions on Hochschild cochains


def transport_cochain(bar: BarComplex, n: int, cochain: dict, arg_images, value_images) -> dict:
    """psi(b_u) = V(phi(P b_{u_1}, ..., P b_{u_n})).

    ``arg_images[u]`` is P(b_u) and ``value_images[k]`` is V(b_k), both
    sparse.  For a group element g take P = g^{-1} on A and V the action
    of g on the coefficients.
    """
    d, m = bar.d, bar.m
    F = bar.field
    p = F.p
    # inverse lookup: for each argument index t, the u with P(b_u) involving b_t
    back = [[] for _ in range(d)]
    for u, img in enumerate(arg_images):
        for t, c in img.items():
            back[t].append((u, c))
    out = {}
    for idx, x in cochain.items():
        t, k = divmod(idx, m)
        digits = []
        for _ in range(n):
            t, r = divmod(t, d)
            digits.append(r)
        digits.reverse()
        terms = [(0, x)]
        for dg in digits:
            terms = [(u0 * d + u, c0 * c) for u0, c0 in terms for u, c in back[dg]]
        for u, c in terms:
            base = u * m
            for k2, y in value_images[k].items():
                key = base + k2
                v = out.get(key, 0) + c * y
                if p is not None:
                    v %= p
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def fixed_class_dims(bar: BarComplex, n_max: int, operators) -> list:
    """Dimensions of the classes fixed by every operator, degree by degree.

    ``operators`` is a list of ``(arg_images, value_images)`` pairs.
    Commutation of each operator with the differential is asserted on
    every basis cochain of degree < n_max.
    """
    F = bar.field
    out = []
    for n in range(n_max + 1):
        reps = bar.cohomology_basis(n)
        if not reps:
            out.append(0)
            continue
        blocks = None
        for args, vals in operators:
            rows = []
            for i, z in enumerate(reps):
                coords = bar.class_coordinates(n, transport_cochain(bar, n, z, args, vals))
                c = dict(coords)
                _axpy(c, F.one, {i: F.one}, F.p)
                rows.append(c)
            m = Matrix(F, len(reps), len(reps), rows)
            blocks = m if blocks is None else blocks.hstack(m)
        out.append(len(left_kernel_vectors(blocks)) if blocks is not None else len(reps))
    return out


def commutes_with_differential(bar: BarComplex, n: int, args, vals, limit=None) -> bool:
    F = bar.field
    size = bar.dim(n)
    step = 1 if limit is None or size <= limit else max(1, size // limit)
    for idx in range(0, size, step):
        lhs = bar.apply(n, transport_cochain(bar, n, {idx: F.one}, args, vals))
        rhs = transport_cochain(bar, n + 1, bar.apply(n, {idx: F.one}), args, vals)
        if lhs != rhs:
            return False
    return True


def _conjugation_images(data: SkewGroupData, g: int) -> list:
    """b -> g b g^{-1} on SG."""
    SG = data.SG
    one = SG.field.one
    eg = data.element_of_group(g)
    eginv = data.element_of_group(data.group.inverse[g])
    return [SG.mul_sparse(SG.mul_sparse(eg, {k: one}), eginv) for k in range(SG.dim)]


def group_operators(data: SkewGroupData, coefficients: str):
    """Operators (P, V) for each g != e acting on cochains of S.

    ``coefficients`` is "SG" (conjugation) or "S" (the action itself).
    """
    G = data.group
    ops = []
    for g in range(G.order):
        if g == G.identity:
            continue
        args = data.action.images[G.inverse[g]]
        vals = _conjugation_images(data, g) if coefficients == "SG" else data.action.images[g]
        ops.append((args, vals))
    return ops


def SG_as_S_bimodule(data: SkewGroupData) -> Bimodule:
    imgs = data.S_images
    return restrict_bimodule(regular_bimodule(data.SG), data.S, imgs, data.S, imgs)


@dataclass
class DegenerationReport:
    applicable: bool
    lhs: list = None          # dim HH^i(SG, SG)
    rhs: list = None          # dim HH^i(S, SG)^G
    commutes: bool = None

    @property
    def ok(self) -> bool:
        return (not self.applicable) or (self.lhs == self.rhs and self.commutes)


def verify_degeneration(data: SkewGroupData, n_max: int = 3, cap=None) -> DegenerationReport:
    """Compare HH(SG, SG) with the G-invariants of HH(S, SG)."""
    if not data.order_invertible:
        return DegenerationReport(False)
    lhs = hh_via_ext(data.SG, None, n_max)
    bar = BarComplex(data.S, SG_as_S_bimodule(data), n_max, cap)
    ops = group_operators(data, "SG")
    commutes = all(commutes_with_differential(bar, n, a, v, limit=500)
                   for a, v in ops for n in range(min(n_max, 2)))
    rhs = fixed_class_dims(bar, n_max, ops)
    return DegenerationReport(True, lhs, rhs, commutes)


def invariant_hh_dims(data: SkewGroupData, n_max: int = 3, cap=None) -> list:
    """dim HH^i(S)^G."""
    bar = BarComplex(data.S, None, n_max, cap)
    return fixed_class_dims(bar, n_max, group_operators(data, "S"))


# ----------------------------------------------------------------------
# invariant-theoretic comparison


def annihilator_of_defect(data: SkewGroupData) -> dict:
    """Ann_S(SG/SfS) by two routes: kernel of S -> SG/SfS, and s with s.x = 0 = x.s."""
    S = data.S
    F = S.field
    one = F.one
    q = data.defect
    rows = [q.project(data.embed_S({i: one})) for i in range(S.dim)]
    kernel = left_kernel_vectors(Matrix(F, S.dim, max(q.algebra.dim, 1), rows))
    # direct: s kills every basis vector of the quotient on both sides
    SG = data.SG
    rows2 = []
    nq = q.algebra.dim
    for i in range(S.dim):
        s = data.embed_S({i: one})
        row = {}
        for t, c in enumerate(q.complement):
            for side, prod in ((0, SG.mul_sparse(s, {c: one})), (1, SG.mul_sparse({c: one}, s))):
                for k, x in q.project(prod).items():
                    row[(2 * t + side) * nq + k] = x
        rows2.append(row)
    direct = left_kernel_vectors(Matrix(F, S.dim, max(2 * nq * nq, 1), rows2))
    return {"kernel": Span(F, S.dim, kernel), "direct": Span(F, S.dim, direct)}


def twisted_bimodule(data: SkewGroupData, g: int) -> Bimodule:
    """S.g as an S-bimodule: s (t g) s' = s t g(s') g, realized on S."""
    S = data.S
    F = S.field
    one = F.one
    d = S.dim
    left = [Matrix(F, d, d, [S.mul_sparse({i: one}, {k: one}) for k in range(d)])
            for i in range(d)]
    right = [Matrix(F, d, d, [S.mul_sparse({k: one}, data.action.images[g][i])
                              for k in range(d)]) for i in range(d)]
    return Bimodule(S, S, d, left, right, f"S{data.group.labels[g]}")


@dataclass
class InvariantComparison:
    hypotheses: dict
    theta: Span
    annihilator: Span
    annihilator_routes_agree: bool
    depth: GradeBound
    grade: GradeBound
    clauses: dict              # name -> True / False / None (gated off)
    values: dict

    @property
    def ok(self) -> bool:
        return self.annihilator_routes_agree and all(v is not False for v in self.clauses.values())


def verify_invariant_comparison(data: SkewGroupData, cutoff: int = 4, n_max: int = 3,
                                cap=None) -> InvariantComparison:
    """Different, annihilator, grade, depth and the HH comparison for R = S^G."""
    S, R = data.S, data.R
    F = S.field
    commutative = S.is_commutative
    outer = infinitesimally_outer(data).outer
    hyp = {"commutative": commutative, "order_invertible": data.order_invertible,
           "outer": outer}
    theta = noether_different(S, R, data.R_basis)
    ann = annihilator_of_defect(data)
    ann_span = ann["kernel"]
    agree = ann_span.dim == ann["direct"].dim and all(v in ann["direct"].subspace()
                                                      for v in ann_span.rows)
    contained = all(v in ann_span.subspace() for v in theta.rows)
    depth = depth_on_ideal(S, theta.rows, cutoff)
    grade = grade_of(data.SG, data.defect_module, cutoff)
    full = commutative and data.order_invertible and outer
    clauses = {"different_annihilates": contained}
    values = {"theta_dim": theta.dim, "annihilator_dim": ann_span.dim,
              "defect_dim": data.defect.algebra.dim}
    c = depth.lower_bound
    clauses["grade_at_least_depth"] = grade.lower_bound >= c if full else None
    values["grade"] = grade.to_json()
    values["depth"] = depth.to_json()
    if full:
        top = min(c - 1, n_max)
        vanish = True
        tw = {}
        for g in range(data.group.order):
            if g == data.group.identity or top < 0:
                continue
            dims = hh_via_ext(S, twisted_bimodule(data, g), top)
            tw[data.group.labels[g]] = dims
            vanish = vanish and not any(dims)
        values["ext_twisted"] = tw
        clauses["twisted_ext_vanishes"] = vanish
        top = min(c - 2, n_max)
        if top >= 0:
            inv = invariant_hh_dims(data, top, cap)
            hr = hh_via_bar(R, None, top, cap)
            values["HH_S_invariant"] = inv
            values["HH_R"] = hr
            clauses["invariant_HH_matches_R"] = inv == hr
        else:
            clauses["invariant_HH_matches_R"] = None
        top = min(grade.lower_bound - 2, n_max)
        if top >= 1:
            S_R = restrict(regular_module(S), R, data.R_basis)
            dims = ext_dims(R, S_R, S_R, top)
            values["ext_R_S_S"] = dims
            clauses["S_rigid_over_R"] = not any(dims[1:])
        else:
            clauses["S_rigid_over_R"] = None
    else:
        for k in ("twisted_ext_vanishes", "invariant_HH_matches_R", "S_rigid_over_R"):
            clauses[k] = None
    return InvariantComparison(hyp, theta, ann_span, agree, depth, grade, clauses, values)


# ----------------------------------------------------------------------
# fixtures


def reflection_on_truncated_cubic(field=None) -> GroupAction:
    """Z/2 acting on K[x]/(x^3) by x -> -x."""
    from .corpus import truncated_polynomial
    from .linalg import QQ
    F = field or QQ
    S = truncated_polynomial(3, F)
    return GroupAction.from_generator(FiniteGroup.cyclic(2), S,
                                      [{0: 1}, {1: -1}, {2: 1}], "x -> -x")


def cyclic_shift_on_diagonal(n: int = 3, field=None) -> GroupAction:
    """Z/n permuting the coordinate idempotents of K^n cyclically."""
    from .corpus import diagonal
    from .linalg import QQ
    F = field or QQ
    S = diagonal(n, F)
    return GroupAction.from_generator(FiniteGroup.cyclic(n), S,
                                      [{(i + 1) % n: 1} for i in range(n)], "cyclic shift")


def galois_quadratic(d: int = 2, field=None) -> GroupAction:
    """Z/2 acting on K(sqrt d) by sqrt d -> -sqrt d."""
    from .corpus import quadratic_field
    from .linalg import QQ
    F = field or QQ
    S = quadratic_field(d, F)
    return GroupAction.from_generator(FiniteGroup.cyclic(2), S, [{0: 1}, {1: -1}],
                                      "conjugation")


def trivial_action(S: Algebra) -> GroupAction:
    one = S.field.one
    return GroupAction(FiniteGroup.trivial(), S, [[{j: one} for j in range(S.dim)]], "trivial")
