"""Morita contexts (C, e), their defects, and grade-based classification.

For an idempotent e of C with e' = 1 - e the Pierce pieces are

    A = eCe,  B = e'Ce',  M = e'Ce  (a (B, A)-bimodule),  N = eCe'  (an (A, B)-bimodule)

with multiplication maps f: M (x)_A N -> B, g: N (x)_B M -> A and
mu_e: Ce (x)_A eC -> C.  The defects are C/CeC and C/Ce'C.
"""
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import (Algebra, algebra_from_maps, flatten_matrix, pierce_decompose,
                      quotient_algebra, two_sided_ideal, coordinate_solver)
from .errors import AlgebraError, DimensionError
from .homology import (GradeBound, ext_dims, grade_of, global_dimension, tor_dims,
                       quotient_by_ideal)
from .linalg import Matrix, Span, Subspace, kernel_from_images, sparse, _axpy
from .modules import (Bimodule, RightModule, TensorProduct, direct_sum, hom_space,
                      is_generator, is_projective, left_regular_module, norm_and_stable_end,
                      op_algebra, quotient_module, regular_module, trace_ideal, end_algebra)


def _span_bimodule(C: Algebra, span: Span, left_alg, left_elems, right_alg, right_elems,
                   name=None) -> Bimodule:
    """Bimodule structure on a subspace of C closed under the given products."""
    F = C.field
    n = span.dim
    left = [Matrix(F, n, n, [span.sparse_coords(C.mul_sparse(x, v)) for v in span.rows])
            for x in left_elems]
    right = [Matrix(F, n, n, [span.sparse_coords(C.mul_sparse(v, y)) for v in span.rows])
             for y in right_elems]
    return Bimodule(left_alg, right_alg, n, left, right, name)


@dataclass
class MultiplicationMap:
    """A multiplication map out of a balanced tensor product."""
    tensor: TensorProduct
    rows: list            # images of the quotient basis, sparse in target coordinates
    target_dim: int

    @cached_property
    def rank(self) -> int:
        return Subspace(self.tensor.field, self.rows).dim

    @property
    def source_dim(self) -> int:
        return self.tensor.dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def cokernel_dim(self) -> int:
        return self.target_dim - self.rank

    @property
    def kernel_dim(self) -> int:
        return self.source_dim - self.rank


class MoritaContext:
    """The Morita context defined by an idempotent ``e`` of ``C``."""

    def __init__(self, C: Algebra, e, name=None):
        self.C = C
        self.field = C.field
        self.e = e if isinstance(e, dict) else sparse(e, C.field)
        self.pierce = pierce_decompose(C, self.e)
        self.e_prime = self.pierce.e_prime
        self.A = self.pierce.A
        self.B = self.pierce.B
        self.name = name

    def __repr__(self):
        d = self.pierce.dims()
        return f"<MoritaContext {self.name or ''} dim C={self.C.dim} {d}>"

    # spans and bimodules ---------------------------------------------

    @property
    def A_basis(self):
        return self.pierce.A_part.basis

    @property
    def B_basis(self):
        return self.pierce.B_part.basis

    @cached_property
    def C_basis(self):
        one = self.field.one
        return [{i: one} for i in range(self.C.dim)]

    def _side_span(self, left, right) -> Span:
        C = self.C
        one = self.field.one
        vecs = []
        for i in range(C.dim):
            v = {i: one}
            if left is not None:
                v = C.mul_sparse(left, v)
            if right is not None:
                v = C.mul_sparse(v, right)
            if v:
                vecs.append(v)
        return Span(self.field, C.dim, vecs)

    @cached_property
    def M(self) -> Bimodule:
        """e'Ce as a (B, A)-bimodule."""
        return _span_bimodule(self.C, self.pierce.M_part.span, self.B, self.B_basis,
                              self.A, self.A_basis, "M")

    @cached_property
    def N(self) -> Bimodule:
        """eCe' as an (A, B)-bimodule."""
        return _span_bimodule(self.C, self.pierce.N_part.span, self.A, self.A_basis,
                              self.B, self.B_basis, "N")

    @cached_property
    def Ce(self) -> Bimodule:
        return _span_bimodule(self.C, self._side_span(None, self.e), self.C, self.C_basis,
                              self.A, self.A_basis, "Ce")

    @cached_property
    def eC(self) -> Bimodule:
        return _span_bimodule(self.C, self._side_span(self.e, None), self.A, self.A_basis,
                              self.C, self.C_basis, "eC")

    # multiplication maps ---------------------------------------------

    def _mult_map(self, X: Bimodule, Y: Bimodule, xs: Span, ys: Span, target: Span):
        T = TensorProduct(X, Y)
        C = self.C
        rows = []
        for q in range(T.dim):
            s, t = T.lift(q)
            prod = C.mul_sparse(xs.rows[s], ys.rows[t])
            rows.append(target.sparse_coords(prod))
        return MultiplicationMap(T, rows, target.dim)

    @cached_property
    def f(self) -> MultiplicationMap:
        """f: M (x)_A N -> B."""
        P = self.pierce
        return self._mult_map(self.M, self.N, P.M_part.span, P.N_part.span, P.B_part.span)

    @cached_property
    def g(self) -> MultiplicationMap:
        """g: N (x)_B M -> A."""
        P = self.pierce
        return self._mult_map(self.N, self.M, P.N_part.span, P.M_part.span, P.A_part.span)

    @cached_property
    def mu(self) -> MultiplicationMap:
        """mu_e: Ce (x)_A eC -> C."""
        full = Span(self.field, self.C.dim, self.C_basis)
        return self._mult_map(self.Ce, self.eC, self._side_span(None, self.e),
                              self._side_span(self.e, None), full)

    # defects ----------------------------------------------------------

    @cached_property
    def ideal(self) -> Span:
        """CeC."""
        return two_sided_ideal(self.C, [self.e])

    @cached_property
    def ideal_prime(self) -> Span:
        """Ce'C."""
        return two_sided_ideal(self.C, [self.e_prime])

    @cached_property
    def defect(self):
        """C/CeC as QuotientData."""
        return quotient_algebra(self.C, self.ideal)

    @cached_property
    def defect_prime(self):
        return quotient_algebra(self.C, self.ideal_prime)

    @cached_property
    def defect_right(self) -> RightModule:
        """C/CeC as a right C-module."""
        return quotient_by_ideal(self.C, self.ideal.rows)

    @cached_property
    def defect_left(self) -> RightModule:
        """C/CeC as a left C-module (right module over C^op)."""
        return quotient_module(left_regular_module(self.C), self.ideal.rows).module

    @cached_property
    def defect_prime_right(self) -> RightModule:
        return quotient_by_ideal(self.C, self.ideal_prime.rows)

    def swapped(self) -> "MoritaContext":
        """The context (C, e')."""
        return MoritaContext(self.C, self.e_prime, f"{self.name}'" if self.name else None)


# ----------------------------------------------------------------------
# fundamental sequence


@dataclass
class FundamentalSequence:
    """0 -> Omega -> Ce (x)_A eC -> C -> C/CeC -> 0, with its checks."""
    tensor_dim: int
    mu_rank: int
    omega_dim: int
    defect_dim: int
    omega_basis: list          # sparse vectors in the tensor product
    checks: dict               # name -> bool
    tor2_dim: object = None    # dim Tor_2^C(C-bar, C-bar) when computed

    @property
    def exact(self) -> bool:
        return all(self.checks.values())


def fundamental_sequence(ctx: MoritaContext, with_tor=True) -> FundamentalSequence:
    F = ctx.field
    C = ctx.C
    mu = ctx.mu
    T = mu.tensor
    omega = kernel_from_images(mu.rows, F)
    image = Span(F, C.dim, Subspace(F, mu.rows).basis())
    ideal = ctx.ideal
    defect_dim = ctx.defect.algebra.dim
    checks = {}
    checks["image_equals_ideal"] = (image.dim == ideal.dim
                                    and all(r in image for r in ideal.rows))
    checks["exact_at_tensor"] = len(omega) + mu.rank == T.dim
    checks["exact_at_C"] = C.dim - mu.rank == defect_dim
    TB = T.bimodule
    om = Subspace(F, omega)
    checks["omega_sub_bimodule"] = all(
        r.apply_sparse(w) in om for w in omega for r in TB.left + TB.right)
    eL = TB.left_matrix(ctx.e)
    eR = TB.right_matrix(ctx.e)
    checks["e_kills_omega_left"] = all(not eL.apply_sparse(w) for w in omega)
    checks["e_kills_omega_right"] = all(not eR.apply_sparse(w) for w in omega)
    checks["defect_is_coker_f"] = defect_dim == ctx.f.cokernel_dim
    tor2 = None
    if with_tor:
        if defect_dim == 0:
            tor2 = 0
        else:
            tor2 = tor_dims(C, ctx.defect_right, ctx.defect_left, 2)[2]
        checks["omega_is_tor2"] = tor2 == len(omega)
    return FundamentalSequence(T.dim, mu.rank, len(omega), defect_dim, omega, checks, tor2)


# ----------------------------------------------------------------------
# the map alpha_C


@dataclass
class AlphaData:
    """alpha_C: C -> End_A(Ce) and its blocks beta and g-sharp."""
    rank: int
    dim_C: int
    dim_end: int
    beta_rank: int
    dim_B: int
    dim_end_M: int
    gsharp_rank: int
    dim_N: int
    dim_dual_M: int

    @property
    def injective(self) -> bool:
        return self.rank == self.dim_C

    @property
    def bijective(self) -> bool:
        return self.injective and self.dim_end == self.dim_C

    @property
    def beta_iso(self) -> bool:
        return self.beta_rank == self.dim_B == self.dim_end_M

    @property
    def gsharp_iso(self) -> bool:
        return self.gsharp_rank == self.dim_N == self.dim_dual_M


def alpha_map_check(ctx: MoritaContext) -> AlphaData:
    """Rank of left multiplication C -> End_A(Ce), by linear algebra only."""
    F = ctx.field
    Ce = ctx.Ce
    ends = hom_space(Ce.right_module(), Ce.right_module())
    alpha = Subspace(F, [flatten_matrix(L) for L in Ce.left])
    M = ctx.M
    beta = Subspace(F, [flatten_matrix(L) for L in M.left])
    end_M = hom_space(M.right_module(), M.right_module())
    # g-sharp: n -> (m -> n m), a map M -> A
    P = ctx.pierce
    C = ctx.C
    gs = Subspace(F)
    for nvec in P.N_part.basis:
        rows = [P.A_part.span.sparse_coords(C.mul_sparse(nvec, mvec)) for mvec in P.M_part.basis]
        gs.add(flatten_matrix(Matrix(F, len(rows), ctx.A.dim, rows)))
    dual_M = hom_space(M.right_module(), regular_module(ctx.A))
    return AlphaData(alpha.dim, C.dim, len(ends), beta.dim, ctx.B.dim, len(end_M),
                     gs.dim, P.N_part.dim, len(dual_M))


# ----------------------------------------------------------------------
# classification


def wedderburn_projective(B: Algebra, N: RightModule) -> dict:
    """Whether N is a Wedderburn projective over B.

    That is: N is projective and the map from B to the endomorphisms of
    Hom_B(N, B) over End_B(N) (b acting by left multiplication) is bijective.
    """
    F = B.field
    proj, _ = is_projective(B, N)
    E, ebasis, _ = end_algebra(N)
    dual = hom_space(N, regular_module(B))
    result = {"projective": proj, "injective": False, "bijective": False}
    if not dual:
        result["injective"] = B.dim == 0
        result["bijective"] = B.dim == 0
        return result
    coords = coordinate_solver(F, [flatten_matrix(h) for h in dual], N.dim * B.dim)
    # dual is a right E-module by precomposition: lam . phi = lam o phi
    acts = []
    for phi in ebasis:
        acts.append(Matrix(F, len(dual), len(dual), [coords(flatten_matrix(phi @ lam))
                                                     for lam in dual]))
    dual_mod = RightModule(E, len(dual), acts, "Hom_B(N,B)")
    ends = hom_space(dual_mod, dual_mod)
    left = Subspace(F)
    for i in range(B.dim):
        L = B.left_mats[i]
        rows = [coords(flatten_matrix(lam @ L)) for lam in dual]
        left.add(flatten_matrix(Matrix(F, len(dual), len(dual), rows)))
    result["injective"] = left.dim == B.dim
    result["bijective"] = result["injective"] and len(ends) == B.dim
    return result


@dataclass
class CheckResult:
    name: str
    passed: bool
    data: dict = dc_field(default_factory=dict)


@dataclass
class ContextReport:
    dims: dict
    defect_dim: int
    defect_prime_dim: int
    grade: GradeBound
    left_grade: GradeBound
    grade_prime: GradeBound
    flags: dict
    checks: list

    def check(self, name):
        return next(c for c in self.checks if c.name == name)


def classify_context(ctx: MoritaContext, cutoff: int = 5, cross_checks=True) -> ContextReport:
    """Defects, grades and the Morita/Auslander/Wedderburn flags of (C, e).

    With ``cross_checks`` the equivalent characterisations of each flag are
    recomputed by independent routes and compared.
    """
    C = ctx.C
    dd = ctx.defect.algebra.dim
    ddp = ctx.defect_prime.algebra.dim
    grade = grade_of(C, ctx.defect_right, cutoff)
    lgrade = grade_of(op_algebra(C), ctx.defect_left, cutoff)
    gprime = grade_of(C, ctx.defect_prime_right, cutoff)
    flags = {
        "morita_idempotent": dd == 0,
        "morita_equivalence": dd == 0 and ddp == 0,
        "auslander": grade.at_least(2),
        "left_auslander": lgrade.at_least(2),
        "wedderburn": ddp == 0 and grade.at_least(2),
        "prime_auslander": gprime.at_least(2),
    }
    checks = []
    if cross_checks:
        checks.extend(_cross_checks(ctx, flags, grade, lgrade, cutoff))
    dims = dict(ctx.pierce.dims())
    dims["C"] = C.dim
    return ContextReport(dims, dd, ddp, grade, lgrade, gprime, flags, checks)


def _cross_checks(ctx, flags, grade, lgrade, cutoff):
    out = []
    A, B = ctx.A, ctx.B
    M, N = ctx.M, ctx.N
    mu, f, g = ctx.mu, ctx.f, ctx.g
    dd = ctx.defect.algebra.dim
    ddp = ctx.defect_prime.algebra.dim

    # Morita idempotent <=> mu_e onto <=> f onto; then both are bijective
    ok = (flags["morita_idempotent"] == mu.surjective == f.surjective)
    if flags["morita_idempotent"]:
        ok = ok and mu.injective and f.injective
    out.append(CheckResult("morita-idempotent-criteria", ok,
                           {"mu_rank": mu.rank, "f_rank": f.rank, "defect_dim": dd}))
    out.append(CheckResult("defects-are-cokernels", dd == f.cokernel_dim and ddp == g.cokernel_dim,
                           {"coker_f": f.cokernel_dim, "coker_g": g.cokernel_dim}))

    alpha = alpha_map_check(ctx)
    inj_ok = alpha.injective == grade.at_least(1) if (grade.exact or grade.cutoff >= 1) else True
    bij_ok = alpha.bijective == grade.at_least(2) if (grade.exact or grade.cutoff >= 2) else True
    out.append(CheckResult("alpha-grade", inj_ok and bij_ok,
                           {"alpha_rank": alpha.rank, "dim_end": alpha.dim_end,
                            "grade": grade.to_json()}))

    # Morita idempotent <=> (M projective, beta iso, g-sharp iso)
    #                   <=> (N projective as left A-module, left grade >= 2)
    m_proj, _ = is_projective(A, M.right_module())
    n_left = N.left_module()
    n_proj, _ = is_projective(op_algebra(A), n_left)
    second = m_proj and alpha.beta_iso and alpha.gsharp_iso
    third = n_proj and lgrade.at_least(2)
    out.append(CheckResult("morita-auslander-equivalence",
                           flags["morita_idempotent"] == second == third,
                           {"M_projective": m_proj, "beta_iso": alpha.beta_iso,
                            "gsharp_iso": alpha.gsharp_iso, "N_projective": n_proj,
                            "left_grade": lgrade.to_json()}))

    # Wedderburn <=> (Auslander and M a generator) <=> ((C, e') Auslander and
    # N Wedderburn projective over B)
    m_gen = is_generator(A, M.right_module()) if A.dim else M.dim == 0
    wp = wedderburn_projective(B, N.right_module())
    w2 = flags["auslander"] and m_gen
    w3 = flags["prime_auslander"] and wp["projective"] and wp["bijective"]
    data = {"M_generator": m_gen, "N_wedderburn_projective": wp, "wedderburn": flags["wedderburn"]}
    ok = flags["wedderburn"] == w2 == w3
    if flags["wedderburn"]:
        tau = trace_ideal(B, N.right_module())
        data["B_mod_trace_dim"] = B.dim - tau.dim
        ok = ok and B.dim - tau.dim == dd
    out.append(CheckResult("wedderburn-criteria", ok, data))
    return out


# ----------------------------------------------------------------------
# Auslander contexts


def _embed_block(F, size, rows_off, cols_off, mat):
    out = Matrix(F, size, size)
    for r, row in enumerate(mat.rows):
        if row:
            out.rows[rows_off + r] = {cols_off + c: x for c, x in row.items()}
    return out


class AuslanderContext(MoritaContext):
    """C = End_A(M + A) with e the projection onto A.

    Maps compose as "apply the right factor first" and act on row vectors;
    the Hom basis is assembled blockwise in the order Hom(A, A),
    Hom(A, M), Hom(M, A), End(M), matching A | M | N | B.
    """

    def __init__(self, A: Algebra, module: RightModule, name=None):
        if module.algebra is not A:
            raise DimensionError("module is not over the given algebra")
        F = A.field
        self.base = A
        self.module = module
        reg = regular_module(A)
        m, d = module.dim, A.dim
        size = m + d
        blocks = [
            (hom_space(reg, reg), m, m),          # A -> A
            (hom_space(reg, module), m, 0),       # A -> M
            (hom_space(module, reg), 0, m),       # M -> A
            (hom_space(module, module), 0, 0),    # M -> M
        ]
        mats = []
        sizes = []
        for basis, ro, co in blocks:
            sizes.append(len(basis))
            mats.extend(_embed_block(F, size, ro, co, h) for h in basis)
        self.block_dims = {"End_A(A)": sizes[0], "Hom(A,M)": sizes[1],
                           "Hom(M,A)": sizes[2], "End_A(M)": sizes[3]}
        C, coords = algebra_from_maps(F, mats, name=name or "End(M+A)")
        proj = Matrix(F, size, size, [{} for _ in range(m)]
                      + [{m + i: F.one} for i in range(d)])
        e = coords(flatten_matrix(proj))
        self.maps = mats
        super().__init__(C, e, name)

    def identification_checks(self) -> dict:
        """Pierce pieces match End(M), M, M* and A."""
        d = self.pierce.dims()
        return {
            "A": d["A"] == self.base.dim == self.block_dims["End_A(A)"],
            "M": d["M"] == self.module.dim == self.block_dims["Hom(A,M)"],
            "N": d["N"] == self.block_dims["Hom(M,A)"],
            "B": d["B"] == self.block_dims["End_A(M)"],
        }


def auslander_context(A: Algebra, M: RightModule, name=None) -> AuslanderContext:
    return AuslanderContext(A, M, name)


# ----------------------------------------------------------------------
# grade of the stable endomorphism ring


@dataclass
class StableEndGradeResult:
    end_dim: int
    stable_dim: int
    grade_end: GradeBound           # grade of the stable End over End
    ext_MM: list                    # dim Ext^i_A(M, M), i = 0..cutoff
    grade_ext: GradeBound           # 1 + first i >= 1 with Ext^i(M, M) != 0
    top_end_ext: object = None      # dim Ext^g over End when g is exact
    top_MM_ext: object = None       # dim Ext^{g-1}_A(M, M)

    @property
    def agree(self) -> bool:
        if not self.grade_end.agrees(self.grade_ext):
            return False
        if self.grade_end.exact and self.grade_ext.exact:
            return self.top_end_ext == self.top_MM_ext and self.grade_end.value >= 2
        return True


def verify_stable_end_grade(A: Algebra, M: RightModule, cutoff: int = 5) -> StableEndGradeResult:
    """Compare the grade of the stable endomorphism ring with Ext_A(M, M).

    ``M`` must be a generator.  Both sides are computed independently: the
    left over End_A(M) from the stable quotient, the right by resolving M
    over A.
    """
    if not is_generator(A, M):
        raise AlgebraError("the module is not a generator")
    st = norm_and_stable_end(A, M)
    E = st.end
    stable_mod = quotient_by_ideal(E, st.norm_image.rows)
    g_end = grade_of(E, stable_mod, cutoff)
    ext = ext_dims(A, M, M, cutoff)
    first = next((i for i in range(1, cutoff + 1) if ext[i]), None)
    if first is not None and first + 1 <= cutoff:
        g_ext = GradeBound(first + 1, cutoff)
    else:
        g_ext = GradeBound(None, cutoff)
    res = StableEndGradeResult(E.dim, st.stable_dim, g_end, ext, g_ext)
    if g_end.exact:
        res.top_end_ext = g_end.ext_dims[g_end.value]
    if g_ext.exact:
        res.top_MM_ext = ext[g_ext.value - 1]
    return res


def projectivity_defect_check(A: Algebra, M: RightModule) -> dict:
    """Stable End vanishes iff M is projective; A/trace vanishes iff M generates."""
    st = norm_and_stable_end(A, M)
    proj, _ = is_projective(A, M)
    tau = trace_ideal(A, M)
    return {
        "stable_dim": st.stable_dim,
        "projective": proj,
        "trace_codim": A.dim - tau.dim,
        "generator": tau.dim == A.dim,
        "norm_consistent": st.consistent,
        "ok": (st.stable_dim == 0) == proj and (tau.dim == A.dim) == (A.dim - tau.dim == 0),
    }


def gldim_projectivity_check(A: Algebra, M: RightModule, cutoff: int = 4) -> dict:
    """For a generator M: if End_A(M) has global dimension d and
    Ext^{1..d-1}_A(M, M) = 0, then M is projective and gldim A = d.

    Reported as undetermined when the global dimension cannot be computed
    (positive characteristic) or exceeds the cutoff.
    """
    if not is_generator(A, M):
        return {"determined": False, "generator": False}
    E, _, _ = end_algebra(M)
    d, determined = global_dimension(E, cutoff)
    if not determined:
        return {"determined": False}
    ext = ext_dims(A, M, M, max(d - 1, 0))
    hyp = all(ext[i] == 0 for i in range(1, d))
    proj, _ = is_projective(A, M)
    out = {"determined": True, "gldim_end": d, "hypothesis": hyp, "projective": proj}
    if hyp:
        gA, detA = global_dimension(A, cutoff)
        out["gldim_A"] = gA
        out["ok"] = proj and detA and gA == d
    else:
        out["ok"] = True
    return out
