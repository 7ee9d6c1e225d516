"""Small algebras, modules and idempotents used by tests and the suite.

Everything here is built from explicit structure constants; the skew group
algebras come from :mod:`hochmorita.groups`.
"""
import itertools

from .algebra import Algebra, tensor, direct_product
from .linalg import QQ, Field, Matrix
from .modules import (RightModule, direct_sum, regular_module, quotient_module,
                      submodule)


def rationals(field: Field = QQ) -> Algebra:
    return Algebra(field, 1, [[{0: field.one}]], [field.one], ["1"], "K")


def truncated_polynomial(n: int, field: Field = QQ, var="x") -> Algebra:
    """K[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    entries = [(i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n]
    labels = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, n)]
    unit = [1] + [0] * (n - 1)
    return Algebra.from_entries(field, n, entries, unit, labels, f"K[{var}]/({var}^{n})")


def dual_numbers(field: Field = QQ, var="x") -> Algebra:
    return truncated_polynomial(2, field, var)


def matrix_algebra(n: int, field: Field = QQ) -> Algebra:
    """M_n(K) with basis E_rc at index r * n + c."""
    entries = []
    for r, c, d in itertools.product(range(n), repeat=3):
        entries.append((r * n + c, c * n + d, r * n + d, 1))
    unit = [1 if r == c else 0 for r in range(n) for c in range(n)]
    labels = [f"E{r + 1}{c + 1}" for r in range(n) for c in range(n)]
    return Algebra.from_entries(field, n * n, entries, unit, labels, f"M{n}")


def matrices_over(a: Algebra, n: int) -> Algebra:
    """M_n(A) = M_n(K) (x) A."""
    m = tensor(matrix_algebra(n, a.field), a)
    m.name = f"M{n}({a.name})"
    return m


def upper_triangular(n: int = 2, field: Field = QQ) -> Algebra:
    """Upper triangular n x n matrices; basis E_rc (r <= c) in row-major order."""
    idx = [(r, c) for r in range(n) for c in range(n) if r <= c]
    pos = {rc: i for i, rc in enumerate(idx)}
    entries = []
    for (r, c), (c2, d) in itertools.product(idx, repeat=2):
        if c == c2:
            entries.append((pos[(r, c)], pos[(c2, d)], pos[(r, d)], 1))
    unit = [1 if r == c else 0 for r, c in idx]
    labels = [f"E{r + 1}{c + 1}" for r, c in idx]
    return Algebra.from_entries(field, len(idx), entries, unit, labels, f"T{n}")


def diagonal(n: int, field: Field = QQ) -> Algebra:
    """K^n with basis the coordinate idempotents."""
    entries = [(i, i, i, 1) for i in range(n)]
    return Algebra.from_entries(field, n, entries, [1] * n,
                                [f"e{i + 1}" for i in range(n)], f"K^{n}")


def quadratic_field(d: int = 2, field: Field = QQ) -> Algebra:
    """K(sqrt d) = K[r]/(r^2 - d), basis 1, r."""
    entries = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, d)]
    return Algebra.from_entries(field, 2, entries, [1, 0], ["1", f"sqrt{d}"], f"K(sqrt{d})")


def path_algebra_A2(field: Field = QQ) -> Algebra:
    """Path algebra of 1 -a-> 2; basis e1, e2, a with e1 a = a = a e2."""
    entries = [(0, 0, 0, 1), (1, 1, 1, 1), (0, 2, 2, 1), (2, 1, 2, 1)]
    return Algebra.from_entries(field, 3, entries, [1, 1, 0], ["e1", "e2", "a"], "KA2")


def nakayama_A3_radsq(field: Field = QQ) -> Algebra:
    """Path algebra of 1 -a-> 2 -b-> 3 modulo ab; basis e1, e2, e3, a, b."""
    entries = [(0, 0, 0, 1), (1, 1, 1, 1), (2, 2, 2, 1),
               (0, 3, 3, 1), (3, 1, 3, 1), (1, 4, 4, 1), (4, 2, 4, 1)]
    return Algebra.from_entries(field, 5, entries, [1, 1, 1, 0, 0],
                                ["e1", "e2", "e3", "a", "b"], "KA3/rad^2")


def bidual_numbers(field: Field = QQ) -> Algebra:
    """K[x, y]/(x^2, y^2) with basis 1, x, y, xy (commutative)."""
    return _square_zero_pair(field, 1, "K[x,y]/(x^2,y^2)")


def exterior_two(field: Field = QQ) -> Algebra:
    """Exterior algebra on two generators: basis 1, x, y, xy with yx = -xy."""
    return _square_zero_pair(field, -1, "Lambda(x,y)")


def _square_zero_pair(field, sign, name):
    entries = [(0, j, j, 1) for j in range(4)] + [(j, 0, j, 1) for j in range(1, 4)]
    entries += [(1, 2, 3, 1), (2, 1, 3, sign)]
    return Algebra.from_entries(field, 4, entries, [1, 0, 0, 0], ["1", "x", "y", "xy"], name)


# ----------------------------------------------------------------------
# modules


def module_from_dense(a: Algebra, mats, name=None) -> RightModule:
    """Right module from dense action matrices, one per basis element."""
    F = a.field
    ms = [Matrix.from_dense(F, m) for m in mats]
    dim = ms[0].nrows if ms else 0
    return RightModule(a, dim, ms, name)


def local_simple(a: Algebra) -> RightModule:
    """The simple module of a local algebra whose basis is 1 plus radical.

    Valid for the truncated polynomial algebras here: b_0 = 1 acts as 1,
    every other basis element as 0.
    """
    F = a.field
    mats = [Matrix.identity(F, 1)] + [Matrix(F, 1, 1) for _ in range(a.dim - 1)]
    return RightModule(a, 1, mats, "S")


def truncated_quotient(a: Algebra, k: int) -> RightModule:
    """K[x]/(x^k) as a right module over K[x]/(x^n)."""
    one = a.field.one
    return quotient_module(regular_module(a), [{i: one} for i in range(k, a.dim)], f"A/x^{k}").module


def vertex_module(a: Algebra, idempotent_index: int, vectors=None) -> RightModule:
    """e_i A for a basis idempotent e_i (the projective at vertex i)."""
    one = a.field.one
    vecs = []
    for j in range(a.dim):
        v = a.mul_sparse({idempotent_index: one}, {j: one})
        if v:
            vecs.append(v)
    mod, _ = submodule(regular_module(a), vecs, f"P{idempotent_index + 1}")
    return mod


def vertex_simple(a: Algebra, idempotent_index: int) -> RightModule:
    """One-dimensional module where e_i acts as 1 and every other basis element as 0."""
    F = a.field
    mats = [Matrix.identity(F, 1) if j == idempotent_index else Matrix(F, 1, 1)
            for j in range(a.dim)]
    return RightModule(a, 1, mats, f"S{idempotent_index + 1}")


def upper_triangular_simple(a: Algebra, vertex: int) -> RightModule:
    """Simple module of T2 on which E_vv acts as 1 (vertex is 0 or 1)."""
    idx = {0: 0, 1: 2}[vertex]
    return vertex_simple(a, idx)


def column_module(n: int, a: Algebra) -> RightModule:
    """K^n as a right M_n(K)-module (row vectors)."""
    F = a.field
    mats = []
    for r in range(n):
        for c in range(n):
            m = Matrix(F, n, n)
            m.rows[r] = {c: F.one}
            mats.append(m)
    return RightModule(a, n, mats, "K^n")


def diagonal_factor(a: Algebra, i: int) -> RightModule:
    return vertex_simple(a, i)


# ----------------------------------------------------------------------
# registry used by the suite, the CLI and the tests


def invariant_ring_of_cubic(field: Field = QQ) -> Algebra:
    """K[u]/(u^2), realized as the invariants of x -> -x on K[x]/(x^3)."""
    from .groups import build_skew_group, reflection_on_truncated_cubic
    R = build_skew_group(reflection_on_truncated_cubic(field)).R
    R.name = "K[u]/(u^2)"
    return R


def skew_truncated_cubic(field: Field = QQ) -> Algebra:
    from .groups import build_skew_group, reflection_on_truncated_cubic
    return build_skew_group(reflection_on_truncated_cubic(field)).SG


def skew_split_three(field: Field = QQ) -> Algebra:
    from .groups import build_skew_group, cyclic_shift_on_diagonal
    return build_skew_group(cyclic_shift_on_diagonal(3, field)).SG


CORPUS = {
    "rationals": rationals,
    "dual-numbers": dual_numbers,
    "truncated-cubic": lambda: truncated_polynomial(3),
    "invariant-dual-numbers": invariant_ring_of_cubic,
    "upper-triangular-2": upper_triangular,
    "matrices-2": lambda: matrix_algebra(2),
    "split-2": lambda: diagonal(2),
    "split-3": lambda: diagonal(3),
    "quadratic-field-2": quadratic_field,
    "path-A2": path_algebra_A2,
    "skew-truncated-cubic": skew_truncated_cubic,
    "skew-split-3": skew_split_three,
    "nakayama-A3": nakayama_A3_radsq,
    "bidual-numbers": bidual_numbers,
    "exterior-2": exterior_two,
}


def corpus_algebras() -> dict:
    """Name -> freshly built algebra, in a fixed order."""
    return {name: build() for name, build in CORPUS.items()}


def _unit_vector(c: Algebra, *indices) -> dict:
    return {i: c.field.one for i in indices}


def corpus_contexts() -> list:
    """``(name, builder)`` pairs; each builder returns a MoritaContext."""
    from .groups import build_skew_group, cyclic_shift_on_diagonal, reflection_on_truncated_cubic
    from .morita import MoritaContext, auslander_context

    def plain(alg, *idx):
        return lambda: MoritaContext(alg(), _unit_vector(alg(), *idx))

    def fixed(build, *idx):
        def make():
            c = build()
            return MoritaContext(c, _unit_vector(c, *idx))
        return make

    def aus(build_alg, build_mod):
        def make():
            a = build_alg()
            return auslander_context(a, build_mod(a))
        return make

    def skew_corner(build_action):
        def make():
            data = build_skew_group(build_action())
            F = data.SG.field
            n = data.group.order
            e = {k: F.div(x, F(n)) for k, x in data.f.items()}
            return MoritaContext(data.SG, e)
        return make

    D = dual_numbers
    return [
        ("matrices-2/E11", fixed(lambda: matrix_algebra(2), 0)),
        ("matrices-2-over-dual/E11", fixed(lambda: matrices_over(dual_numbers(), 2), 0)),
        ("upper-triangular-2/E11", fixed(upper_triangular, 0)),
        ("upper-triangular-2/E22", fixed(upper_triangular, 2)),
        ("split-2/e1", fixed(lambda: diagonal(2), 0)),
        ("path-A2/e1", fixed(path_algebra_A2, 0)),
        ("path-A2/e2", fixed(path_algebra_A2, 1)),
        ("nakayama-A3/e1", fixed(nakayama_A3_radsq, 0)),
        ("nakayama-A3/e1+e2", fixed(nakayama_A3_radsq, 0, 1)),
        ("dual-numbers/1", fixed(D, 0)),
        ("auslander(dual-numbers, S)", aus(D, local_simple)),
        ("auslander(dual-numbers, D+S)",
         aus(D, lambda a: direct_sum(regular_module(a), local_simple(a)))),
        ("auslander(truncated-cubic, S)", aus(lambda: truncated_polynomial(3), local_simple)),
        ("auslander(upper-triangular-2, S1)", aus(upper_triangular, lambda a: vertex_simple(a, 0))),
        ("auslander(nakayama-A3, S1)", aus(nakayama_A3_radsq, lambda a: vertex_simple(a, 0))),
        ("skew-split-3/averaging", skew_corner(lambda: cyclic_shift_on_diagonal(3))),
        ("skew-truncated-cubic/averaging", skew_corner(reflection_on_truncated_cubic)),
    ]


def grade_pairs() -> list:
    """``(name, A, M)`` with M = A + X a generator."""
    def gen(a, x):
        return direct_sum(regular_module(a), x)

    out = []
    D = dual_numbers()
    out.append(("dual-numbers + S", D, gen(D, local_simple(D))))
    out.append(("dual-numbers + D", D, gen(D, regular_module(D))))
    A3 = truncated_polynomial(3)
    out.append(("truncated-cubic + S", A3, gen(A3, local_simple(A3))))
    out.append(("truncated-cubic + A/x^2", A3, gen(A3, truncated_quotient(A3, 2))))
    T = upper_triangular()
    out.append(("upper-triangular-2 + S1", T, gen(T, vertex_simple(T, 0))))
    out.append(("upper-triangular-2 + S2", T, gen(T, vertex_simple(T, 2))))
    P = path_algebra_A2()
    out.append(("path-A2 + S1", P, gen(P, vertex_simple(P, 0))))
    out.append(("path-A2 + S2", P, gen(P, vertex_simple(P, 1))))
    N = nakayama_A3_radsq()
    out.append(("nakayama-A3 + S1", N, gen(N, vertex_simple(N, 0))))
    out.append(("nakayama-A3 + S2", N, gen(N, vertex_simple(N, 1))))
    E = bidual_numbers()
    out.append(("bidual-numbers + S", E, gen(E, local_simple(E))))
    L = exterior_two()
    out.append(("exterior-2 + S", L, gen(L, local_simple(L))))
    M2 = matrix_algebra(2)
    out.append(("matrices-2 + column", M2, gen(M2, column_module(2, M2))))
    return out


def rigidity_pairs() -> list:
    """``(name, A, M)`` with Ext^1_A(M, M) = 0 and HH^2(A) = 0."""
    T = upper_triangular()
    P = path_algebra_A2()
    N = nakayama_A3_radsq()
    return [
        ("upper-triangular-2, S1", T, vertex_simple(T, 0)),
        ("upper-triangular-2, S2", T, vertex_simple(T, 2)),
        ("path-A2, S2", P, vertex_simple(P, 1)),
        ("nakayama-A3, S1", N, vertex_simple(N, 0)),
    ]


def fixture_documents() -> dict:
    """Canonical JSON documents for the bundled fixtures, keyed by file stem."""
    from . import io
    from .groups import cyclic_shift_on_diagonal, galois_quadratic, reflection_on_truncated_cubic
    docs = {name: io.algebra_to_dict(a) for name, a in corpus_algebras().items()}

    def idem(stem, alg, *idx):
        d = io.idempotent_to_dict(alg, _unit_vector(alg, *idx))
        d["algebra"] = io.algebra_to_dict(alg)
        docs[stem] = d

    idem("matrices-2-E11", matrix_algebra(2), 0)
    idem("matrices-2-over-dual-E11", matrices_over(dual_numbers(), 2), 0)
    idem("upper-triangular-2-E11", upper_triangular(), 0)
    idem("upper-triangular-2-E22", upper_triangular(), 2)
    idem("nakayama-A3-e1", nakayama_A3_radsq(), 0)

    D = dual_numbers()
    docs["dual-numbers-simple"] = io.module_to_dict(local_simple(D))
    docs["dual-numbers-plus-simple"] = io.module_to_dict(
        direct_sum(regular_module(D), local_simple(D)))
    T = upper_triangular()
    docs["upper-triangular-2-S1"] = io.module_to_dict(vertex_simple(T, 0))
    N = nakayama_A3_radsq()
    docs["nakayama-A3-S1"] = io.module_to_dict(vertex_simple(N, 0))

    for stem, act in (("truncated-cubic-reflection", reflection_on_truncated_cubic()),
                      ("split-3-shift", cyclic_shift_on_diagonal(3)),
                      ("quadratic-field-galois", galois_quadratic(2))):
        d = io.action_to_dict(act)
        d["algebra"] = io.algebra_to_dict(act.algebra)
        docs[stem] = d
    return docs


def write_fixtures(directory) -> list:
    import os
    from .io import dump_json
    written = []
    for stem, doc in fixture_documents().items():
        path = os.path.join(directory, f"{stem}.json")
        with open(path, "wb") as fh:
            fh.write(dump_json(doc))
        written.append(path)
    return written
