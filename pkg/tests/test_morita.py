import pytest
from hypothesis import given, strategies as st

from hochmorita.corpus import (corpus_contexts, dual_numbers, grade_pairs, local_simple,
                               matrix_algebra, truncated_polynomial, upper_triangular,
                               vertex_simple)
from hochmorita.errors import AlgebraError
from hochmorita.linalg import QQ
from hochmorita.modules import direct_sum, regular_module
from hochmorita.morita import (MoritaContext, alpha_map_check, auslander_context,
                               classify_context, fundamental_sequence,
                               projectivity_defect_check, gldim_projectivity_check,
                               verify_stable_end_grade)
from hochmorita.homology import grade_of

CONTEXTS = corpus_contexts()
IDS = [n for n, _ in CONTEXTS]


@pytest.mark.parametrize("name,build", CONTEXTS, ids=IDS)
def test_fundamental_sequence(name, build):
    fs = fundamental_sequence(build())
    assert fs.exact, {k: v for k, v in fs.checks.items() if not v}
    assert fs.omega_dim == fs.tor2_dim


@pytest.mark.parametrize("name,build", CONTEXTS, ids=IDS)
def test_classification_cross_checks(name, build):
    rep = classify_context(build(), 5)
    assert all(c.passed for c in rep.checks), [c.name for c in rep.checks if not c.passed]


@pytest.mark.parametrize("name,build", CONTEXTS, ids=IDS)
def test_alpha_bijective_iff_grade_two(name, build):
    ctx = build()
    grade = grade_of(ctx.C, ctx.defect_right, 5)
    assert alpha_map_check(ctx).bijective == grade.at_least(2)


def test_matrix_corner_is_morita_equivalence():
    rep = classify_context(MoritaContext(matrix_algebra(2), {0: QQ(1)}), 5)
    assert rep.defect_dim == rep.defect_prime_dim == 0
    assert rep.flags["morita_equivalence"]
    assert rep.dims == {"A": 1, "M": 1, "N": 1, "B": 1, "C": 4}


def test_upper_triangular_corners():
    T = upper_triangular()
    # e = E11: C/CeC = E22 T = S2 embeds in T, so grade 0
    r1 = classify_context(MoritaContext(T, {0: QQ(1)}), 5)
    assert (r1.defect_dim, r1.grade.value) == (1, 0)
    # e = E22: C/CeC = S1 with 0 -> S2 -> P1 -> S1 -> 0, so grade 1
    r2 = classify_context(MoritaContext(T, {2: QQ(1)}), 5)
    assert (r2.defect_dim, r2.grade.value) == (1, 1)
    assert not r2.flags["auslander"]


def test_identity_idempotent():
    D = dual_numbers()
    rep = classify_context(MoritaContext(D, {0: QQ(1)}), 5)
    assert rep.defect_dim == 0 and rep.defect_prime_dim == 2
    assert rep.flags["morita_idempotent"] and not rep.flags["morita_equivalence"]


@given(st.integers(-5, 5), st.booleans())
def test_rank_one_idempotents_of_M2(t, upper):
    # E11 + t E12 and E11 + t E21 are idempotent and generate M2 as an ideal
    M2 = matrix_algebra(2)
    e = {0: QQ(1)}
    if t:
        e[1 if upper else 2] = QQ(t)
    ctx = MoritaContext(M2, e)
    assert ctx.pierce.dims() == {"A": 1, "M": 1, "N": 1, "B": 1}
    assert ctx.defect.algebra.dim == 0 and ctx.defect_prime.algebra.dim == 0


def test_non_idempotent_rejected():
    with pytest.raises(AlgebraError):
        MoritaContext(dual_numbers(), {1: QQ(1)})


def test_swapped_context_exchanges_defects():
    ctx = MoritaContext(upper_triangular(), {0: QQ(1)})
    sw = ctx.swapped()
    assert sw.defect.algebra.dim == ctx.defect_prime.algebra.dim
    assert sw.pierce.dims()["A"] == ctx.pierce.dims()["B"]


@pytest.mark.parametrize("build,mod", [
    (dual_numbers, local_simple),
    (lambda: truncated_polynomial(3), local_simple),
    (upper_triangular, lambda a: vertex_simple(a, 0)),
])
def test_auslander_contexts(build, mod):
    A = build()
    ctx = auslander_context(A, mod(A))
    assert all(ctx.identification_checks().values())
    rep = classify_context(ctx, 5)
    assert rep.flags["auslander"] and rep.grade.at_least(2)


def test_generator_gives_wedderburn_context():
    D = dual_numbers()
    ctx = auslander_context(D, direct_sum(regular_module(D), local_simple(D)))
    rep = classify_context(ctx, 5)
    assert rep.defect_prime_dim == 0 and rep.flags["wedderburn"]
    assert ctx.C.dim == 13


@pytest.mark.parametrize("name,A,M", grade_pairs(), ids=[n for n, _, _ in grade_pairs()])
def test_stable_end_grade(name, A, M):
    r = verify_stable_end_grade(A, M, 5)
    assert r.agree
    if r.grade_end.exact:
        assert r.top_end_ext == r.top_MM_ext


def test_stable_end_grade_reference_values():
    pairs = {n: (A, M) for n, A, M in grade_pairs()}
    assert verify_stable_end_grade(*pairs["dual-numbers + S"], 5).grade_end.value == 2
    # Ext^1(S1, S1) = 0 and Ext^2(S1, S1) != 0 over the radical-square-zero A3
    assert verify_stable_end_grade(*pairs["nakayama-A3 + S1"], 5).grade_end.value == 3
    assert not verify_stable_end_grade(*pairs["matrices-2 + column"], 5).grade_end.exact


def test_stable_end_grade_needs_generator():
    D = dual_numbers()
    with pytest.raises(AlgebraError):
        verify_stable_end_grade(D, local_simple(D), 3)


def test_projectivity_defect():
    D = dual_numbers()
    assert projectivity_defect_check(D, local_simple(D))["ok"]
    assert projectivity_defect_check(D, regular_module(D))["stable_dim"] == 0


def test_gldim_end_forces_projective():
    T = upper_triangular()
    out = gldim_projectivity_check(T, direct_sum(regular_module(T), vertex_simple(T, 0)), 4)
    assert out["determined"] and out["ok"]
    assert gldim_projectivity_check(T, vertex_simple(T, 0)) == {"determined": False,
                                                               "generator": False}
