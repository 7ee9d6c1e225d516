import pytest
from hypothesis import given, strategies as st

from hochmorita.algebra import (Algebra, centre, direct_product, enveloping, is_idempotent,
                                opposite, pierce_closure_checks, pierce_decompose,
                                quotient_algebra, radical_trace_form, tensor, two_sided_ideal,
                                validate_algebra)
from hochmorita.corpus import (bidual_numbers, corpus_algebras, corpus_contexts, dual_numbers,
                               exterior_two,
                               matrix_algebra, nakayama_A3_radsq, truncated_polynomial,
                               upper_triangular)
from hochmorita.errors import AlgebraError
from hochmorita.hochschild import hh_via_bar
from hochmorita.linalg import GF, QQ

CORPUS = corpus_algebras()


def test_corpus_size_and_dims():
    assert len(CORPUS) >= 12
    assert all(a.dim <= 9 for a in CORPUS.values())


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_validates(name):
    rep = validate_algebra(CORPUS[name])
    assert rep.valid, rep.failures


@pytest.mark.parametrize("p", [2, 3, 5])
def test_prime_field_algebras_validate(p):
    F = GF(p)
    for a in (truncated_polynomial(3, F), matrix_algebra(2, F), upper_triangular(2, F),
              nakayama_A3_radsq(F)):
        assert validate_algebra(a).valid


def test_broken_associativity_is_located():
    # x * x = 1 but x * 1 = 0 breaks everything involving x
    a = Algebra.from_entries(QQ, 2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
                             [1, 0])
    assert validate_algebra(a).valid          # Q[x]/(x^2 - 1) is fine
    b = Algebra.from_entries(QQ, 3, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1),
                                     (2, 0, 2, 1), (1, 1, 2, 1), (1, 2, 1, 1), (2, 1, 1, 1)],
                             [1, 0, 0])
    rep = validate_algebra(b, strict=False)
    assert not rep.valid
    kind, *triple = rep.failures[0]
    assert kind == "assoc" and len(triple) == 3


def test_missing_unit_detected():
    a = Algebra.from_entries(QQ, 2, [(0, 0, 0, 1), (1, 1, 1, 1)], [1, 0])
    rep = validate_algebra(a, strict=False)
    assert ("unit", 1) in rep.failures


def _element(a, coeffs):
    return {i: a.field(c) for i, c in enumerate(coeffs[:a.dim]) if c}


coeff_lists = st.lists(st.integers(-3, 3), min_size=9, max_size=9)


@given(st.sampled_from(sorted(CORPUS)), coeff_lists, coeff_lists, coeff_lists)
def test_random_elements_associate(name, u, v, w):
    a = CORPUS[name]
    x, y, z = _element(a, u), _element(a, v), _element(a, w)
    assert a.mul_sparse(a.mul_sparse(x, y), z) == a.mul_sparse(x, a.mul_sparse(y, z))
    one = a.unit_sparse
    assert a.mul_sparse(one, x) == x == a.mul_sparse(x, one)


@given(st.sampled_from(sorted(CORPUS)), coeff_lists, coeff_lists)
def test_opposite_reverses_products(name, u, v):
    a = CORPUS[name]
    op = opposite(a)
    x, y = _element(a, u), _element(a, v)
    assert op.mul_sparse(x, y) == a.mul_sparse(y, x)


def test_constructions_have_expected_dims():
    D, T = dual_numbers(), upper_triangular()
    assert tensor(D, T).dim == 6 and validate_algebra(tensor(D, T)).valid
    assert enveloping(D).dim == 4 and validate_algebra(enveloping(D)).valid
    assert direct_product(D, T).dim == 5 and validate_algebra(direct_product(D, T)).valid


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_centre_equals_hh0(name):
    # HH^0 from the bar complex is an independent route to the centre
    a = CORPUS[name]
    cap = 10 ** 6
    assert len(centre(a)) == hh_via_bar(a, None, 0, cap)[0]


def test_centre_reference_values():
    assert len(centre(matrix_algebra(2))) == 1
    assert len(centre(upper_triangular())) == 1
    assert len(centre(exterior_two())) == 2       # span(1, xy)
    assert len(centre(bidual_numbers())) == 4
    assert len(centre(truncated_polynomial(3))) == 3


def test_radical_dims():
    assert radical_trace_form(dual_numbers()).dim == 1
    assert radical_trace_form(upper_triangular()).dim == 1
    assert radical_trace_form(matrix_algebra(2)).dim == 0
    assert radical_trace_form(nakayama_A3_radsq()).dim == 2


def test_quotient_by_radical():
    D = dual_numbers()
    q = quotient_algebra(D, two_sided_ideal(D, [{1: QQ(1)}]))
    assert q.algebra.dim == 1 and validate_algebra(q.algebra).valid


def test_pierce_upper_triangular():
    T = upper_triangular()
    pd = pierce_decompose(T, {0: QQ(1)})
    # e = E11: eCe = E11, e'Ce = E22 C E11 = 0, eCe' = E12, e'Ce' = E22
    assert pd.dims() == {"A": 1, "M": 0, "N": 1, "B": 1}
    assert all(pierce_closure_checks(pd).values())


def test_pierce_rejects_non_idempotent():
    with pytest.raises(AlgebraError):
        pierce_decompose(dual_numbers(), {1: QQ(1)})
    assert not is_idempotent(dual_numbers(), {1: QQ(1)})


@pytest.mark.parametrize("name,build", corpus_contexts(), ids=[n for n, _ in corpus_contexts()])
def test_pierce_closure_on_contexts(name, build):
    ctx = build()
    checks = pierce_closure_checks(ctx.pierce)
    assert all(checks.values()), {k: v for k, v in checks.items() if not v}
    assert sum(ctx.pierce.dims().values()) == ctx.C.dim
