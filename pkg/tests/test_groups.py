import pytest

from hochmorita.algebra import Algebra, validate_algebra
from hochmorita.corpus import dual_numbers, truncated_polynomial
from hochmorita.errors import AlgebraError
from hochmorita.groups import (FiniteGroup, GroupAction, annihilator_of_defect,
                               build_skew_group, centre_of_SG_check, cyclic_shift_on_diagonal,
                               galois_quadratic, infinitesimally_outer, noether_different,
                               reflection_on_truncated_cubic, separability_check,
                               sg_context_and_defect, skew_group_checks, trace_and_invariants,
                               trivial_action, verify_degeneration, verify_invariant_comparison)
from hochmorita.hochschild import hh_via_bar
from hochmorita.linalg import GF, QQ

FIXTURES = {
    "reflection": reflection_on_truncated_cubic,
    "shift": lambda: cyclic_shift_on_diagonal(3),
    "galois": galois_quadratic,
}
DATA = {k: build_skew_group(f()) for k, f in FIXTURES.items()}


def test_cyclic_group():
    G = FiniteGroup.cyclic(4)
    assert G.check() == []
    assert [G.mul(g, G.inverse[g]) for g in range(4)] == [0] * 4


def test_bad_group_tables():
    with pytest.raises(AlgebraError):
        FiniteGroup([[0, 1], [1, 1]])
    bad = FiniteGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    assert bad.check()


def test_non_automorphism_is_rejected():
    S = truncated_polynomial(3)
    act = GroupAction.from_generator(FiniteGroup.cyclic(2), S, [{0: 1}, {0: 1, 1: 1}, {2: 1}])
    assert act.check()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_skew_group_structure(name):
    data = DATA[name]
    checks = skew_group_checks(data)
    assert all(checks.values()), checks
    assert data.SG.dim == data.S.dim * data.group.order
    assert validate_algebra(data.SG).valid


@pytest.mark.parametrize("name,dims", [("reflection", (6, 2)), ("shift", (9, 1)),
                                       ("galois", (4, 1))])
def test_invariant_ring_dims(name, dims):
    data = DATA[name]
    assert (data.SG.dim, data.R.dim) == dims
    info = trace_and_invariants(data)
    assert info["surjective"] and info["order_invertible"]


def test_outerness():
    refl = infinitesimally_outer(DATA["reflection"])
    assert not refl.outer and refl.routes_agree
    g, s = refl.witness
    # x^2 is fixed and satisfies s * x = g(x) * s since both sides vanish
    assert s == {2: QQ(1)}
    for name in ("shift", "galois"):
        rep = infinitesimally_outer(DATA[name])
        assert rep.outer and rep.routes_agree
        assert rep.centralizer_dim == DATA[name].S.dim


@pytest.mark.parametrize("name", ["shift", "galois"])
def test_centre_of_skew_group_algebra(name):
    out = centre_of_SG_check(DATA[name])
    assert out["agree"] and out["centre_is_R"]


def test_different_and_separability():
    d = DATA["reflection"]
    theta = noether_different(d.S, d.R, d.R_basis)
    sep = separability_check(d.S, d.R, d.R_basis)
    assert theta.dim == 2 and not sep.separable and sep.different_criterion_agrees
    for name in ("shift", "galois"):
        d = DATA[name]
        theta = noether_different(d.S, d.R, d.R_basis)
        sep = separability_check(d.S, d.R, d.R_basis)
        assert theta.dim == d.S.dim and sep.separable and sep.different_criterion_agrees


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_annihilator_routes_agree(name):
    ann = annihilator_of_defect(DATA[name])
    assert ann["kernel"].dim == ann["direct"].dim


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_sg_context(name):
    rep = sg_context_and_defect(DATA[name], 4)
    assert rep.ok and rep.corner_is_R
    assert rep.morita_equivalence == (name != "reflection")


@pytest.mark.parametrize("name", ["reflection", "shift"])
def test_degeneration(name):
    rep = verify_degeneration(DATA[name], 3, 600_000)
    assert rep.applicable and rep.ok
    expected = {"reflection": [3, 1, 1, 1], "shift": [1, 0, 0, 0]}[name]
    assert rep.lhs == expected


def test_degeneration_gated_in_modular_case():
    data = build_skew_group(cyclic_shift_on_diagonal(3, GF(3)))
    assert not data.order_invertible
    assert not verify_degeneration(data).applicable


def test_invariant_comparison_separable_case():
    rep = verify_invariant_comparison(DATA["shift"], 4, 3)
    assert rep.ok
    assert all(v is True for v in rep.clauses.values()), rep.clauses
    assert rep.values["HH_R"] == [1, 0, 0, 0] == rep.values["HH_S_invariant"]
    assert hh_via_bar(DATA["shift"].SG, None, 3) == [1, 0, 0, 0]


def test_invariant_comparison_gated_when_not_outer():
    rep = verify_invariant_comparison(DATA["reflection"], 4, 3)
    assert rep.ok
    assert rep.clauses["different_annihilates"] is True
    assert rep.clauses["twisted_ext_vanishes"] is None
    assert rep.grade.lower_bound >= rep.depth.lower_bound


def test_trivial_action():
    data = build_skew_group(trivial_action(dual_numbers()))
    assert data.SG.dim == data.R.dim == 2
    assert infinitesimally_outer(data).outer
    assert sg_context_and_defect(data).morita_equivalence
