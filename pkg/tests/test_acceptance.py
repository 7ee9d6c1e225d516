"""One test per acceptance criterion.

Each test runs the matching battery from ``hochmorita.suite``, prints a single
PASS/FAIL line and enforces the time budget.  All comparisons are exact.
"""
import time

from hochmorita import suite
from hochmorita.corpus import corpus_algebras, corpus_contexts, grade_pairs
from hochmorita.report import FAIL, INCONCLUSIVE, PASS


def _run(label, battery, budget):
    t0 = time.perf_counter()
    checks = battery()
    elapsed = time.perf_counter() - t0
    failed = [f"{c.name}: {c.subject}" for c in checks if c.status == FAIL]
    ok = not failed and elapsed < budget
    print(f"{'PASS' if ok else 'FAIL'} {label} ({len(checks)} checks, {elapsed:.1f}s "
          f"of {budget}s){' failed: ' + ', '.join(failed) if failed else ''}")
    assert not failed, failed
    assert elapsed < budget
    return checks


def _by_name(checks, name):
    return [c for c in checks if c.name == name]


def test_01_ring_axioms_and_pierce():
    checks = _run("ring axioms and Pierce closure", suite.ring_and_pierce, 5)
    axioms = _by_name(checks, "algebra-axioms")
    assert len(axioms) == len(corpus_algebras()) >= 12
    assert sum(a.dim <= 6 for a in corpus_algebras().values()) >= 12
    assert all(c.status == PASS for c in checks)
    assert len(_by_name(checks, "pierce-closure")) == len(corpus_contexts())


def test_02_fundamental_sequence():
    checks = _run("fundamental sequence", suite.fundamental_sequences, 30)
    for name in ("fundamental-sequence-exact", "omega-killed-by-e", "omega-is-tor2"):
        group = _by_name(checks, name)
        assert len(group) == len(corpus_contexts())
        assert all(c.status == PASS for c in group)


def test_03_alpha_bijective_iff_grade_two():
    checks = _run("alpha bijective iff grade >= 2", suite.alpha_versus_grade, 60)
    assert len(checks) == len(corpus_contexts())
    assert all(c.status == PASS for c in checks)
    # both outcomes of the biconditional occur in the corpus
    flags = {c.payload["alpha_bijective"] for c in checks}
    assert flags == {True, False}


def test_04_stable_end_grade():
    checks = _run("grade of stable End", suite.stable_end_grades, 120)
    assert len(checks) == len(grade_pairs()) >= 8
    assert all(c.status == PASS for c in checks)
    dual = next(c for c in checks if c.subject == "dual-numbers + S")
    assert dual.payload["grade_end"].value == 2


def test_05_hh_method_agreement():
    checks = _run("HH bar vs enveloping Ext", suite.hh_agreement, 120)
    agree = _by_name(checks, "hh-methods-agree")
    assert len(agree) == len(corpus_algebras())
    assert all(c.status == PASS for c in checks)
    values = {c.subject: c.payload["bar"] for c in agree}
    assert values["matrices-2"] == [1, 0, 0, 0, 0]
    assert values["dual-numbers"] == [2, 1, 1, 1, 1]


def test_06_matrix_invariance():
    checks = _run("HH invariance under M_2", suite.matrix_invariance, 120)
    assert len(checks) == 2 and all(c.status == PASS for c in checks)
    hh = {c.subject: c.payload["HH_M2A"] for c in checks}
    assert hh["matrices-2 over rationals"] == [1, 0, 0, 0]
    assert hh["matrices-2 over dual-numbers"] == [2, 1, 1, 1]


def test_07_chi_and_relative_hh():
    checks = _run("chi, cup compatibility and relative HH", suite.chi_batteries, 180)
    n = len(corpus_contexts())
    cup = _by_name(checks, "chi-cup-compatible")
    assert len(cup) == n and all(c.payload["pairs"] >= 10 for c in cup)
    for name in ("chi-cup-compatible", "relative-hh-vanishes", "relative-hh-routes-agree",
                 "chi-descends", "relative-bar-homology"):
        assert all(c.status == PASS for c in _by_name(checks, name)), name
    chi = _by_name(checks, "chi-bijective-below-grade")
    # every corpus context has a resolved grade
    assert not [c for c in chi if c.status == INCONCLUSIVE]
    assert sum(c.status == PASS for c in chi) >= 8


def test_08_rigidity():
    checks = _run("rigidity of HH^2", suite.rigidity, 60)
    assert any(c.status == PASS for c in checks)
    for c in checks:
        if c.status == PASS:
            assert c.payload["ext1_MM"] == c.payload["HH2_A"] == 0
            assert c.payload["HH_C_bar"][2] == c.payload["HH_C_ext"][2] == 0


def test_09_skew_group_degeneration():
    checks = _run("skew group HH degeneration", suite.skew_degeneration, 120)
    assert len(checks) == 2 and all(c.status == PASS for c in checks)
    for c in checks:
        assert c.payload["HH_SG"] == c.payload["HH_S_SG_invariant"]
        assert len(c.payload["HH_SG"]) == 4


def test_10_invariant_battery():
    checks = _run("different, depth and invariant HH", suite.invariant_battery, 60)
    for name in ("different-annihilates-defect", "defect-grade-bounds-depth"):
        group = _by_name(checks, name)
        assert len(group) == 2 and all(c.status == PASS for c in group)
    (morita,) = _by_name(checks, "invariant-morita-equivalence")
    assert morita.status == PASS
    assert morita.payload["defect_dim"] == 0
    assert morita.payload["HH_R"] == morita.payload["HH_SG"] == [1, 0, 0, 0]


def test_11_suite_is_deterministic():
    t0 = time.perf_counter()
    first = suite.run_suite()
    second = suite.run_suite()
    elapsed = time.perf_counter() - t0
    same = first.to_json(with_time=False) == second.to_json(with_time=False)
    ok = same and not first.failed and elapsed < 1200
    print(f"{'PASS' if ok else 'FAIL'} deterministic full suite "
          f"({len(first.checks)} checks, two runs in {elapsed:.1f}s)")
    assert same
    assert not first.failed, first.results["failed"]
    # each run is within the ten-minute budget
    assert first.wall_time < 600 and second.wall_time < 600
