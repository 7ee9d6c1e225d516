import copy
import json

import pytest
from hypothesis import given, strategies as st

from hochmorita.algebra import validate_algebra
from hochmorita.corpus import CORPUS, fixture_documents
from hochmorita.io import (SpecError, algebra_from_dict, algebra_to_dict, dump_json,
                           fixture_names, load_fixture, parse_spec)
from hochmorita.linalg import GF, QQ

DUAL = algebra_to_dict(CORPUS["dual-numbers"]())


def test_bundled_fixtures_match_generator():
    docs = fixture_documents()
    assert sorted(docs) == fixture_names()
    for name, doc in docs.items():
        assert load_fixture(name).emit() == dump_json(doc), name


@pytest.mark.parametrize("name", fixture_names())
def test_round_trip_is_stable(name):
    first = load_fixture(name)
    second = parse_spec(first.emit())
    assert second.emit() == first.emit()
    assert second.kind == first.kind


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_algebra_validates(name):
    assert validate_algebra(load_fixture(name).objects["algebra"]).valid


def test_at_least_twelve_algebras_bundled():
    kinds = [load_fixture(n).kind for n in fixture_names()]
    assert kinds.count("algebra") >= 12


def test_non_invertible_denominator_in_fp():
    doc = copy.deepcopy(DUAL)
    doc["field"] = {"Fp": 3}
    doc["structure"][0][3] = "1/3"
    with pytest.raises(SpecError, match="structure"):
        parse_spec(doc)


def test_fp_scalars_reduce():
    doc = copy.deepcopy(DUAL)
    doc["field"] = {"Fp": 5}
    doc["structure"][0][3] = 6
    a = parse_spec(doc).objects["algebra"]
    assert a.field == GF(5)
    assert a.table[0][0] == {0: 1}


def test_associativity_failure_location():
    # basis 1, x, y with x*y = y and y*x = 0, x*x = 0: (x*x)*y = 0 but x*(x*y) = y
    doc = {"kind": "algebra", "field": "Q", "dim": 3,
           "structure": [[0, 0, 0, 1], [0, 1, 1, 1], [0, 2, 2, 1], [1, 0, 1, 1], [2, 0, 2, 1],
                         [1, 2, 2, 1]],
           "unit": [1, 0, 0]}
    with pytest.raises(SpecError, match=r"associativity fails on basis triple \(1, 1, 2\)"):
        parse_spec(doc)


def test_unit_failure():
    doc = copy.deepcopy(DUAL)
    doc["unit"] = ["0", "1"]
    with pytest.raises(SpecError, match="unit"):
        parse_spec(doc)


@pytest.mark.parametrize("raw,where", [
    (b"{not json", "document"),
    (b"[1, 2]", "document"),
    (b'{"kind": "ring"}', "kind"),
    (b'{"kind": "algebra", "field": "R", "dim": 1, "unit": [1]}', "algebra.field"),
    (b'{"kind": "algebra", "field": {"Fp": 4}, "dim": 1, "unit": [1]}', "algebra.field"),
    (b'{"kind": "algebra", "dim": -1, "unit": []}', "algebra.dim"),
    (b'{"kind": "algebra", "dim": 1, "unit": [1], "structure": [[0, 0, 1, 1]]}',
     "algebra.structure[0][2]"),
    (b'{"kind": "algebra", "dim": 1, "unit": [1.5], "structure": [[0, 0, 0, 1]]}',
     "algebra.unit[0]"),
    (b'{"kind": "idempotent", "vector": [1]}', "algebra"),
])
def test_malformed_documents(raw, where):
    with pytest.raises(SpecError) as info:
        parse_spec(raw)
    assert info.value.where == where


def test_non_idempotent_rejected():
    doc = json.loads(load_fixture("matrices-2-E11").emit())
    doc["vector"] = [[0, "1"], [3, "1"], [1, "1"]]
    with pytest.raises(SpecError, match="not idempotent"):
        parse_spec(doc)


def test_bad_module_rejected():
    doc = json.loads(load_fixture("dual-numbers-simple").emit())
    doc["action"][0] = []
    with pytest.raises(SpecError, match="module.action"):
        parse_spec(doc)


def test_context_job_defaults_and_caps():
    job = {"kind": "context-job", "algebra": DUAL, "caps": {"bar": 10}}
    spec = parse_spec(job)
    assert spec.data["cutoff"] == 5 and spec.data["caps"] == {"bar": 10}
    job["caps"] = {"bar": 0}
    with pytest.raises(SpecError, match="caps.bar"):
        parse_spec(job)


fractions = st.fractions(max_denominator=50, min_value=-20, max_value=20)


@given(st.lists(fractions, min_size=2, max_size=2).filter(lambda v: v[1] != 0))
def test_rational_scalars_round_trip(coeffs):
    # K[x]/(x^2 - c) with a rescaled basis; emitted strings parse back exactly
    c, s = coeffs
    doc = {"kind": "algebra", "field": "Q", "dim": 2, "unit": ["1", "0"],
           "structure": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"],
                         [1, 1, 0, str(c * s * s)]]}
    a = parse_spec(doc).objects["algebra"]
    assert a.table[1][1].get(0, 0) == QQ(str(c * s * s))
    assert parse_spec(algebra_to_dict(a)).emit() == parse_spec(doc).emit()


@given(st.integers(min_value=-100, max_value=100))
def test_fp_round_trip(x):
    doc = {"kind": "algebra", "field": {"Fp": 7}, "dim": 2, "unit": [1, 0],
           "structure": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, x]]}
    a = algebra_from_dict(doc)
    assert a.table[1][1].get(0, 0) == x % 7
    assert algebra_from_dict(algebra_to_dict(a)).table == a.table
