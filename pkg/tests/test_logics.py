import pytest

from nnmdl.logics import (
    InconsistentSpec,
    LogicSpec,
    TrivializingSpec,
    all_valid_letter_sets,
    canonicalize,
    derive_closure,
    enumerate_pantheon,
    implies,
    node_members,
    validate,
)

# canonical names in lattice order, frozen from enumerate_pantheon
PANTHEON_39 = [
    "E", "EM", "EC", "EN", "ET", "ED", "EP", "EQ",
    "EMC", "EMN", "EMT", "EMD", "EMP", "ECN", "ECT", "ECD", "ECP", "ECQ",
    "ENT", "END", "ENP", "ETQ", "EDP", "EDQ", "EPQ",
    "EMCN", "EMCT", "EMCD", "EMNT", "EMND", "EMNP",
    "ECNT", "ECND", "ECTQ", "ECDQ", "ECPQ", "EDPQ",
    "EMCNT", "EMCND",
]


def test_pantheon_has_the_39_canonical_logics():
    assert [s.name for s in enumerate_pantheon()] == PANTHEON_39


def test_every_valid_letter_set_canonicalizes_into_the_pantheon():
    names = {s.name for s in enumerate_pantheon()}
    assert len(all_valid_letter_sets()) == 80
    for letters in all_valid_letter_sets():
        assert canonicalize(letters).name in names


def test_closure_rules():
    assert "P" in derive_closure(frozenset("MD"))
    assert "P" in derive_closure(frozenset("ND"))
    assert {"P", "D"} <= derive_closure(frozenset("T"))
    assert "D" in derive_closure(frozenset("CP"))


def test_canonicalize_examples():
    assert canonicalize("EMCNT").name == "EMCNT"
    assert [s.name for s in node_members("EMCNT")] == [
        "EMCNT", "EMCNTD", "EMCNTP", "EMCNTDP",
    ]
    assert [s.name for s in node_members("ET")] == ["ET", "ETD", "ETP", "ETDP"]
    for member in ("ETD", "ETP", "ETDP"):
        assert canonicalize(member).name == "ET"
    assert canonicalize("ECP").name == "ECP"
    assert canonicalize("ECPD").name == "ECP"


def test_canonicalize_idempotent_on_all_valid_sets():
    for letters in all_valid_letter_sets():
        spec = canonicalize(letters)
        assert canonicalize(spec) == spec


def test_implies():
    assert implies("EMCN", "EMC")
    assert implies("ET", "EDP")
    assert implies("E", "E")
    assert not implies("EM", "EC")


def test_rejected_combinations():
    with pytest.raises(InconsistentSpec):
        validate("ENQ")
    with pytest.raises(TrivializingSpec):
        validate("EMQ")
    with pytest.raises(ValueError):
        validate("EXZ")


def test_spec_parsing_is_lenient():
    assert validate("emct").name == "EMCT"
    assert validate("tcm").name == "EMCT"
    assert validate("MC").name == "EMC"
    assert validate(frozenset({"M"})).name == "EM"


def test_spec_value_semantics():
    a = validate("EMC")
    assert str(a) == "EMC"
    assert a.has("M") and not a.has("T")
    assert isinstance(hash(a), int)
    assert validate("EMC") == a
