import json

import pytest

from nnmdl.logics import validate
from nnmdl.oracle import (
    Bounds,
    NoModelWithinBounds,
    OracleSat,
    Signature,
    enumerate_models,
    enumerate_relational_models,
    relational_sat_by_enumeration,
    sat_by_enumeration,
    valid_family_masks,
)
from nnmdl.semantics import (
    check_logic_conditions,
    formula_holds,
    model_to_json,
    relational_formula_holds,
)
from nnmdl.syntax import parse_formula

CONCEPT_ONLY = Signature(concepts=("A",), roles=(), individuals=(), agents=1)
BARE = Signature(concepts=(), roles=(), individuals=(), agents=1)


def test_one_world_one_element_one_concept_stream_counts_eight():
    models = list(enumerate_models(CONCEPT_ONLY, Bounds(1, 1), mode="varying", spec="E"))
    assert len(models) == 8
    seen = {
        (m.family(1, 0).members(m.world_set), m.interp[0].concepts.get("A", frozenset()))
        for m in models
    }
    # 2 concept extensions x 4 families over one world, no repeats
    assert len(seen) == 8


# family counts over a 2-world frame, per condition set; frozen after checking
# them against the stream below
FAMILY_COUNTS_AT_TWO_WORLDS = {
    "E": 16,
    "EM": 6,
    "EC": 14,
    "EN": 8,
    "ET": 4,
    "ED": 9,
    "EP": 8,
    "EQ": 8,
    "EMC": 5,
    "EMCNT": 2,
}


@pytest.mark.parametrize("name,count", sorted(FAMILY_COUNTS_AT_TWO_WORLDS.items()))
def test_family_counts_over_two_worlds(name, count):
    assert len(valid_family_masks(2, validate(name), 0)) == count
    assert len(valid_family_masks(2, validate(name), 1)) == count


def test_family_masks_agree_with_the_stream():
    families = set()
    for m in enumerate_models(BARE, Bounds(2, 1), mode="constant", spec="EM"):
        if len(m.worlds) == 2:
            families.add(m.family(1, 0).members(m.world_set))
    assert len(families) == FAMILY_COUNTS_AT_TWO_WORLDS["EM"]


def test_letter_filters_shape_the_streams():
    for m in enumerate_models(BARE, Bounds(2, 1), mode="constant", spec="EQ"):
        for w in m.worlds:
            assert m.world_set not in m.family(1, w).members(m.world_set)
    count = 0
    for m in enumerate_models(BARE, Bounds(2, 1), mode="constant", spec="EN"):
        count += 1
        for w in m.worlds:
            assert m.world_set in m.family(1, w).members(m.world_set)
    # 2 unit-bearing families at one world, 8 x 8 at two
    assert count == 2 + 64


def test_streams_are_exactly_the_condition_filtered_e_stream():
    b = Bounds(2, 1)
    for name in ("EM", "ET", "EN", "EMC"):
        spec = validate(name)
        got = [model_to_json(m) for m in enumerate_models(CONCEPT_ONLY, b, mode="constant", spec=spec)]
        want = [
            model_to_json(m)
            for m in enumerate_models(CONCEPT_ONLY, b, mode="constant", spec="E")
            if check_logic_conditions(m, spec)
        ]
        assert got == want


def test_enumeration_is_deterministic_and_duplicate_free():
    sig = Signature(concepts=("A",), roles=("r",), individuals=("a",), agents=1)
    first = [model_to_json(m) for m in enumerate_models(sig, Bounds(2, 1), mode="varying", spec="E")]
    second = [model_to_json(m) for m in enumerate_models(sig, Bounds(2, 1), mode="varying", spec="E")]
    assert first == second
    keys = {json.dumps(d, sort_keys=True) for d in first}
    assert len(keys) == len(first)


def test_sat_by_enumeration_verifies_its_witness():
    f = parse_formula("[1](A & B)(a)")
    res = sat_by_enumeration(f, "EMC", Bounds(2, 1), mode="constant")
    assert isinstance(res, OracleSat)
    assert bool(res)
    assert formula_holds(res.model, res.world, f)
    assert check_logic_conditions(res.model, "EMC")


def test_unsatisfiable_formula_exhausts_the_bounds():
    sig = Signature(concepts=("A",), roles=(), individuals=("a",), agents=1)
    f = parse_formula("(A(a) /\\ ~A(a))")
    res = sat_by_enumeration(f, "E", Bounds(2, 1), sig=sig)
    assert isinstance(res, NoModelWithinBounds)
    assert res.exhausted
    assert not bool(res)
    assert res.examined == sum(1 for _ in enumerate_models(sig, Bounds(2, 1), "varying", "E"))


def test_cap_stops_the_search_early():
    sig = Signature(concepts=("A",), roles=(), individuals=("a",), agents=1)
    f = parse_formula("(A(a) /\\ ~A(a))")
    res = sat_by_enumeration(f, "E", Bounds(2, 1), sig=sig, cap=5)
    assert isinstance(res, NoModelWithinBounds)
    assert not res.exhausted
    assert res.examined == 5


def test_out_of_signature_formulas_are_rejected():
    with pytest.raises(ValueError, match="concept names"):
        sat_by_enumeration(parse_formula("(top sub Z)"), "E", Bounds(1, 1), sig=CONCEPT_ONLY)
    with pytest.raises(ValueError, match="role"):
        sat_by_enumeration(parse_formula("(top sub some s.A)"), "E", Bounds(1, 1), sig=CONCEPT_ONLY)
    with pytest.raises(ValueError, match="individuals"):
        sat_by_enumeration(parse_formula("A(b)"), "E", Bounds(1, 1), sig=CONCEPT_ONLY)
    with pytest.raises(ValueError, match="agent"):
        sat_by_enumeration(
            parse_formula("[2](top sub A)", n_agents=2), "E", Bounds(1, 1), sig=CONCEPT_ONLY
        )


def test_satisfiability_is_monotone_down_the_lattice():
    sig = Signature(concepts=("A", "B"), roles=(), individuals=(), agents=1)
    chain = ("EMCN", "EMC", "EM", "E")
    strings = (
        "[1](top sub A)",
        "~[1](top sub A)",
        "([1](top sub A) /\\ ~[1](top sub B))",
        "(top sub [1]A)",
        "(top sub ~[1]A)",
        "<1>(A sub B)",
    )
    for s in strings:
        f = parse_formula(s)
        hits = [
            bool(sat_by_enumeration(f, name, Bounds(2, 1), mode="constant", sig=sig))
            for name in chain
        ]
        # every frame for the stronger spec is a frame for the weaker one
        for stronger, weaker in zip(hits, hits[1:]):
            assert weaker or not stronger


def test_relational_stream_counts_and_rigidity():
    models = list(enumerate_relational_models(CONCEPT_ONLY, Bounds(2, 1)))
    assert len(models) == 4 + 64
    sig = Signature(concepts=(), roles=(), individuals=("a", "b"), agents=1)
    for m in enumerate_relational_models(sig, Bounds(2, 2)):
        first = m.interp[m.worlds[0]]
        for w in m.worlds:
            assert m.interp[w].inds == first.inds
            assert set(m.interp[w].domain) == set(first.domain)


def test_relational_oracle_contrasts_with_the_neighbourhood_oracle():
    # box-of-top is relationally valid, so its negation needs a neighbourhood model
    f = parse_formula("~(top sub [1]top)")
    rel = relational_sat_by_enumeration(f, Bounds(2, 1), sig=CONCEPT_ONLY)
    assert isinstance(rel, NoModelWithinBounds)
    assert rel.exhausted
    nbh = sat_by_enumeration(f, "E", Bounds(2, 1), mode="constant", sig=CONCEPT_ONLY)
    assert isinstance(nbh, OracleSat)
    assert formula_holds(nbh.model, nbh.world, f)


def test_relational_oracle_verifies_its_witness():
    sig = Signature(concepts=("A",), roles=(), individuals=("a",), agents=1)
    f = parse_formula("<1>A(a)")
    res = relational_sat_by_enumeration(f, Bounds(2, 1), sig=sig)
    assert isinstance(res, OracleSat)
    assert relational_formula_holds(res.model, res.world, f)
