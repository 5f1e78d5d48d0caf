import json
import random
from itertools import combinations

import pytest

from nnmdl.logics import implies, validate
from nnmdl.oracle import Bounds, Signature, enumerate_models, enumerate_relational_models
from nnmdl.semantics import (
    ExplicitFamily,
    IntensionalTooLarge,
    IntervalFamily,
    NbhdModel,
    RelationalModel,
    WorldInterp,
    check_frame_condition,
    check_logic_conditions,
    check_principle,
    concept_extension,
    expand_neighbourhoods,
    formula_holds,
    formula_valid,
    model_from_json,
    model_to_json,
    relational_check_principle,
    relational_formula_holds,
    relational_model_from_json,
    relational_model_to_json,
    validate_agency_frame,
)
from nnmdl.syntax import (
    BOT,
    CAnd,
    CBox,
    CDia,
    CName,
    CNeg,
    COr,
    FAnd,
    FBox,
    FCI,
    FDia,
    FNot,
    TOP,
    parse_formula,
)
from nnmdl.tableau import Sat, solve

A = CName("A")
B = CName("B")


def wi(domain, concepts=None, roles=None, inds=None):
    return WorldInterp(tuple(domain), dict(concepts or {}), dict(roles or {}), dict(inds or {}))


def fam(*sets):
    return ExplicitFamily(frozenset(frozenset(s) for s in sets))


def nm(worlds, nbhd, interp, mode="constant", agents=1):
    m = NbhdModel(tuple(worlds), agents, mode, nbhd, interp)
    m.validate()
    return m


def prop2_countermodel():
    # two worlds with identical interpretations; {v} breaks the T-condition at w
    interp = {w: wi(["d"], {"A": {"d"}, "B": set()}) for w in ("w", "v")}
    nbhd = {
        (1, "w"): fam({"v"}, {"w", "v"}),
        (1, "v"): fam({"w"}, {"w", "v"}),
    }
    return nm(["w", "v"], nbhd, interp)


# ---------------------------------------------------------------------------
# extensions and satisfaction


def test_negation_extension_is_the_domain_complement():
    m = nm([0], {(1, 0): fam()}, {0: wi("de", {"A": {"d"}})})
    assert concept_extension(m, 0, CNeg(A)) == {"e"}
    assert concept_extension(m, 0, CAnd(A, CNeg(A))) == frozenset()
    assert concept_extension(m, 0, COr(A, CNeg(A))) == {"d", "e"}


def test_boxed_concept_membership_follows_the_truth_set():
    interp = {"w": wi(["d"], {"A": set()}), "v": wi(["d"], {"A": {"d"}})}
    m = nm(["w", "v"], {(1, "w"): fam({"v"}), (1, "v"): fam()}, interp)
    # d falls under A exactly at v, and {v} is a neighbourhood of w
    assert concept_extension(m, "w", CBox(1, A)) == {"d"}
    assert concept_extension(m, "v", CBox(1, A)) == frozenset()
    assert concept_extension(m, "w", CDia(1, A)) == {"d"}


def test_absent_elements_stay_out_of_cross_world_truth_sets():
    interp = {0: wi(["d"], {"A": {"d"}}), 1: wi(["e"], {"A": {"e"}})}
    m = NbhdModel((0, 1), 1, "varying", {(1, 0): fam({0})}, interp)
    m.validate()
    # d is absent at world 1, so its A truth set is {0}, not the whole frame
    assert concept_extension(m, 0, CBox(1, A)) == {"d"}
    m2 = NbhdModel((0, 1), 1, "varying", {(1, 0): fam({0, 1})}, interp)
    m2.validate()
    assert concept_extension(m2, 0, CBox(1, A)) == frozenset()


def test_empty_neighbourhood_refutes_every_box_formula():
    m = nm([0], {(1, 0): fam()}, {0: wi(["d"], {"A": {"d"}})})
    for psi in (FCI(TOP, A), FCI(A, B), FCI(TOP, BOT)):
        assert not formula_holds(m, 0, FBox(1, psi))
        assert formula_holds(m, 0, FNot(FBox(1, psi)))
        # the dual is vacuously true: no complement set is in the family either
        assert formula_holds(m, 0, FDia(1, psi))


def test_inclusion_holds_where_the_extension_fills_the_domain():
    interp = {0: wi("de", {"A": {"d", "e"}}), 1: wi("de", {"A": {"d"}})}
    m = nm([0, 1], {}, interp)
    assert formula_holds(m, 0, FCI(TOP, A))
    assert not formula_holds(m, 1, FCI(TOP, A))
    assert not formula_valid(m, FCI(TOP, A))


def test_uninterpreted_names_are_rejected():
    m = nm([0], {}, {0: wi(["d"], {"A": {"d"}}, inds={"a": "d"})})
    with pytest.raises(ValueError, match="unknown world"):
        formula_holds(m, 7, FCI(TOP, A))
    with pytest.raises(ValueError, match="not interpreted"):
        formula_holds(m, 0, parse_formula("A(b)"))


def test_extracted_model_satisfies_the_solved_formula():
    f = parse_formula("~([1]some req.(Prod & InCatal) sub [1](Conf | ~Conf))")
    res = solve(f, "E")
    assert isinstance(res, Sat)
    assert 0 in res.model.worlds
    assert formula_holds(res.model, 0, f)


# ---------------------------------------------------------------------------
# frame conditions


def blank_interp(worlds):
    return {w: wi(["d"]) for w in worlds}


def test_frame_condition_letter_cases():
    empty = nm([0, 1], {}, blank_interp([0, 1]))
    for letter in "MCTDPQ":
        assert check_frame_condition(empty, letter)
    assert not check_frame_condition(empty, "N")

    unit = nm([0, 1], {(1, 0): fam({0, 1}), (1, 1): fam({0, 1})}, blank_interp([0, 1]))
    assert check_frame_condition(unit, "N")
    assert not check_frame_condition(unit, "Q")

    m = nm([0, 1], {(1, 0): fam({1})}, blank_interp([0, 1]))
    assert not check_frame_condition(m, "T")
    assert check_frame_condition(m, "D")
    assert check_frame_condition(m, "E")
    with pytest.raises(ValueError, match="unknown condition"):
        check_frame_condition(m, "X")


def test_logic_conditions_conjoin_the_letters():
    unit = nm([0, 1], {(1, 0): fam({0, 1}), (1, 1): fam({0, 1})}, blank_interp([0, 1]))
    empty = nm([0, 1], {}, blank_interp([0, 1]))
    assert check_logic_conditions(unit, "E")
    assert check_logic_conditions(empty, "E")
    assert check_logic_conditions(unit, "EN")
    assert check_logic_conditions(unit, validate("ENT"))
    assert not check_logic_conditions(empty, "EN")
    askew = nm([0, 1], {(1, 0): fam({1})}, blank_interp([0, 1]))
    assert not check_logic_conditions(askew, "ET")


def test_condition_implications_across_enumerated_frames():
    sig = Signature(concepts=("A",), roles=(), individuals=(), agents=1)
    seen_md = seen_t = 0
    for m in enumerate_models(sig, Bounds(2, 1), mode="constant", spec="E"):
        if check_frame_condition(m, "M") and check_frame_condition(m, "D"):
            seen_md += 1
            assert check_frame_condition(m, "P")
        if check_frame_condition(m, "T"):
            seen_t += 1
            assert check_frame_condition(m, "D")
            assert check_frame_condition(m, "P")
    assert seen_md and seen_t


def test_stronger_logic_frames_are_weaker_logic_frames():
    specs = [validate(s) for s in ("E", "EM", "EN", "EMC", "EMCN", "ET", "EMCNT")]
    sig = Signature(concepts=("A",), roles=(), individuals=(), agents=1)
    for k, m in enumerate(enumerate_models(sig, Bounds(2, 1), mode="constant", spec="E")):
        if k % 5:
            continue
        passing = [s for s in specs if check_logic_conditions(m, s)]
        for a in passing:
            for b in specs:
                if implies(a, b):
                    assert check_logic_conditions(m, b)


# ---------------------------------------------------------------------------
# principles


def test_t_principle_can_hold_without_the_t_condition():
    m = prop2_countermodel()
    assert not check_frame_condition(m, "T")
    rich = (A, B, CNeg(A), CAnd(A, B), COr(A, CNeg(B)), CBox(1, A), CDia(1, B))
    assert check_principle(m, "T", concepts=rich)


def test_condition_implies_principle_on_constant_models():
    sig = Signature(concepts=("A", "B"), roles=(), individuals=(), agents=1)
    checked = 0
    for k, m in enumerate(enumerate_models(sig, Bounds(2, 1), mode="constant", spec="E")):
        if k % 3:
            continue
        for letter in "EMCNTDPQ":
            if check_frame_condition(m, letter):
                assert check_principle(m, letter)
                checked += 1
    assert checked > 100


def test_axiom_form_letters_survive_varying_domains():
    sig = Signature(concepts=("A",), roles=(), individuals=(), agents=1)
    checked = 0
    for k, m in enumerate(enumerate_models(sig, Bounds(2, 2), mode="varying", spec="E")):
        if k % 23:
            continue
        for letter in "CTDPQ":
            if check_frame_condition(m, letter):
                assert check_principle(m, letter, concepts=(A,))
                checked += 1
    assert checked > 100


def test_necessitation_rule_fails_on_a_varying_model_with_the_n_condition():
    interp = {0: wi(["d"], {"A": {"d"}}), 1: wi(["d", "e"], {"A": {"d", "e"}})}
    nbhd = {(1, 0): fam({0, 1}), (1, 1): fam({0, 1})}
    m = NbhdModel((0, 1), 1, "varying", nbhd, interp)
    m.validate()
    assert check_frame_condition(m, "N")
    assert formula_valid(m, FCI(TOP, A))
    # e exists only at world 1, so its truth set {1} misses the unit family
    assert not formula_valid(m, FCI(TOP, CBox(1, A)))
    assert not check_principle(m, "N", concepts=(A,))


def test_relational_box_is_vacuous_at_a_dead_end():
    m = RelationalModel((0,), 1, {1: frozenset()}, {0: wi(["d"], {"A": set()})})
    m.validate()
    assert relational_formula_holds(m, 0, FBox(1, FCI(TOP, A)))
    assert not relational_formula_holds(m, 0, FDia(1, FCI(TOP, A)))


def test_relational_principles():
    sig = Signature(concepts=("A", "B"), roles=(), individuals=(), agents=1)
    seen = 0
    for k, m in enumerate(enumerate_relational_models(sig, Bounds(2, 1))):
        if k % 7:
            continue
        for letter in "EMCN":
            assert relational_check_principle(m, letter)
        assert not relational_check_principle(m, "Q")
        serial = all(m.successors(1, w) for w in m.worlds)
        assert relational_check_principle(m, "D") == serial
        assert relational_check_principle(m, "P") == serial
        seen += 1
    assert seen > 30


def superset_encoding(m):
    # alpha is a neighbourhood of w exactly when it covers w's successor set
    full = m.world_set
    nbhd = {}
    for i in range(1, m.agents + 1):
        for w in m.worlds:
            nbhd[(i, w)] = IntervalFamily(((m.successors(i, w), full),))
    return NbhdModel(m.worlds, m.agents, "constant", nbhd, dict(m.interp))


def test_relational_and_superset_neighbourhood_semantics_agree():
    sig = Signature(concepts=("A", "B"), roles=(), individuals=(), agents=1)
    fs = (
        FCI(TOP, A),
        FCI(A, B),
        FCI(TOP, CBox(1, A)),
        FCI(CBox(1, A), CDia(1, B)),
        FCI(TOP, CBox(1, CBox(1, A))),
        FBox(1, FCI(A, B)),
        FNot(FBox(1, FCI(TOP, B))),
        FAnd(FBox(1, FCI(TOP, A)), FDia(1, FCI(TOP, B))),
    )
    seen = 0
    for k, m in enumerate(enumerate_relational_models(sig, Bounds(3, 1))):
        if k % 97:
            continue
        n = superset_encoding(m)
        n.validate()
        for f in fs:
            for w in m.worlds:
                assert relational_formula_holds(m, w, f) == formula_holds(n, w, f)
        seen += 1
    assert seen > 40


# ---------------------------------------------------------------------------
# interval families


def test_interval_family_matches_its_expansion():
    rng = random.Random(8252)
    worlds = frozenset(range(3))
    subsets = [frozenset(s) for k in range(4) for s in combinations(range(3), k)]
    for _ in range(200):
        ivs = tuple((rng.choice(subsets), rng.choice(subsets)) for _ in range(rng.randrange(3)))
        f = IntervalFamily(ivs, unit=rng.random() < 0.3)
        expanded = f.members(worlds)
        for alpha in subsets:
            assert f.contains(alpha, worlds) == (alpha in expanded)
        for alpha in expanded:
            assert (f.unit and alpha == worlds) or any(lb <= alpha <= ub for lb, ub in ivs)


def test_inverted_interval_is_empty():
    f = IntervalFamily(((frozenset({0, 1}), frozenset({0})),))
    assert f.members(frozenset({0, 1})) == frozenset()
    assert not f.contains(frozenset({0}), frozenset({0, 1}))
    assert not f.contains(frozenset({0, 1}), frozenset({0, 1}))


def test_expansion_preserves_satisfaction():
    interp = {0: wi(["d"], {"A": set()}), 1: wi(["d"], {"A": {"d"}})}
    nbhd = {
        (1, 0): IntervalFamily(((frozenset(), frozenset({0, 1})),)),
        (1, 1): IntervalFamily(((frozenset({1}), frozenset({1})),), unit=True),
    }
    m = nm([0, 1], nbhd, interp)
    e = expand_neighbourhoods(m)
    for key in nbhd:
        assert isinstance(e.nbhd[key], ExplicitFamily)
        assert e.nbhd[key].members(m.world_set) == m.nbhd[key].members(m.world_set)
    for f in (FBox(1, FCI(TOP, A)), FNot(FBox(1, FCI(A, B))), FCI(TOP, CBox(1, A))):
        for w in m.worlds:
            assert formula_holds(m, w, f) == formula_holds(e, w, f)


def test_expansion_refused_beyond_the_world_limit():
    worlds = tuple(range(13))
    nbhd = {(1, 0): IntervalFamily(((frozenset(), frozenset(worlds)),))}
    m = NbhdModel(worlds, 1, "constant", nbhd, {w: wi(["d"]) for w in worlds})
    with pytest.raises(IntensionalTooLarge):
        expand_neighbourhoods(m)
    with pytest.raises(IntensionalTooLarge):
        check_frame_condition(m, "M")


# ---------------------------------------------------------------------------
# validation and JSON


def test_validate_rejects_malformed_models():
    with pytest.raises(ValueError, match="at least one world"):
        NbhdModel((), 1, "constant", {}, {}).validate()
    with pytest.raises(ValueError, match="unknown mode"):
        NbhdModel((0,), 1, "middling", {}, {0: wi(["d"])}).validate()
    with pytest.raises(ValueError, match="empty domain"):
        NbhdModel((0,), 1, "constant", {}, {0: wi(())}).validate()
    with pytest.raises(ValueError, match="leaves the domain"):
        NbhdModel((0,), 1, "constant", {}, {0: wi("d", {"A": {"x"}})}).validate()
    with pytest.raises(ValueError, match="leaves the domain"):
        NbhdModel((0,), 1, "constant", {}, {0: wi("d", roles={"r": {("d", "x")}})}).validate()
    with pytest.raises(ValueError, match="outside the domain"):
        NbhdModel((0,), 1, "constant", {}, {0: wi("d", inds={"a": "x"})}).validate()
    with pytest.raises(ValueError, match="equal domains"):
        NbhdModel((0, 1), 1, "constant", {}, {0: wi("d"), 1: wi("de")}).validate()
    with pytest.raises(ValueError, match="rigid"):
        NbhdModel(
            (0, 1), 1, "constant", {}, {0: wi("de", inds={"a": "d"}), 1: wi("de", inds={"a": "e"})}
        ).validate()
    with pytest.raises(ValueError, match="constant domain"):
        RelationalModel((0, 1), 1, {}, {0: wi("d"), 1: wi("de")}).validate()
    with pytest.raises(ValueError, match="rigid"):
        RelationalModel(
            (0, 1), 1, {}, {0: wi("de", inds={"a": "d"}), 1: wi("de", inds={"a": "e"})}
        ).validate()


def test_varying_mode_permits_unequal_domains():
    m = NbhdModel((0, 1), 1, "varying", {}, {0: wi("d"), 1: wi("de")})
    m.validate()


def test_model_json_round_trip():
    m = prop2_countermodel()
    data = json.loads(json.dumps(model_to_json(m)))
    assert model_from_json(data) == m


def test_intensional_model_json_round_trip():
    interp = {0: wi("de", {"A": frozenset({"d"})}, inds={"a": "e"}), 1: wi("de", {"A": frozenset()}, inds={"a": "e"})}
    nbhd = {
        (1, 0): IntervalFamily(((frozenset({0}), frozenset({0, 1})),)),
        (1, 1): IntervalFamily((), unit=True),
        (2, 0): fam({1}),
        (2, 1): fam(),
    }
    m = nm([0, 1], nbhd, interp, agents=2)
    data = json.loads(json.dumps(model_to_json(m)))
    assert model_from_json(data) == m


def test_relational_model_json_round_trip():
    interp = {
        0: wi("de", {"A": frozenset({"d"})}, roles={"r": frozenset({("d", "e")})}, inds={"a": "d"}),
        1: wi("de", {"A": frozenset({"e"})}, inds={"a": "d"}),
    }
    m = RelationalModel((0, 1), 2, {1: frozenset({(0, 1), (1, 1)}), 2: frozenset()}, interp)
    m.validate()
    data = json.loads(json.dumps(relational_model_to_json(m)))
    assert relational_model_from_json(data) == m


def test_json_rejects_unknown_worlds():
    m = prop2_countermodel()
    data = model_to_json(m)
    data["nbhd"]["1"]["u"] = []
    with pytest.raises(ValueError, match="unknown world"):
        model_from_json(data)


# ---------------------------------------------------------------------------
# agency frames


def test_agency_frame_conditions():
    W = (0, 1)
    assert validate_agency_frame(W, {}, {}, 1)
    # the unit and the empty set are banned from choice families
    assert not validate_agency_frame(W, {}, {(1, 0): fam({0, 1})}, 1)
    assert not validate_agency_frame(W, {}, {(1, 0): fam(())}, 1)
    # belief sets must contain their world
    assert not validate_agency_frame(W, {(1, 0): fam({1})}, {(1, 0): fam({1})}, 1)
    # and sit inside the choice family
    assert not validate_agency_frame(W, {(1, 0): fam({0})}, {}, 1)

    W3 = (0, 1, 2)
    open_b = fam({0, 1}, {0, 2})
    closed_b = fam({0, 1}, {0, 2}, {0})
    assert not validate_agency_frame(W3, {(1, 0): open_b}, {(1, 0): closed_b}, 1)
    assert validate_agency_frame(W3, {(1, 0): closed_b}, {(1, 0): closed_b}, 1)

    intensional = IntervalFamily(((frozenset({0}), frozenset({0})),))
    assert validate_agency_frame(W, {(1, 0): intensional}, {(1, 0): fam({0})}, 1)


def test_agency_validator_agrees_with_letter_checks():
    rng = random.Random(41121)
    W = (0, 1, 2)
    full = frozenset(W)
    subsets = [frozenset(s) for k in range(4) for s in combinations(W, k)]
    blank = {w: wi(["d"]) for w in W}
    accepted = 0
    for _ in range(300):
        belief = {}
        choice = {}
        for w in W:
            pool = [a for a in subsets if w in a and a != full]
            if rng.random() < 0.8:
                bsets = frozenset(rng.sample(pool, rng.randrange(3)))
            else:
                bsets = frozenset(rng.sample(subsets, 2))
            extra = frozenset(rng.sample(subsets, rng.randrange(3)))
            csets = bsets | extra if rng.random() < 0.8 else frozenset(rng.sample(subsets, 3))
            belief[(1, w)] = ExplicitFamily(bsets)
            choice[(1, w)] = ExplicitFamily(csets)
        bm = NbhdModel(W, 1, "constant", belief, blank)
        cm = NbhdModel(W, 1, "constant", choice, blank)
        expected = (
            check_frame_condition(cm, "P")
            and check_frame_condition(cm, "Q")
            and check_frame_condition(bm, "C")
            and check_frame_condition(bm, "T")
            and all(belief[(1, w)].sets <= choice[(1, w)].sets for w in W)
        )
        assert validate_agency_frame(W, belief, choice, 1) == expected
        accepted += expected
    assert accepted
