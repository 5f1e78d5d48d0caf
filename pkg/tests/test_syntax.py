import random
from pathlib import Path

import pytest

from nnmdl.syntax import (
    BOT,
    CAnd,
    CBox,
    CDia,
    CExists,
    CForall,
    CName,
    CNeg,
    COr,
    FAnd,
    FAssert,
    FBox,
    FCI,
    FDia,
    FNot,
    FOr,
    FRole,
    ParseError,
    TOP,
    agent_indices,
    ast_size,
    dot_negate,
    fragment,
    individuals,
    is_nnf,
    modal_depth,
    parse_formula,
    pretty_print,
    subformulas,
    to_nnf,
    weight,
)

import suite

A = CName("A")
B = CName("B")


def test_ci_parses_to_plain_inclusion():
    assert parse_formula("(A sub B)") == FCI(A, B)


def test_prefix_binds_to_smallest_concept():
    # the box stays on the concept, making the whole thing an assertion
    f = parse_formula("[1] some req.(Prod & InCatal) (o)")
    assert f == FAssert(
        CBox(1, CExists("req", CAnd(CName("Prod"), CName("InCatal")))), "o"
    )


def test_negated_assertion_normalizes_into_the_concept():
    assert parse_formula("~A(a)") == FAssert(CNeg(A), "a")


def test_purchase_kb_axioms_round_trip():
    lines = Path(__file__).with_name("purchase_kb.txt").read_text().splitlines()
    assert len(lines) == 18
    for line in lines:
        f = parse_formula(line, n_agents=8)
        assert parse_formula(pretty_print(f), n_agents=8) == f


@pytest.mark.parametrize(
    "text",
    [
        "(A)",
        "((A sub B))",
        "A0(a)",
        "(A0 sub B)",
        "[2]A(a)",
        "",
        "(A sub B) junk",
        "(A & B)",
        "[0]A(a)",
    ],
)
def test_rejected_inputs(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_agent_bound_is_per_call():
    f = parse_formula("[3]A(a)", n_agents=3)
    assert agent_indices(f) == frozenset({3})


def test_top_bot_are_reserved_name_sugar():
    assert TOP == COr(CName("A0"), CNeg(CName("A0")))
    assert BOT == CAnd(CName("A0"), CNeg(CName("A0")))
    assert parse_formula("top(a)") == FAssert(TOP, "a")


def test_nnf_box_negation_dualizes():
    f = to_nnf(parse_formula("~[1]A(a)"))
    assert f == FAssert(CDia(1, CNeg(A)), "a")


def test_nnf_moves_ci_to_top_form():
    assert to_nnf(parse_formula("(A sub B)")) == FCI(TOP, COr(CNeg(A), B))


def test_nnf_de_morgan_on_formulas():
    f = parse_formula("~((top sub A) /\\ B(a))")
    g = to_nnf(f)
    assert isinstance(g, FOr)
    assert g.left == FNot(FCI(TOP, A))
    assert g.right == FAssert(CNeg(B), "a")


def test_nnf_idempotent_and_normal_on_suite():
    for f in suite.formulas():
        g = to_nnf(f)
        assert is_nnf(g)
        assert to_nnf(g) == g


def test_dot_negate_involution_preserves_weight():
    for f in suite.formulas():
        g = to_nnf(f)
        assert dot_negate(dot_negate(g)) == g
        assert weight(dot_negate(g)) == weight(g)


def test_dot_negate_examples():
    assert dot_negate(CExists("r", A)) == CForall("r", CNeg(A))
    assert dot_negate(CNeg(A)) == A
    assert dot_negate(FCI(TOP, A)) == FNot(FCI(TOP, A))


def test_weight_clauses():
    assert weight(A) == 0
    assert weight(CNeg(A)) == 0
    assert weight(CExists("r", A)) == 1
    assert weight(CAnd(A, B)) == 1


def test_round_trip_on_suite_and_random_asts():
    for f in suite.formulas():
        assert parse_formula(pretty_print(f)) == f
    rng = random.Random(20260822)

    def concept(depth):
        k = rng.randrange(8) if depth > 0 else 0
        if k == 0:
            return CName(rng.choice("ABCD"))
        if k == 1:
            return CNeg(concept(depth - 1))
        if k == 2:
            return CAnd(concept(depth - 1), concept(depth - 1))
        if k == 3:
            return COr(concept(depth - 1), concept(depth - 1))
        if k == 4:
            return CExists("r", concept(depth - 1))
        if k == 5:
            return CForall("s", concept(depth - 1))
        if k == 6:
            return CBox(rng.randrange(1, 4), concept(depth - 1))
        return CDia(rng.randrange(1, 4), concept(depth - 1))

    def formula(depth):
        k = rng.randrange(8) if depth > 0 else rng.randrange(3)
        if k == 0:
            return FCI(concept(2), concept(2))
        if k == 1:
            return FAssert(concept(2), rng.choice("ab"))
        if k == 2:
            return FRole("r", "a", "b")
        if k == 3:
            return FNot(formula(depth - 1))
        if k == 4:
            return FAnd(formula(depth - 1), formula(depth - 1))
        if k == 5:
            return FOr(formula(depth - 1), formula(depth - 1))
        if k == 6:
            return FBox(rng.randrange(1, 4), formula(depth - 1))
        return FDia(rng.randrange(1, 4), formula(depth - 1))

    for _ in range(1000):
        f = formula(3)
        assert parse_formula(pretty_print(f), n_agents=3) == f


def test_subformulas_preorder_and_individuals_order():
    f = parse_formula("(B(b) /\\ (r(a,b) \\/ [1]A(c)))")
    subs = list(subformulas(f))
    assert subs[0] == f
    assert individuals(f) == ("b", "a", "c")


def test_fragment_closures():
    f = to_nnf(parse_formula("(top sub A)"))
    fr = fragment(f)
    assert {TOP, A, CNeg(A)} <= fr.concepts
    assert fr.formulas == frozenset({f, FNot(f)})

    g = to_nnf(parse_formula("[1]A(a)"))
    gr = fragment(g)
    assert gr.individuals == ("a",)
    for h in gr.formulas:
        assert dot_negate(h) in gr.formulas
    # top joins the concept closure by fiat, so it is exempt here
    for c in gr.concepts - {TOP}:
        assert dot_negate(c) in gr.concepts


def test_size_and_depth_measures():
    f = parse_formula("[1][1]A(a)")
    assert modal_depth(f) == 2
    assert ast_size(f) == 4
    assert ast_size(parse_formula("top(a)")) == 2
