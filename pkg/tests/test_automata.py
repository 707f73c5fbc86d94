import itertools
import random

import pytest

from ltldep.automata import (
    all_letters,
    emit_hoa,
    formula_to_bdd,
    make_manager,
    parse_hoa,
    translate,
    trim,
)
from ltldep.errors import ResourceBudgetError
from ltldep.spec import parse_spec

from oracles import all_lassos, ltl_holds_on_lasso, nba_accepts_lasso


def make_sp(ltl, inputs="a", outputs="b"):
    iv = ", ".join(inputs) if inputs else ""
    ov = ", ".join(outputs) if outputs else ""
    return parse_spec(f"INPUTS {iv};\nOUTPUTS {ov};\nLTL {ltl};\n")


FORMULAS = [
    "a",
    "! a",
    "X a",
    "X (X a)",
    "G a",
    "F a",
    "G (F a)",
    "F (G a)",
    "a U b",
    "(a U b) U a",
    "a U (b U a)",
    "G (a -> F b)",
    "G (a -> X b)",
    "(G (F a)) <-> (G (F b))",
    "(F a) & (G b)",
    "(X a) | (G (! b))",
    "G (b <-> X a)",
    "(a & ! b) | (! a & b)",
]


@pytest.mark.parametrize("ltl", FORMULAS)
def test_translation_matches_lasso_oracle(ltl):
    """The NBA accepts exactly the ultimately periodic words satisfying
    the formula, over all lassos with prefix+cycle length up to 5."""
    sp = make_sp(ltl)
    nba = translate(sp)
    f = sp.formula
    for prefix, cycle in all_lassos(["a", "b"], 3, 2):
        want = ltl_holds_on_lasso(f, prefix, cycle)
        got = nba_accepts_lasso(nba, prefix, cycle)
        assert got == want, (ltl, prefix, cycle)


def test_globally_single_state():
    nba = translate(make_sp("G a"))
    assert nba.n_states == 1
    assert nba.n_edges == 1


def test_unsat_formula_is_empty():
    nba = translate(make_sp("a & ! a"))
    assert nba.is_empty


def test_true_constant():
    sp = parse_spec("INPUTS a;\nOUTPUTS b;\nLTL a | ! a;\n")
    nba = translate(sp)
    assert not nba.is_empty
    assert nba_accepts_lasso(nba, [], [{"a": False, "b": False}])


def test_state_cap():
    sp = make_sp("G ((a U b) -> ((b U a) & (F (a <-> X b))))")
    with pytest.raises(ResourceBudgetError):
        translate(sp, state_cap=1)


def test_trim_removes_dead_states():
    nba = translate(make_sp("F (G a)"))
    # every state in a trimmed automaton reaches an accepting cycle
    for s in range(nba.n_states):
        assert any(True for _ in nba.out_edges(s))


def test_all_letters():
    ls = all_letters(["x", "y"])
    assert ls == [(False, False), (False, True), (True, False), (True, True)]


def test_formula_to_bdd_propositional():
    sp = make_sp("(a & ! b) | (! a & b)")
    mgr = make_manager(sp.inputs, sp.outputs)
    b = formula_to_bdd(sp.formula, mgr)
    for x in (False, True):
        for y in (False, True):
            assert mgr.evaluate(b, {"a": x, "b": y}) == (x != y)


@pytest.mark.parametrize("ltl", ["G (a -> F b)", "a U b", "G (b <-> X a)", "F (G a)"])
def test_hoa_round_trip(ltl):
    sp = make_sp(ltl)
    nba = translate(sp)
    text = emit_hoa(nba)
    back = parse_hoa(text, inputs=sp.inputs, outputs=sp.outputs)
    assert back.n_states == nba.n_states
    assert back.initial == nba.initial
    assert back.accepting == nba.accepting
    for prefix, cycle in all_lassos(["a", "b"], 2, 2):
        assert nba_accepts_lasso(back, prefix, cycle) == nba_accepts_lasso(
            nba, prefix, cycle
        )


def test_hoa_header_fields():
    sp = make_sp("G (a -> F b)")
    text = emit_hoa(translate(sp))
    assert text.startswith("HOA: v1")
    assert 'acc-name: Buchi' in text
    assert "controllable-AP" in text


def test_parse_hoa_partition_from_header():
    sp = make_sp("a U b")
    text = emit_hoa(translate(sp))
    back = parse_hoa(text)
    assert tuple(back.inputs) == ("a",)
    assert tuple(back.outputs) == ("b",)


def test_product_empty_smoke():
    """A controller hard-wiring b := previous a violates G(b <-> X a)'s
    negation check only when it actually satisfies the formula."""
    from ltldep.controller import verify
    from ltldep.pipeline import synth

    sp = make_sp("G ((X b) <-> a)", inputs="a", outputs="b")
    res = synth(sp)
    assert res.realizable
    assert verify(res.controller, sp)
