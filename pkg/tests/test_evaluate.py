from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EIGHTHS, prop_formulas
from goedel_workbench.evaluate import EvalError, classical_eval, eval_prop, evaluate
from goedel_workbench.formula import And, Atom, Exists, Forall, Implies, Or, Var, parse
from goedel_workbench.interp import finite_interp, nat_interp, prop_interp
from goedel_workbench.seqvalue import SeqValue
from test_interp import FIN, NATI


def p(text):
    return parse(text, warn=False)


@pytest.mark.parametrize(
    "text, value",
    [
        ("A x. P(x)", F(1, 3)),
        ("E x. P(f(x))", F(2, 3)),
        ("A x. E y. F(x, y)", 1),
        ("E y. A x. F(x, y)", F(1, 2)),
        ("~A x. P(x)", 0),
        ("D E x. F(x, x)", 1),
        ("(A x. P(x)) < (E x. P(x))", F(1, 3)),
    ],
)
def test_finite_values(text, value):
    assert evaluate(p(text), FIN) == value


@pytest.mark.parametrize(
    "interp, text, value",
    [
        # infimum not attained
        (nat_interp({"P": SeqValue(0, 1, 1), "R": 0}), "A x. P(x)", 0),
        (nat_interp({"P": SeqValue(0, 1, 1), "R": 0}), "(A x. P(x) -> R) -> E x. (P(x) -> R)", 0),
        (NATI, "(B -> E x. A(x)) -> E x. (B -> A(x))", F(1, 2)),
        (NATI, "E x. A(x)", F(1, 2)),
        (NATI, "D (E x. A(x) <-> B)", 1),
        (NATI, "E x. D (A(x) <-> B)", 0),
        (nat_interp({"P": SeqValue(1, -1, 1)}), "A x. P(x)", 0),
        (nat_interp({"P": SeqValue(1, -1, 1)}), "E x. ~~P(x)", 1),
    ],
)
def test_nat_values(interp, text, value):
    assert evaluate(p(text), interp) == value


def test_trace_marks_attainment():
    value, entries = evaluate(p("A x. P(x)"), nat_interp({"P": SeqValue(0, 1, 1)}), trace=True)
    assert value == 0
    assert entries[-1].attained is False
    assert entries[-1].render() == "A x. P(x)\t[]\t0\tinstances=0 + 1/(n+1)\tproper"


def test_nat_fragment_enforced():
    with pytest.raises(EvalError):
        evaluate(p("A x. A y. (P(x) -> P(y))"), nat_interp({"P": SeqValue(0, 1, 1)}))
    with pytest.raises(EvalError):
        evaluate(p("P(x)"), nat_interp({"P": SeqValue(0, 1, 1)}))


def test_classical():
    i = finite_interp(2, {"P": {("a",): 1, ("b",): 0}})
    assert classical_eval(p("E x. P(x) & ~A x. P(x)"), i)
    with pytest.raises(EvalError):
        classical_eval(p("A x. P(x)"), FIN)


@settings(max_examples=300, deadline=None)
@given(prop_formulas(), st.tuples(*[st.sampled_from(EIGHTHS)] * 3))
def test_prop_agrees_with_interpretation(f, vals):
    values = dict(zip("XYZ", vals))
    assert evaluate(f, prop_interp(values)) == eval_prop(f, values)


@settings(max_examples=200, deadline=None)
@given(prop_formulas(), st.tuples(*[st.sampled_from(EIGHTHS)] * 3))
def test_order_invariance(f, vals):
    # squaring fixes 0 and 1 and preserves order
    values = dict(zip("XYZ", vals))
    squared = {k: v * v for k, v in values.items()}
    assert eval_prop(f, squared) == eval_prop(f, values) ** 2


@settings(max_examples=200, deadline=None)
@given(prop_formulas(), st.tuples(*[st.booleans()] * 3))
def test_boolean_points_are_classical(f, bits):
    values = {k: F(int(b)) for k, b in zip("XYZ", bits)}
    assert classical_eval(f, prop_interp(values)) == (eval_prop(f, values) == 1)


unary = st.recursive(
    st.sampled_from([Atom("P", (Var("x"),)), Atom("Q", (Var("x"),)), Atom("R")]),
    lambda c: st.tuples(st.sampled_from([And, Or, Implies]), c, c).map(lambda t: t[0](t[1], t[2])),
    max_leaves=6,
)
seq_choices = [SeqValue(0, 1, 1), SeqValue(0, 1, 3), SeqValue(1, -1, 1), SeqValue(F(1, 2), -1, 2), SeqValue(F(1, 2), F(1, 2), 2), SeqValue.const(F(1, 3))]


@settings(max_examples=150, deadline=None)
@given(unary, st.sampled_from(seq_choices), st.sampled_from(seq_choices), st.sampled_from(EIGHTHS))
def test_nat_quantifiers_bound_instances(body, sp, sq, r):
    i = nat_interp({"P": sp, "Q": sq, "R": r})
    inst = [eval_prop(body, {"P": sp.value(n), "Q": sq.value(n), "R": r}) for n in range(60)]
    for n in (0, 7, 59):
        assert evaluate(body, nat_interp({"P": sp, "Q": sq, "R": r}, assign={"x": n})) == inst[n]
    lo = evaluate(Forall("x", body), i)
    hi = evaluate(Exists("x", body), i)
    assert lo <= min(inst) and hi >= max(inst)


def test_finite_quantifiers_are_min_max():
    for vals in product(EIGHTHS[::2], repeat=3):
        i = finite_interp(3, {"P": {(e,): v for e, v in zip("abc", vals)}})
        assert evaluate(p("A x. P(x)"), i) == min(vals)
        assert evaluate(p("E x. P(x)"), i) == max(vals)
