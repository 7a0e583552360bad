from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EIGHTHS, fo_formulas
from goedel_workbench.evaluate import classical_eval, evaluate
from goedel_workbench.formula import Exists, Forall, is_prenex, parse, to_text, universal_closure
from goedel_workbench.interp import finite_interp
from goedel_workbench.transform import (
    SHIFT_RULES,
    PrenexResult,
    TransformError,
    Unsupported,
    classical_prenex,
    double_negate_atoms,
    kuroda,
    prenexify,
    simplify_triple_negation,
    skolemize,
    validity_prenex_re,
)
from goedel_workbench.truthset import builtin, classify


def p(text):
    return parse(text, warn=False)


def cls(name, delta=False):
    return classify(builtin(name, with_delta=delta))


@pytest.mark.parametrize(
    "name, text, prenex, rules",
    [
        ("G3", "(A x. P(x)) -> R", "E x. (P(x) -> R)", ["S3"]),
        ("G3", "R -> E x. P(x)", "E x. (R -> P(x))", ["S2"]),
        ("Gup", "(A x. P(x)) -> R", "E x. (P(x) -> R)", ["S3"]),
        ("Gdown", "(A x. P(x)) & E y. Q(y)", "A x. E y. (P(x) & Q(y))", ["forall-and", "exists-and"]),
        ("G01", "(E x. P(x)) -> R", "A x. (P(x) -> R)", ["exists-ante"]),
        ("G3", "E x. (P(x) -> A y. P(y))", "E x. A y. (P(x) -> P(y))", ["forall-cons"]),
    ],
)
def test_logical_prenex(name, text, prenex, rules):
    r = prenexify(p(text), cls(name), "logical")
    assert isinstance(r, PrenexResult)
    assert to_text(r.prenex) == prenex
    assert [t[0] for t in r.trace] == rules


def test_delta_shift_on_finite_sets():
    r = prenexify(p("D (A x. P(x)) -> R"), cls("G3", True), "logical")
    assert to_text(r.prenex) == "E x. (D P(x) -> R)"
    assert [t[0] for t in r.trace] == ["Delta-forall", "S3"]


def test_guarantees():
    assert prenexify(p("A x. P(x)"), cls("Gdown"), "logical").guarantee == "identity"
    assert prenexify(p("(A x. P(x)) -> R"), cls("G3"), "logical").guarantee == "exhaustive on finite truth sets"
    assert prenexify(p("(E x. P(x)) -> R"), cls("Gdown"), "logical").guarantee == "shifts valid in every Goedel logic"


@pytest.mark.parametrize(
    "name, delta, text, mode, rendered",
    [
        (
            "Gdown",
            False,
            "(A x. P(x)) -> R",
            "logical",
            "unsupported: no-logical-prenex row='countable without G_up' column='without Delta' "
            "reason=zero-not-isolated rule=S3",
        ),
        (
            "Gup",
            True,
            "D (E x. P(x))",
            "logical",
            "unsupported: no-logical-prenex row='G_up' column='with Delta' "
            "reason=delta-exists-shift-invalid rule=Delta-exists",
        ),
        (
            "G01",
            False,
            "(A x. P(x)) -> R",
            "pos-valid",
            "unsupported: no-pos-valid-prenex row='uncountable, 0 not isolated' column='validity >0' "
            "reason=zero-not-isolated",
        ),
        (
            "Gdown",
            False,
            "~A x. P(x)",
            "validity-re",
            "unsupported: no-validity-prenex row='countable' column='validity equivalent' reason=open",
        ),
    ],
)
def test_unsupported_is_reported(name, delta, text, mode, rendered):
    r = prenexify(p(text), cls(name, delta), mode)
    assert isinstance(r, Unsupported)
    assert str(r) == rendered


def test_pos_valid_and_validity_modes():
    r = prenexify(p("(A x. P(x)) -> R"), cls("Gup"), "pos-valid")
    assert to_text(r.prenex) == "E x. (P(x) -> R)"
    r = prenexify(p("~A x. P(x)"), cls("Gup"), "validity-re")
    assert to_text(r.prenex) == "E x. ~P(x)"
    with pytest.raises(TransformError):
        prenexify(p("R"), cls("G3"), "bogus")


def test_negation_helpers():
    assert to_text(double_negate_atoms(p("P(x) & R"))) == "~~P(x) & ~~R"
    assert to_text(simplify_triple_negation(p("~~~R"))) == "~R"
    assert to_text(validity_prenex_re(p("(A x. P(x)) -> R"))) == "E x. (~~P(x) -> ~~R)"


def test_kuroda():
    assert to_text(kuroda(p("A x. (P(x) | ~P(x))"))) == "~~A x. ~~(P(x) | ~P(x))"
    with pytest.raises(TransformError):
        kuroda(p("D R"))


@pytest.mark.parametrize(
    "text, mode, out",
    [
        ("E x. A y. F(x, y)", "sat", "A y. F(c1, y)"),
        ("A x. E y. F(x, y)", "sat", "A x. F(x, f1(x))"),
        ("A x. E y. F(x, y)", "validity", "E y. F(c1, y)"),
        ("E x. A y. F(x, y)", "validity", "E x. F(x, f1(x))"),
        ("A x. E y. F(x, y, z)", "validity", "E y. F(c2, y, c1)"),
    ],
)
def test_skolemize(text, mode, out):
    assert to_text(skolemize(p(text), mode)) == out


def test_skolemize_needs_prenex():
    with pytest.raises(TransformError):
        skolemize(p("(A x. P(x)) -> R"), "sat")


def test_rule_table():
    assert SHIFT_RULES["S3"].lhs == "A x. P(x) -> B"
    assert {r.requires for r in SHIFT_RULES.values()} >= {"S1", "S2", "S3", "Delta-forall", "Delta-exists"}


# ------------------------------------------------------------ properties

values = st.sampled_from(EIGHTHS)


@st.composite
def interps(draw, domain=2):
    names = "ab"[:domain]
    preds = {
        "P": {(e,): draw(values) for e in names},
        "Q": {(e,): draw(values) for e in names},
        "R": {(): draw(values)},
    }
    return finite_interp(domain, preds)


closed = fo_formulas(delta=True).map(universal_closure)


@settings(max_examples=150, deadline=None)
@given(closed, st.lists(interps(), min_size=4, max_size=4), st.sampled_from(["G3", "Gup", "Gdown", "G01"]))
def test_logical_prenex_is_equivalent(f, samples, name):
    # every rule the gate admits is sound on finite domains
    r = prenexify(f, cls(name, delta=True), "logical")
    if isinstance(r, Unsupported):
        return
    assert is_prenex(r.prenex)
    for i in samples:
        assert evaluate(r.prenex, i) == evaluate(f, i)


@settings(max_examples=150, deadline=None)
@given(fo_formulas(delta=False).map(universal_closure), st.lists(st.booleans(), min_size=5, max_size=5))
def test_classical_prenex_is_classically_equivalent(f, bits):
    b = [F(int(x)) for x in bits]
    i = finite_interp(2, {"P": {("a",): b[0], ("b",): b[1]}, "Q": {("a",): b[2], ("b",): b[3]}, "R": {(): b[4]}})
    g, _ = classical_prenex(f)
    assert is_prenex(g)
    assert classical_eval(g, i) == classical_eval(f, i)


@settings(max_examples=150, deadline=None)
@given(closed)
def test_skolem_shape(f):
    g, _ = classical_prenex(f)
    sat, val = skolemize(g, "sat"), skolemize(g, "validity")
    assert not _has(sat, Exists) and not _has(val, Forall)


def _has(f, kind):
    while isinstance(f, (Forall, Exists)):
        if isinstance(f, kind):
            return True
        f = f.body
    return False
